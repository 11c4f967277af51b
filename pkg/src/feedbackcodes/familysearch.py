"""Integer-programming search for one-feedback code families.

Each first-block word u picks one code from a list of candidates; the free
points of the code picked at v must cover the messages of every u that one
error turns into v. The choice maximizing the total message count is an
integer program that HiGHS (through scipy) solves quickly for n1 <= 7.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import lil_matrix

from .channel import ErrorGraph, NonadaptiveCode, free_points
from .codesearch import hamming_code

log = logging.getLogger(__name__)


def hamming_options(k: int) -> list[NonadaptiveCode]:
    """The first j codewords of the Hamming code of length 2^k - 1, for every j."""
    ham = hamming_code(k)
    return [ham.with_centers(ham.centers[:j]) for j in range(ham.M + 1)]


def frontier_options(n2: int, graph: ErrorGraph, codes: Sequence[NonadaptiveCode]) -> list[NonadaptiveCode]:
    """Given codes plus the empty code, keeping the most free points per size."""
    best: dict[int, tuple[int, NonadaptiveCode]] = {0: (graph.q**n2, NonadaptiveCode(n2, 1, graph, ()))}
    for c in codes:
        F = len(free_points(c))
        if c.M not in best or F > best[c.M][0]:
            best[c.M] = (F, c)
    return [best[M][1] for M in sorted(best)]


def search_family(
    graph: ErrorGraph,
    n1: int,
    options: Sequence[NonadaptiveCode],
    time_limit: float = 120.0,
):
    """Family over all words of length n1 maximizing the message count.

    Returns a CodeFamily, or None if the solver found no feasible point.
    """
    from .strategy import CodeFamily, predecessor_map

    if not options:
        raise ValueError("no candidate codes")
    n2 = options[0].n
    q = graph.q
    words = list(range(q**n1))
    Ms = [c.M for c in options]
    Fs = [len(free_points(c)) for c in options]
    E = len(options)
    nvar = len(words) * E

    preds = predecessor_map(n1, graph)

    def var(u, e):
        return u * E + e

    A = lil_matrix((2 * len(words), nvar))
    lb = np.zeros(2 * len(words))
    ub = np.zeros(2 * len(words))
    for u in words:
        for e in range(E):
            A[u, var(u, e)] = 1
        lb[u] = ub[u] = 1
    for v in words:
        row = len(words) + v
        for e in range(E):
            A[row, var(v, e)] -= Fs[e]
        for u in preds[v]:
            for e in range(E):
                A[row, var(u, e)] += Ms[e]
        lb[row] = -np.inf
        ub[row] = 0
    cost = -np.array([Ms[e] for _ in words for e in range(E)], dtype=float)
    res = milp(
        cost,
        constraints=LinearConstraint(A.tocsr(), lb, ub),
        integrality=np.ones(nvar),
        bounds=Bounds(0, 1),
        options={"time_limit": time_limit},
    )
    if res.x is None:
        log.info("family search n1=%d n2=%d: %s", n1, n2, res.message)
        return None
    if res.status != 0:
        log.info("family search n1=%d n2=%d stopped early: %s", n1, n2, res.message)
    x = np.round(res.x).astype(int)
    codes = {}
    for u in words:
        picked = [e for e in range(E) if x[var(u, e)]]
        codes[u] = options[picked[0]]
    fam = CodeFamily(n1, n2, graph, codes, f"searched(n1={n1},n2={n2})")
    if fam.check():
        return None
    return fam


def best_family(
    graph: ErrorGraph,
    n: int,
    options_by_n2: dict,
    time_limit: float = 120.0,
) -> Optional[object]:
    """Best searched family over the splits n = n1 + n2 with options given."""
    best = None
    for n2, options in sorted(options_by_n2.items()):
        n1 = n - n2
        if n1 < 1:
            continue
        fam = search_family(graph, n1, options, time_limit)
        if fam is not None and (best is None or fam.total() > best.total()):
            best = fam
    return best
