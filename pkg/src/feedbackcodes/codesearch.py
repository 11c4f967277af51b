"""Search for Z-channel codes with the most free points (F-optimal codes).

For one asymmetric error the cloud of a codeword ``c`` is ``c`` together with
the words obtained by clearing one of its ones, so two clouds meet exactly
when the codewords have equal weight and distance 2, or when one covers the
other with weight difference 1. The free-point count only depends on the
weight distribution, so the search walks the admissible distributions of the
weight-distribution bound from the best one down and, for each, looks for a
code layer by layer (weight by weight) with bitset bookkeeping.
"""

from __future__ import annotations

import csv
import logging
import os
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Optional

from .bounds import (
    BoundProblem,
    InfeasibleError,
    distributions_at_least,
    max_admissible_size,
    free_point_count,
    upper_bound_free_points,
)
from .channel import BSC, Z_CHANNEL, NonadaptiveCode, validate_code, word_str, parse_word

log = logging.getLogger(__name__)


class BudgetExhausted(Exception):
    pass


@dataclass
class FOptimalEntry:
    n: int
    M: int
    F: int
    weight_distribution: tuple
    centers: tuple
    optimal_flag: bool  # F meets the weight-distribution bound
    exhaustive: bool = True  # search finished, so no code with more free points exists
    t: int = 1
    augmentable: Optional[bool] = None  # some extra codeword can be added
    bound: Optional[int] = None  # weight-distribution bound on F

    def code(self) -> NonadaptiveCode:
        return NonadaptiveCode(self.n, self.t, Z_CHANNEL, self.centers)


# -- Hamming codes ------------------------------------------------------------

def hamming_code(k: int) -> NonadaptiveCode:
    """Perfect single-error-correcting binary code of length 2^k - 1.

    Position i (0 = leftmost) carries parity-check column i + 1.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = 2**k - 1
    centers = []
    for w in range(2**n):
        syndrome = 0
        for i in range(n):
            if (w >> (n - 1 - i)) & 1:
                syndrome ^= i + 1
        if syndrome == 0:
            centers.append(w)
    return NonadaptiveCode(n, 1, BSC, tuple(centers))


# -- layered feasibility search ----------------------------------------------

class _Layers:
    """Per-length tables: words of each weight and their conflict masks."""

    def __init__(self, n: int):
        self.n = n
        self.words = [
            sorted(sum(1 << b for b in c) for c in combinations(range(n), w))
            for w in range(n + 1)
        ]
        self.index = [{x: j for j, x in enumerate(ws)} for ws in self.words]
        # same-weight conflicts (distance 2) and supersets one weight up
        self.same = []
        self.up = []
        for w in range(n + 1):
            same_w, up_w = [], []
            for x in self.words[w]:
                m = 0
                for j, y in enumerate(self.words[w]):
                    if (x ^ y).bit_count() == 2:
                        m |= 1 << j
                same_w.append(m)
                u = 0
                if w < n:
                    for b in range(n):
                        if not (x >> b) & 1:
                            u |= 1 << self.index[w + 1][x | (1 << b)]
                up_w.append(u)
            self.same.append(same_w)
            self.up.append(up_w)

    def down_mask(self, w: int, x: int) -> int:
        """Indices (in layer w-1) of the words covered by x."""
        m = 0
        if w == 0:
            return 0
        for b in range(self.n):
            if (x >> b) & 1:
                m |= 1 << self.index[w - 1][x & ~(1 << b)]
        return m


_LAYER_CACHE: dict[int, _Layers] = {}


def _layers(n: int) -> _Layers:
    if n not in _LAYER_CACHE:
        _LAYER_CACHE[n] = _Layers(n)
    return _LAYER_CACHE[n]


def _canonical_matching(n: int, k: int) -> list[int]:
    return [0b11 << (n - 2 - 2 * j) for j in range(k)]


def find_code_with_distribution(n: int, z, budget: Optional[list] = None, fixed=None):
    """A Z-channel single-error code with weight distribution ``z``, or None.

    Layers are filled in increasing weight. Without ``fixed`` the weight-2
    layer (or, if empty, the first word of the lowest nonempty layer) is put
    in a canonical form, which loses nothing because coordinate permutations
    preserve the problem. ``fixed`` maps weights to prescribed word lists.
    ``budget`` is a one-element list counting down search nodes.
    """
    L = _layers(n)
    z = list(z)
    if len(z) != n + 1:
        raise ValueError("distribution length must be n + 1")
    if sum(z) == 0:
        return []
    fixed = dict(fixed or {})
    order = [w for w in range(n + 1) if z[w]]
    cand = [(1 << len(L.words[w])) - 1 for w in range(n + 1)]
    chosen: list[int] = []

    def feasible_counts(cand, layers):
        for w in layers:
            if cand[w].bit_count() < z[w]:
                return False
        return True

    def place(w, j, cand):
        cand = list(cand)
        cand[w] &= ~L.same[w][j] & ~(1 << j)
        if w + 1 <= n:
            cand[w + 1] &= ~L.up[w][j]
        if w >= 1:
            cand[w - 1] &= ~L.down_mask(w, L.words[w][j])
        return cand

    first_free = None
    if not fixed:
        if z[2] and 2 in order:
            fixed[2] = _canonical_matching(n, z[2]) if 2 * z[2] <= n else None
            if fixed[2] is None:
                return None
        else:
            first_free = next((w for w in order if w > 0), None)

    for w, ws in fixed.items():
        if len(ws) != z[w]:
            raise ValueError(f"fixed layer {w} has {len(ws)} words, distribution wants {z[w]}")
        for x in ws:
            j = L.index[w][x]
            if not (cand[w] >> j) & 1:
                return None
            cand = place(w, j, cand)
            chosen.append(x)
    rest = [w for w in order if w not in fixed]

    def layer(pos, cand):
        if pos == len(rest):
            return True
        w = rest[pos]
        return pick(pos, w, z[w], cand[w], cand)

    def pick(pos, w, need, pool, cand):
        if budget is not None:
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExhausted
        if need == 0:
            return layer(pos + 1, cand)
        pool &= cand[w]
        if pool.bit_count() < need:
            return False
        if w == first_free and need == z[w]:
            pool &= 1  # canonical first word
        while pool:
            if pool.bit_count() < need:
                return False
            low = pool & -pool
            j = low.bit_length() - 1
            pool &= ~low
            nxt = place(w, j, cand)
            if not feasible_counts(nxt, rest[pos + 1:]):
                continue
            chosen.append(L.words[w][j])
            if pick(pos, w, need - 1, pool, nxt):
                return True
            chosen.pop()
        return False

    if not feasible_counts(cand, rest):
        return None
    if layer(0, cand):
        return sorted(chosen)
    return None


# -- F-optimal search ---------------------------------------------------------

def distribution_stream(p: BoundProblem, best: int):
    """Admissible distributions, best free-point count first, widening the
    window below ``best`` until every distribution has been produced."""
    seen: set = set()
    step = 4
    lowest = best
    floor = -(2**p.n)
    while True:
        lowest = max(floor, lowest - step)
        batch = [z for z in distributions_at_least(p, lowest) if z not in seen]
        for z in batch:
            seen.add(z)
            yield z
        if lowest == floor:
            return
        step *= 2


def _entry(n, centers, F_bound, exhaustive=True, t=1) -> FOptimalEntry:
    code = NonadaptiveCode(n, t, Z_CHANNEL, tuple(sorted(centers)))
    rep = validate_code(code)
    if not rep.ok:
        raise AssertionError(f"search produced overlapping clouds: {rep.overlaps[:3]}")
    return FOptimalEntry(
        n=n,
        M=code.M,
        F=rep.free_count,
        weight_distribution=code.weight_distribution(),
        centers=code.centers,
        optimal_flag=F_bound is not None and rep.free_count == F_bound,
        exhaustive=exhaustive,
        t=t,
        bound=F_bound,
    )


def greedy_code(n: int, M: int) -> Optional[list[int]]:
    """Lightest-first greedy Z-code of size M (a quick baseline)."""
    L = _layers(n)
    code = NonadaptiveCode(n, 1, Z_CHANNEL)
    covered: set = set()
    out: list[int] = []
    for w in range(n + 1):
        for x in L.words[w]:
            ball = code.with_centers([x]).clouds()[0]
            if not ball & covered:
                covered |= ball
                out.append(x)
                if len(out) == M:
                    return out
    return None


def _small_case(n: int, M: int) -> FOptimalEntry:
    # n < 2: the bound does not apply; enumerate outright
    best = None
    for centers in combinations(range(2**n), M):
        code = NonadaptiveCode(n, 1, Z_CHANNEL, centers)
        rep = validate_code(code)
        if rep.ok and (best is None or rep.free_count > best.F):
            best = _entry(n, centers, None)
    if best is None:
        raise InfeasibleError(f"no Z-code with n={n}, M={M}")
    best.optimal_flag = True
    return best


def search_f_optimal(n: int, M: int, t: int = 1, limit: Optional[int] = None) -> FOptimalEntry:
    """A single-asymmetric-error code of length n and size M with the most free points.

    ``limit`` caps the number of search nodes; when it runs out the best code
    seen so far is returned with ``exhaustive=False``.
    """
    if t != 1:
        raise NotImplementedError("code search is implemented for one error only")
    if M < 1:
        raise ValueError("M must be positive")
    if n < 2:
        return _small_case(n, M)
    p = BoundProblem(n, M, t)
    bound = upper_bound_free_points(p)  # raises InfeasibleError past M_Z(n, 1)
    budget = None if limit is None else [limit]

    baseline = greedy_code(n, M)
    tried = 0
    try:
        for z in distribution_stream(p, bound.F):
            tried += 1
            found = find_code_with_distribution(n, z, budget)
            if found is not None:
                return _entry(n, found, bound.F)
    except BudgetExhausted:
        log.info("search budget exhausted after %d distributions", tried)
        if baseline is None:
            raise
        return _entry(n, baseline, bound.F, exhaustive=False)
    raise InfeasibleError(f"no Z-code with n={n}, M={M}")


def augmentable(entry: FOptimalEntry) -> bool:
    """Whether some word can be added to the code without overlapping clouds."""
    code = entry.code()
    covered = set().union(*code.clouds())
    for x in range(2**entry.n):
        if x in entry.centers:
            continue
        if not code.with_centers([x]).clouds()[0] & covered:
            return True
    return False


def max_cardinality(n: int, t: int = 1) -> int:
    """Largest M admitted by the weight-distribution bound (an upper bound on M_Z)."""
    return max_admissible_size(n, t)


def delete_heaviest(centers) -> list[int]:
    """Drop one codeword of maximum weight (the largest word among ties)."""
    centers = sorted(centers)
    victim = max(centers, key=lambda x: (x.bit_count(), x))
    return [c for c in centers if c != victim]


def search_nested_family(n: int, t: int = 1, top: Optional[int] = None,
                         low: int = 1, limit: Optional[int] = None) -> dict[int, FOptimalEntry]:
    """Nested codes C_low, ..., C_top obtained from an F-optimal top code by
    repeatedly deleting a heaviest codeword.

    Among top-code distributions with equal free points, those whose deletion
    chain meets the bound at every size are tried first.
    """
    if t != 1:
        raise NotImplementedError("code search is implemented for one error only")
    top = top or max_cardinality(n, t)
    bounds = {M: upper_bound_free_points(BoundProblem(n, M, t)).F for M in range(low, top + 1)}

    def chain_score(z):
        z = list(z)
        score = 0
        F = free_point_count(z, n, t)
        for M in range(top, low - 1, -1):
            if F == bounds[M]:
                score += 1
            if M > low:
                w = max(i for i, v in enumerate(z) if v)
                z[w] -= 1
                F += w + 1
        return score

    p = BoundProblem(n, top, t)
    candidates = distributions_at_least(p, bounds[top])
    candidates.sort(key=lambda z: (-free_point_count(z, n, t), -chain_score(z), z))
    budget = None if limit is None else [limit]
    found = None
    for z in candidates:
        found = find_code_with_distribution(n, z, budget)
        if found is not None:
            break
    if found is None:
        raise InfeasibleError(f"no Z-code with n={n}, M={top}")
    family = {}
    centers = found
    for M in range(top, low - 1, -1):
        family[M] = _entry(n, centers, bounds[M])
        family[M].exhaustive = False
        if M > low:
            centers = delete_heaviest(centers)
    for M in range(low, top):
        assert set(family[M].centers) < set(family[M + 1].centers)
    return dict(sorted(family.items()))


# -- cache --------------------------------------------------------------------

CACHE_NAME = "fopt_cache.tsv"
CACHE_COLUMNS = ["n", "M", "t", "F", "bound", "optimal", "exhaustive", "weight_distribution", "centers"]


def cache_dir() -> Path:
    return Path(os.environ.get("FEEDBACKCODES_CACHE", "./cache"))


def write_cache(entries, path: Optional[Path] = None) -> Path:
    path = Path(path or cache_dir() / CACHE_NAME)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = sorted(entries, key=lambda e: (e.n, e.t, e.M))
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, delimiter="\t", lineterminator="\n")
        out.writerow(CACHE_COLUMNS)
        for e in rows:
            out.writerow([
                e.n, e.M, e.t, e.F,
                "" if e.bound is None else e.bound,
                int(e.optimal_flag), int(e.exhaustive),
                "+".join(str(v) for v in e.weight_distribution),
                ";".join(word_str(c, e.n) for c in e.centers),
            ])
    return path


def read_cache(path: Optional[Path] = None, recheck_bounds: bool = False) -> dict[tuple[int, int, int], FOptimalEntry]:
    """Entries keyed by (n, M, t). Centers are revalidated; with ``recheck_bounds``
    the optimality flags are recomputed instead of trusted."""
    path = Path(path or cache_dir() / CACHE_NAME)
    if not path.exists():
        raise FileNotFoundError(f"{path} not found; build it with the `search` subcommand")
    out = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh, delimiter="\t"):
            n, M, t = int(row["n"]), int(row["M"]), int(row["t"])
            centers = [parse_word(s) for s in row["centers"].split(";")] if row["centers"] else []
            if recheck_bounds and n >= 2 * t:
                bound = upper_bound_free_points(BoundProblem(n, M, t)).F
            else:
                bound = int(row["bound"]) if row["bound"] else None
            e = _entry(n, centers, bound, exhaustive=row["exhaustive"] == "1", t=t)
            if e.F != int(row["F"]) or e.M != M:
                raise ValueError(f"cache row n={n} M={M} disagrees with its centers")
            if n < 2 * t:
                e.optimal_flag = row["optimal"] == "1"
            out[(n, M, t)] = e
    return out


def frontier(n: int, t: int = 1, low: int = 1, nested_from: int = 9) -> list[FOptimalEntry]:
    """F-optimal entries for every size from ``low`` to the largest admissible.

    Lengths below ``nested_from`` are searched exhaustively per size; longer
    ones use the nested-family restriction.
    """
    if n < 2:
        return [_small_case(n, M) for M in range(max(low, 1), 2)]
    top = max_cardinality(n, t)
    if n >= nested_from:
        return list(search_nested_family(n, t, top=top, low=max(low, 1)).values())
    return [search_f_optimal(n, M, t) for M in range(max(low, 1), top + 1)]


def merge_cache(entries, path: Optional[Path] = None) -> Path:
    """Add entries to the cache file, replacing rows with the same key."""
    path = Path(path or cache_dir() / CACHE_NAME)
    current = read_cache(path) if path.exists() else {}
    for e in entries:
        current[(e.n, e.M, e.t)] = e
    return write_cache(current.values(), path)
