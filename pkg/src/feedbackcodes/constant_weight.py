"""Maximum sizes A(m, d, w) of binary constant-weight codes.

Small instances are settled by an exact maximum-clique search; weights 2 and 3
at distance 4 use their closed forms; everything else gets a (greedy, Johnson)
bracket.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

EXACT_SEARCH_LIMIT = 80  # max number of weight-w words for the clique search


@dataclass(frozen=True)
class CWValue:
    lower: int
    upper: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"only bracketed: [{self.lower}, {self.upper}]")
        return self.lower


def _words(m: int, w: int) -> list[int]:
    return [sum(1 << i for i in c) for c in combinations(range(m), w)]


def max_clique_size(adj: list[int], target: int | None = None) -> tuple[int, list[int]]:
    """Maximum clique in a graph given as adjacency bitmasks.

    Branch and bound with a greedy-coloring bound. Stops early once a clique
    of size ``target`` is found.
    """
    n = len(adj)
    best: list[int] = []

    def color_bound(cand: int) -> list[tuple[int, int]]:
        # Greedy coloring; returns (vertex, color) in nondecreasing color order.
        order = []
        color = 0
        while cand:
            color += 1
            q = cand
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v] & ~low
                cand &= ~low
                order.append((v, color))
        return order

    def expand(clique: list[int], cand: int) -> bool:
        nonlocal best
        order = color_bound(cand)
        for v, col in reversed(order):
            if len(clique) + col <= len(best):
                return False
            clique.append(v)
            nxt = cand & adj[v]
            if nxt:
                if expand(clique, nxt):
                    return True
            elif len(clique) > len(best):
                best = list(clique)
                if target is not None and len(best) >= target:
                    return True
            clique.pop()
            cand &= ~(1 << v)
        return False

    if n:
        expand([], (1 << n) - 1)
    return len(best), best


def _clique_value(m: int, d: int, w: int) -> int:
    words = _words(m, w)
    adj = []
    for a in words:
        mask = 0
        for j, b in enumerate(words):
            if (a ^ b).bit_count() >= d:
                mask |= 1 << j
        adj.append(mask)
    return max_clique_size(adj)[0]


def greedy_packing(m: int, d: int, w: int) -> list[int]:
    """Lexicographic greedy constant-weight code (a lower bound)."""
    code: list[int] = []
    for c in combinations(range(m), w):
        x = sum(1 << (m - 1 - i) for i in c)
        if all((x ^ y).bit_count() >= d for y in code):
            code.append(x)
    return code


def _closed_form(m: int, d: int, w: int) -> int | None:
    if w < 0 or w > m:
        return 0
    if d <= 2:
        return comb(m, w)
    if d > 2 * min(w, m - w):
        return 1
    if d == 4:
        w = min(w, m - w)
        if w == 2:
            return m // 2
        if w == 3:
            # packing number D(m, 3, 2)
            value = (m * ((m - 1) // 2)) // 3
            return value - 1 if m % 6 == 5 else value
    return None


@lru_cache(maxsize=None)
def constant_weight_exact(m: int, d: int, w: int) -> CWValue:
    """A(m, d, w) as an exact value when settled, else a (lower, upper) bracket."""
    if d % 2:
        raise ValueError("distance must be even for constant-weight codes")
    value = _closed_form(m, d, w)
    if value is not None:
        return CWValue(value, value)
    if w > m - w:
        return constant_weight_exact(m, d, m - w)
    if comb(m, w) <= EXACT_SEARCH_LIMIT:
        value = _clique_value(m, d, w)
        return CWValue(value, value)
    lower = len(greedy_packing(m, d, w))
    upper = min(
        (m * constant_weight_exact(m - 1, d, w - 1).upper) // w,
        (m * constant_weight_exact(m - 1, d, w).upper) // (m - w),
    )
    return CWValue(lower, max(lower, upper))
