"""Weight-distribution upper bound on the free points of asymmetric-error codes.

A code of length ``n`` correcting ``t`` asymmetric (1 -> 0) errors with ``z_i``
codewords of weight ``i`` has ``2^n - sum_i z_i * sum_{j<=t} C(i, j)`` free
points. The bound maximizes that quantity over every integer vector ``z`` that
satisfies seven necessary conditions; conditions 3-6 come from the classical
linear-programming bounds on asymmetric codes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional

from .constant_weight import constant_weight_exact

log = logging.getLogger(__name__)

ALL_CONDITIONS = frozenset({1, 2, 3, 4, 5, 6, 7})


class InfeasibleError(ValueError):
    """No weight distribution satisfies the constraints."""


def default_cw_lower(m: int, d: int, w: int) -> Optional[int]:
    return constant_weight_exact(m, d, w).lower


def default_cw_upper(m: int, d: int, w: int) -> Optional[int]:
    return constant_weight_exact(m, d, w).upper


@dataclass(frozen=True)
class BoundProblem:
    n: int
    M: int
    t: int = 1
    cw_lower: Callable = field(default=default_cw_lower, compare=False)
    cw_upper: Callable = field(default=default_cw_upper, compare=False)

    def __post_init__(self):
        if not self.n >= 2 * self.t >= 2:
            raise ValueError("need n >= 2t >= 2")
        if self.M < 1:
            raise ValueError("need M >= 1")


@dataclass(frozen=True)
class Constraint:
    """``sum coeffs[i] * z_i <= rhs``, tagged with its condition number."""

    condition: int
    label: str
    coeffs: tuple  # ((index, coefficient), ...)
    rhs: int

    def lhs(self, z) -> int:
        return sum(c * z[i] for i, c in self.coeffs)


def cloud_size(i: int, t: int) -> int:
    """Points reachable from a weight-i word by at most t asymmetric errors."""
    return sum(comb(i, i - j) for j in range(0, min(t, i) + 1))


def free_point_count(z, n: int, t: int = 1) -> int:
    return 2**n - sum(zi * cloud_size(i, t) for i, zi in enumerate(z))


def _layer_terms(n, t, w, s):
    terms = {}
    for i in range(1, s + 1):
        terms[w - i] = terms.get(w - i, 0) + comb(n - w + i, i)
    for j in range(0, t - s + 1):
        terms[w + j] = terms.get(w + j, 0) + comb(w + j, j)
    return terms


def _add(terms, idx, coef):
    terms[idx] = terms.get(idx, 0) + coef


def build_constraints(p: BoundProblem, conditions=ALL_CONDITIONS, literal6: bool = False):
    """Linear constraints of conditions 3-6, plus warnings for skipped ones.

    Condition 6 adds, to the layer-w count of condition 3, the points of layer
    w that a codeword one layer beyond the counted range necessarily leaves
    outside every cloud. That argument only holds for the upper variant at
    s = t and the lower variant at s = 0; at other s it rejects real codes
    (e.g. the (6, 12) code with distribution 1+0+3+4+3+0+1), so those rows
    are generated only with ``literal6=True``.
    """
    n, t = p.n, p.t
    d = 2 * t + 2
    out: list[Constraint] = []
    warnings: list[str] = []

    for w in range(t + 1, n - t):
        for s in range(0, t + 1):
            base = _layer_terms(n, t, w, s)
            if 3 in conditions:
                out.append(Constraint(3, f"3(w={w},s={s})", tuple(sorted(base.items())), comb(n, w)))
            if 6 in conditions and (literal6 or s == t):
                a = dict(base)
                hi = w + t - s + 1
                _add(a, hi, comb(hi, w) - comb(t + 1, t - s + 1) * (hi // (t + 1)))
                out.append(Constraint(6, f"6a(w={w},s={s})", tuple(sorted(a.items())), comb(n, w)))
            if 6 in conditions and (literal6 or s == 0):
                b = dict(base)
                span = n - w + s + 1
                _add(b, w - s - 1, comb(span, s + 1) - comb(t + 1, t - s) * (span // (t + 1)))
                out.append(Constraint(6, f"6b(w={w},s={s})", tuple(sorted(b.items())), comb(n, w)))

    for cond in (4, 5):
        if cond not in conditions:
            continue
        for r in range(0, n + 1):
            for s in range(0, r + 1):
                rhs = p.cw_upper(n + r - s, d, r)
                if rhs is None:
                    warnings.append(f"{cond}(r={r},s={s}): no upper value for U({n + r - s},{d},{r})")
                    continue
                terms = {}
                missing = False
                for j in range(s, r + 1):
                    low = p.cw_lower(r - s, d, r - j)
                    if low is None:
                        missing = True
                        break
                    _add(terms, j if cond == 4 else n - j, low)
                if missing:
                    warnings.append(f"{cond}(r={r},s={s}): missing lower value")
                    continue
                out.append(Constraint(cond, f"{cond}(r={r},s={s})", tuple(sorted(terms.items())), rhs))
    for msg in warnings:
        log.warning("constraint skipped: %s", msg)
    return out, warnings


@dataclass
class DistributionCheck:
    ok: bool
    violated: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def first(self) -> Optional[str]:
        return self.violated[0] if self.violated else None


def check_distribution(z, p: BoundProblem, conditions=ALL_CONDITIONS, literal6=False) -> DistributionCheck:
    """Evaluate all seven conditions on the weight distribution ``z``."""
    z = list(z)
    if len(z) != p.n + 1:
        raise ValueError(f"distribution needs {p.n + 1} entries, got {len(z)}")
    violated = []
    if 1 in conditions and any(int(x) != x or x < 0 for x in z):
        violated.append("1")
    if 2 in conditions and (z[0] != 1 or any(z[1 : p.t + 1])):
        violated.append("2")
    constraints, warnings = build_constraints(p, conditions, literal6)
    for c in constraints:
        if c.lhs(z) > c.rhs:
            violated.append(c.label)
    if 7 in conditions and sum(z) != p.M:
        violated.append("7")
    return DistributionCheck(not violated, violated, warnings)


@dataclass
class BoundResult:
    F: int
    distributions: list  # every maximizing distribution, lexicographically sorted


class _Found(Exception):
    pass


def _solve(p: BoundProblem, conditions, min_free: Optional[int] = None, literal6=False,
           first_only=False):
    """Branch and bound over z_n, z_{n-1}, ..., z_{t+1}.

    With ``min_free`` given, returns every feasible distribution whose free-point
    count is at least ``min_free``; otherwise the optimum and its maximizers.
    With ``first_only``, stops at the first feasible distribution.
    """
    n, t, M = p.n, p.t, p.M
    constraints, _ = build_constraints(p, conditions, literal6)
    cost = [cloud_size(i, t) for i in range(n + 1)]

    caps = [M] * (n + 1)
    for c in constraints:
        if len(c.coeffs) == 1:
            (i, a), = c.coeffs
            if a > 0:
                caps[i] = min(caps[i], c.rhs // a)
    fixed = {0: 1} if 2 in conditions else {}
    if 2 in conditions:
        for i in range(1, t + 1):
            fixed[i] = 0

    # unassigned entries are still 0, so with nonnegative coefficients a
    # partial left-hand side already exceeding rhs is a certain violation
    touching: dict[int, list] = {}
    for c in constraints:
        for i, _ in c.coeffs:
            touching.setdefault(i, []).append(c)

    order = list(range(n, -1, -1))
    z = [0] * (n + 1)
    total_budget = 2**n
    best = [None]
    found: list[tuple] = []
    threshold_cost = None if min_free is None else total_budget - min_free

    def lower_cost(pos: int, remaining: int) -> Optional[int]:
        # cheapest completion of z_{order[pos]}, ..., z_0, ignoring coupling constraints
        top = order[pos]
        required = sum(v for i, v in fixed.items() if i <= top)
        if required > remaining:
            return None
        acc = sum(v * cost[i] for i, v in fixed.items() if i <= top)
        remaining -= required
        for i in range(0, top + 1):
            if remaining == 0:
                break
            if i not in fixed:
                take = min(caps[i], remaining)
                acc += take * cost[i]
                remaining -= take
        if remaining:
            return None
        return acc

    def rec(pos: int, remaining: int, spent: int):
        if pos == len(order):
            if remaining:
                return
            if first_only:
                found.append(tuple(z))
                raise _Found
            if threshold_cost is not None:
                if spent <= threshold_cost:
                    found.append(tuple(z))
                return
            if best[0] is None or spent < best[0]:
                best[0] = spent
                found.clear()
            if spent == best[0]:
                found.append(tuple(z))
            return
        i = order[pos]
        if i in fixed:
            choices = [fixed[i]] if fixed[i] <= remaining else []
        else:
            choices = range(min(caps[i], remaining), -1, -1)
        for v in choices:
            z[i] = v
            if any(c.lhs(z) > c.rhs for c in touching.get(i, ())):
                continue
            new_spent = spent + v * cost[i]
            rest = remaining - v
            if pos + 1 < len(order):
                lb = lower_cost(pos + 1, rest)
                if lb is None:
                    continue
            else:
                lb = 0
                if rest:
                    continue
            limit = threshold_cost if threshold_cost is not None else best[0]
            if limit is not None:
                total = new_spent + lb
                if total > limit:
                    continue
            rec(pos + 1, rest, new_spent)
        z[i] = 0

    if any(a < 0 for c in constraints for _, a in c.coeffs):
        raise NotImplementedError("negative constraint coefficients")
    try:
        rec(0, M, 0)
    except _Found:
        return found[0]
    if first_only:
        return None
    if threshold_cost is not None:
        return found
    if best[0] is None:
        return None
    return best[0], sorted(found)


def upper_bound_free_points(p: BoundProblem, conditions=ALL_CONDITIONS, literal6=False) -> BoundResult:
    """Largest free-point count over all admissible weight distributions."""
    sol = _solve(p, conditions, literal6=literal6)
    if sol is None:
        raise InfeasibleError(f"no admissible distribution for n={p.n}, M={p.M}, t={p.t}")
    spent, dists = sol
    return BoundResult(2**p.n - spent, dists)


def distributions_at_least(p: BoundProblem, min_free: int, conditions=ALL_CONDITIONS) -> list:
    """All admissible distributions with at least ``min_free`` free points,
    best first, ties in lexicographic order."""
    found = _solve(p, conditions, min_free=min_free)
    return sorted(found, key=lambda z: (-free_point_count(z, p.n, p.t), z))


def admissible(p: BoundProblem, conditions=ALL_CONDITIONS) -> Optional[tuple]:
    """Some admissible distribution, or None if the conditions exclude size M."""
    return _solve(p, conditions, first_only=True)


def max_admissible_size(n: int, t: int = 1, conditions=ALL_CONDITIONS) -> int:
    """Largest M with an admissible distribution (admissibility is closed
    under removing a codeword, so binary search applies)."""
    lo, hi = 1, 2
    while admissible(BoundProblem(n, hi, t), conditions) is not None:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if admissible(BoundProblem(n, mid, t), conditions) is not None:
            lo = mid
        else:
            hi = mid
    return lo


@dataclass
class Condition6Report:
    bound: int
    without6: int
    literal: Optional[int]  # None when the literal reading leaves nothing feasible

    @property
    def changes_bound(self) -> bool:
        return self.bound != self.without6


def condition6_sensitivity(p: BoundProblem) -> Condition6Report:
    """Bound with condition 6 as used, without it, and with every printed row."""
    try:
        literal = upper_bound_free_points(p, literal6=True).F
    except InfeasibleError:
        literal = None
    return Condition6Report(
        upper_bound_free_points(p).F,
        upper_bound_free_points(p, ALL_CONDITIONS - {6}).F,
        literal,
    )


def hamming_bound_adaptive(n: int) -> int:
    """Messages allowed by the sphere-packing count 2^n / (n + 1)."""
    if n < 1:
        raise ValueError("n must be positive")
    return 2**n // (n + 1)
