"""Exact solvers for the one-lie search games with complete feedback.

State (a, b, n): a candidates have not used their lie, b have, n questions
remain. A question takes a1 of the first kind and b1 of the second.

Symmetric game (binary symmetric channel): the answer may be a lie either way.
    yes -> (a1, b1 + a - a1),   no -> (a - a1, b - b1 + a1)
Half-lie game (Z-channel): only a true "yes" can be turned into "no".
    yes -> (a1, b1),            no -> (a - a1, a1 + b - b1)

With no questions left the questioner wins iff a + b <= 1.

Winnability is monotone in b, so it suffices to tabulate the threshold
T(a, n) = max{b : (a, b, n) winnable} (or -1). Eliminating b1 from the two
branch conditions gives

    symmetric: T(a, n) = max over a1 of T(a1) + T(a - a1) - a
               subject to T(a1) >= a - a1 and T(a - a1) >= a1
    half-lie:  T(a, n) = max over a1 of T(a1) + T(a - a1) - a1
               subject to T(a1) >= 0 and T(a - a1) >= a1

where T(.) is taken at n - 1. ``winnable_bruteforce`` runs the plain (a1, b1)
search instead and serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

GAMES = ("symmetric", "halflie")


@dataclass(frozen=True)
class GameState:
    a: int
    b: int
    n: int

    def __post_init__(self):
        if min(self.a, self.b, self.n) < 0:
            raise ValueError("game state entries must be nonnegative")


def _check_game(game: str):
    if game not in GAMES:
        raise ValueError(f"unknown game {game!r}; choose from {GAMES}")


@lru_cache(maxsize=None)
def thresholds(game: str, n: int) -> tuple:
    """T(a, n) for a = 0, 1, ...; every a past the end has T = -1."""
    _check_game(game)
    if n == 0:
        return (1, 0)
    prev = thresholds(game, n - 1)

    def T(x):
        return prev[x] if x < len(prev) else -1

    out = []
    for a in range(2 * len(prev)):
        best = -1
        for a1 in range(a + 1):
            ta, tb = T(a1), T(a - a1)
            if game == "symmetric":
                if ta >= a - a1 and tb >= a1:
                    best = max(best, ta + tb - a)
            else:
                if ta >= 0 and tb >= a1:
                    best = max(best, ta + tb - a1)
        out.append(best)
    while out and out[-1] < 0:
        out.pop()
    return tuple(out)


def winnable(game: str, s: GameState) -> bool:
    t = thresholds(game, s.n)
    return s.a < len(t) and s.b <= t[s.a]


def symmetric_winnable(s: GameState) -> bool:
    return winnable("symmetric", s)


def halflie_winnable(s: GameState) -> bool:
    return winnable("halflie", s)


def max_messages(game: str, n: int) -> int:
    """Largest M such that (M, 0, n) is winnable."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return len(thresholds(game, n)) - 1


@lru_cache(maxsize=None)
def _brute(game: str, a: int, b: int, n: int) -> bool:
    if n == 0:
        return a + b <= 1
    if a * (n + 1) + b > 2**n if game == "symmetric" else a + b > 2**n:
        return False
    for a1 in range(a + 1):
        for b1 in range(b + 1):
            if game == "symmetric":
                yes, no = (a1, b1 + a - a1), (a - a1, b - b1 + a1)
            else:
                yes, no = (a1, b1), (a - a1, a1 + b - b1)
            if _brute(game, *yes, n - 1) and _brute(game, *no, n - 1):
                return True
    return False


def winnable_bruteforce(game: str, s: GameState) -> bool:
    """Direct search over all questions (a1, b1); for small states only."""
    _check_game(game)
    return _brute(game, s.a, s.b, s.n)
