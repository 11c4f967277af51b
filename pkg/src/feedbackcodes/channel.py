"""Alphabets, error graphs, clouds and nonadaptive codes.

Words of length ``n`` over ``{0, ..., q-1}`` are stored as integers written in
base ``q`` with position 0 as the most significant digit, so for ``q = 2`` the
word ``"0011"`` is the integer 3 and its prefix of length ``p`` is ``w >> (n-p)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field


class CloudOverlapError(ValueError):
    """Two clouds of a code share a point."""


@dataclass(frozen=True)
class ErrorGraph:
    """Directed corruption relation: an edge (a, b) lets one error turn a into b."""

    q: int
    edges: frozenset
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("alphabet size must be at least 2")
        edges = frozenset((int(a), int(b)) for a, b in self.edges)
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop ({a}, {a}) in error graph")
            if not (0 <= a < self.q and 0 <= b < self.q):
                raise ValueError(f"edge ({a}, {b}) outside alphabet of size {self.q}")
        object.__setattr__(self, "edges", edges)

    def targets(self, symbol: int) -> tuple[int, ...]:
        """Symbols a single error can turn ``symbol`` into, ascending."""
        return tuple(sorted(b for a, b in self.edges if a == symbol))

    def sources(self, symbol: int) -> tuple[int, ...]:
        return tuple(sorted(a for a, b in self.edges if b == symbol))

    def allows(self, sent: int, received: int) -> bool:
        return (sent, received) in self.edges

    def to_list(self) -> list[list[int]]:
        return [list(e) for e in sorted(self.edges)]


BSC = ErrorGraph(2, frozenset({(0, 1), (1, 0)}), "bsc")
Z_CHANNEL = ErrorGraph(2, frozenset({(1, 0)}), "z")
ONE_WAY_TERNARY = ErrorGraph(3, frozenset({(1, 0), (2, 0), (2, 1)}), "ternary")

GRAPHS = {"bsc": BSC, "z": Z_CHANNEL, "ternary": ONE_WAY_TERNARY}


def graph_by_name(name: str) -> ErrorGraph:
    try:
        return GRAPHS[name]
    except KeyError:
        raise ValueError(f"unknown channel {name!r}; choose from {sorted(GRAPHS)}") from None


# -- word helpers -------------------------------------------------------------

def symbols(w: int, n: int, q: int = 2) -> list[int]:
    """Symbols of ``w``, most significant position first."""
    out = [0] * n
    for i in range(n - 1, -1, -1):
        w, out[i] = divmod(w, q)
    return out


def from_symbols(syms, q: int = 2) -> int:
    w = 0
    for s in syms:
        w = w * q + s
    return w


def word_str(w: int, n: int, q: int = 2) -> str:
    if q > 10:
        raise ValueError("string form supports alphabets up to size 10")
    return "".join(str(s) for s in symbols(w, n, q))


def parse_word(s: str, q: int = 2) -> int:
    syms = [int(c) for c in s]
    if any(c >= q for c in syms):
        raise ValueError(f"word {s!r} has a symbol outside alphabet of size {q}")
    return from_symbols(syms, q)


def symbol_at(w: int, pos: int, n: int, q: int = 2) -> int:
    return (w // q ** (n - 1 - pos)) % q


def replace_symbol(w: int, pos: int, new: int, n: int, q: int = 2) -> int:
    scale = q ** (n - 1 - pos)
    old = (w // scale) % q
    return w + (new - old) * scale


def prefix(w: int, p: int, n: int, q: int = 2) -> int:
    return w // q ** (n - p)


def concat(head: int, tail: int, tail_len: int, q: int = 2) -> int:
    return head * q**tail_len + tail


def weight(w: int) -> int:
    """Hamming weight of a binary word."""
    return w.bit_count()


# -- balls and codes ----------------------------------------------------------

def error_ball(w: int, n: int, graph: ErrorGraph, t: int = 1) -> frozenset:
    """All words reachable from ``w`` by changing at most ``t`` positions,
    each change following an edge of ``graph``."""
    if t < 0:
        raise ValueError("error budget must be nonnegative")
    q = graph.q
    syms = symbols(w, n, q)
    options = [graph.targets(s) for s in syms]
    hits = [i for i in range(n) if options[i]]
    ball = {w}
    for r in range(1, min(t, len(hits)) + 1):
        for positions in itertools.combinations(hits, r):
            for repl in itertools.product(*(options[i] for i in positions)):
                v = list(syms)
                for i, s in zip(positions, repl):
                    v[i] = s
                ball.add(from_symbols(v, q))
    return frozenset(ball)


@dataclass(frozen=True)
class NonadaptiveCode:
    """Codewords (cloud centers) of length ``n`` correcting ``t`` errors of ``graph``."""

    n: int
    t: int
    graph: ErrorGraph
    centers: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "centers", tuple(int(c) for c in self.centers))
        size = self.graph.q**self.n
        for c in self.centers:
            if not 0 <= c < size:
                raise ValueError(f"center {c} outside the space of length {self.n}")

    @property
    def q(self) -> int:
        return self.graph.q

    @property
    def M(self) -> int:
        return len(self.centers)

    def clouds(self) -> list[frozenset]:
        return [error_ball(c, self.n, self.graph, self.t) for c in self.centers]

    def weight_distribution(self) -> tuple[int, ...]:
        z = [0] * (self.n + 1)
        for c in self.centers:
            z[sum(1 for s in symbols(c, self.n, self.q) if s)] += 1
        return tuple(z)

    def decoder(self) -> dict[int, int]:
        """Map from each cloud point to the index of its center."""
        table = {}
        for i, cloud in enumerate(self.clouds()):
            for p in cloud:
                if p in table:
                    raise CloudOverlapError(
                        f"clouds of centers {table[p]} and {i} share {word_str(p, self.n, self.q)}"
                    )
                table[p] = i
        return table

    def with_centers(self, centers) -> "NonadaptiveCode":
        return NonadaptiveCode(self.n, self.t, self.graph, tuple(centers))


def free_points(code: NonadaptiveCode) -> frozenset:
    """Points of the space in no cloud; raises CloudOverlapError on overlap."""
    covered = code.decoder()
    return frozenset(p for p in range(code.q**code.n) if p not in covered)


@dataclass
class ValidationReport:
    ok: bool
    overlaps: list
    free_count: int

    def __str__(self):
        if self.ok:
            return f"ok, F={self.free_count}"
        return f"FAIL, {len(self.overlaps)} overlapping cloud pairs"


def validate_code(code: NonadaptiveCode) -> ValidationReport:
    clouds = code.clouds()
    overlaps = [
        (i, j)
        for i, j in itertools.combinations(range(len(clouds)), 2)
        if clouds[i] & clouds[j]
    ]
    covered = set().union(*clouds) if clouds else set()
    return ValidationReport(not overlaps, overlaps, code.q**code.n - len(covered))


# -- JSON ---------------------------------------------------------------------

def code_to_dict(code: NonadaptiveCode) -> dict:
    return {
        "n": code.n,
        "q": code.q,
        "t": code.t,
        "graph": code.graph.to_list(),
        "centers": [word_str(c, code.n, code.q) for c in code.centers],
    }


def code_from_dict(d: dict) -> NonadaptiveCode:
    q = int(d["q"])
    graph = ErrorGraph(q, frozenset(tuple(e) for e in d["graph"]))
    for name, g in GRAPHS.items():
        if g == graph:
            graph = g
    centers = [parse_word(s, q) for s in d["centers"]]
    if any(len(s) != d["n"] for s in d["centers"]):
        raise ValueError("center length does not match n")
    return NonadaptiveCode(int(d["n"]), int(d["t"]), graph, tuple(centers))


def dumps_code(code: NonadaptiveCode) -> str:
    return json.dumps(code_to_dict(code), indent=1) + "\n"


def loads_code(text: str) -> NonadaptiveCode:
    return code_from_dict(json.loads(text))
