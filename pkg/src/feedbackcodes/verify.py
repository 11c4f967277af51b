"""Exhaustive single-error adversary for feedback strategies.

A single error leaves the transcript before it untouched, so every adversary
is described by one (position, replacement) pair or by no error at all. The
verifier runs every message against every such action and checks that the
decoder returns the message.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .channel import ErrorGraph, word_str


class MissingTransition(KeyError):
    """The encoder has no entry for a received prefix that can occur."""


@dataclass(frozen=True)
class AdversaryAction:
    position: Optional[int] = None
    replacement: Optional[int] = None

    def __str__(self):
        if self.position is None:
            return "none"
        return f"{self.position}->{self.replacement}"


NO_ERROR = AdversaryAction()


def simulate(strategy, m: int, act: AdversaryAction = NO_ERROR, graph: Optional[ErrorGraph] = None) -> int:
    """Received word for message m under ``act``.

    Each block is looked up from the message and the received prefix, so the
    feedback loop runs through the corrupted symbol. A corruption the channel
    cannot produce is treated as no error.
    """
    graph = graph or strategy.graph
    q = graph.q
    if not 0 <= m < strategy.M:
        raise ValueError(f"message {m} out of range")
    table = strategy.encoder[m]
    received = 0
    pos = 0
    for blen in strategy.block_lengths:
        try:
            block = table[(pos, received)]
        except KeyError:
            raise MissingTransition((m, pos, word_str(received, pos, q))) from None
        digits = []
        for _ in range(blen):
            block, d = divmod(block, q)
            digits.append(d)
        for s in reversed(digits):
            if pos == act.position and graph.allows(s, act.replacement):
                s = act.replacement
            received = received * q + s
            pos += 1
    return received


@dataclass
class VerificationReport:
    total_cases: int = 0
    failures: list = field(default_factory=list)  # (message, action, received, decoded)
    cloud_census: dict = field(default_factory=dict)  # message -> set of received words
    overlaps: list = field(default_factory=list)  # (word, message, other message)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.overlaps

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        census = dict(self.cloud_census)
        census.update(other.cloud_census)
        return VerificationReport(
            self.total_cases + other.total_cases,
            self.failures + other.failures,
            census,
            self.overlaps + other.overlaps,
        )

    def failure_rows(self, n: int, q: int = 2) -> list[str]:
        rows = []
        for m, act, y, got in self.failures:
            shown = "-" if y is None else word_str(y, n, q)
            rows.append(f"{m}\t{act}\t{shown}\t{'-' if got is None else got}")
        for y, a, b in self.overlaps:
            rows.append(f"{a}\toverlap\t{word_str(y, n, q)}\t{b}")
        return rows


def actions(n: int, q: int):
    """No error, then every position with every other symbol."""
    yield NO_ERROR
    for pos in range(n):
        for r in range(q):
            yield AdversaryAction(pos, r)


def verify_message(strategy, m: int, graph: Optional[ErrorGraph] = None) -> VerificationReport:
    graph = graph or strategy.graph
    q, n = graph.q, strategy.n
    report = VerificationReport()
    root = None
    seen = set()
    for act in actions(n, q):
        if act.position is not None:
            # replacing a symbol by itself is not an action
            if root is None or act.replacement == (root // q ** (n - 1 - act.position)) % q:
                continue
        report.total_cases += 1
        try:
            y = simulate(strategy, m, act, graph)
        except MissingTransition:
            report.failures.append((m, act, None, None))
            continue
        if act.position is None:
            root = y
        seen.add(y)
        got = strategy.decoder.get(y)
        if got != m:
            report.failures.append((m, act, y, got))
    report.cloud_census[m] = frozenset(seen)
    return report


def verify_strategy(strategy, graph: Optional[ErrorGraph] = None) -> VerificationReport:
    """Run every message against every single-error action."""
    report = VerificationReport()
    for m in range(strategy.M):
        part = verify_message(strategy, m, graph)
        report.total_cases += part.total_cases
        report.failures.extend(part.failures)
        report.cloud_census.update(part.cloud_census)
    owner: dict[int, int] = {}
    for m, cloud in sorted(report.cloud_census.items()):
        for y in cloud:
            if y in owner:
                report.overlaps.append((y, owner[y], m))
            else:
                owner[y] = m
    return report
