"""Executable transmission strategies with noiseless feedback.

A strategy splits the block length into ``n = n_1 + ... + n_{k+1}``. Block i
is chosen from the message and the received prefix of length
``N_{i-1} = n_1 + ... + n_{i-1}``. Strategies here are fully tabulated: for
every message, the encoder table maps each received prefix that can occur
with at most one error to the next block, and the decoder maps every word of
every cloud back to its message.
"""

from __future__ import annotations

import json
from pathlib import Path
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import accumulate
from math import comb
from typing import Optional, Sequence

from .channel import (
    BSC,
    GRAPHS,
    ErrorGraph,
    NonadaptiveCode,
    error_ball,
    free_points,
    parse_word,
    symbol_at,
    symbols,
    word_str,
)
from .codesearch import hamming_code


class ConstraintViolation(ValueError):
    """A vertex v has fewer free points than its predecessors need."""

    def __init__(self, v: int, needed: int, available: int, n1: int, q: int = 2):
        self.v, self.needed, self.available = v, needed, available
        super().__init__(
            f"vertex {word_str(v, n1, q)}: predecessors need {needed} free points, code has {available}"
        )


@dataclass(eq=False)
class FeedbackStrategy:
    n: int
    graph: ErrorGraph
    block_lengths: tuple
    encoder: list  # per message: {(prefix_len, received_prefix): block}
    decoder: dict  # received word -> message
    label: str = ""

    def __post_init__(self):
        self.block_lengths = tuple(self.block_lengths)
        if sum(self.block_lengths) != self.n:
            raise ValueError("block lengths must add up to n")
        if any(b <= 0 for b in self.block_lengths):
            raise ValueError("blocks must be nonempty")

    @property
    def q(self) -> int:
        return self.graph.q

    @property
    def M(self) -> int:
        return len(self.encoder)

    @property
    def k(self) -> int:
        """Number of feedbacks."""
        return max(len(self.block_lengths) - 1, 0)

    @property
    def feedback_points(self) -> tuple:
        return tuple(accumulate(self.block_lengths))[:-1]

    def starts(self) -> list[tuple[int, int]]:
        """(prefix length, block length) for each block."""
        out, pos = [], 0
        for b in self.block_lengths:
            out.append((pos, b))
            pos += b
        return out

    def first_block(self, m: int) -> int:
        return self.encoder[m][(0, 0)]

    def root(self, m: int) -> int:
        """Word sent for message m when no error occurs."""
        return self.transmit(m)

    def transmit(self, m: int, position: Optional[int] = None, replacement: Optional[int] = None) -> int:
        """Received word when message m is sent and, optionally, the symbol at
        ``position`` is received as ``replacement`` (ignored if the channel
        cannot produce that error)."""
        q = self.q
        received = 0
        for plen, blen in self.starts():
            block = self.encoder[m][(plen, received)]
            for i, s in enumerate(symbols(block, blen, q)):
                if plen + i == position and self.graph.allows(s, replacement):
                    s = replacement
                received = received * q + s
        return received

    def cloud(self, m: int) -> frozenset:
        root = self.transmit(m)
        out = {root}
        for pos in range(self.n):
            # before the error the transcript is the error-free one
            sent = symbol_at(root, pos, self.n, self.q)
            for r in self.graph.targets(sent):
                out.add(self.transmit(m, pos, r))
        return frozenset(out)

    def clouds(self) -> list[frozenset]:
        return [self.cloud(m) for m in range(self.M)]

    def decode(self, y: int) -> Optional[int]:
        return self.decoder.get(y)


def empty_strategy(graph: ErrorGraph = BSC) -> FeedbackStrategy:
    """The length-0 strategy: one message, nothing sent."""
    return FeedbackStrategy(0, graph, (), [{}], {0: 0}, "empty")


# -- closed forms -------------------------------------------------------------

def U(n: int) -> int:
    return 2 * (2**n // (2 * (n + 1)))


def r(n: int) -> int:
    return 2**n - (n + 1) * U(n)


def m_ad(n: int) -> int:
    """Most messages sendable with complete feedback and one error (BSC)."""
    if n < 1:
        raise ValueError("n must be positive")
    return U(n) + 1 if r(n) >= 2 * n else U(n)


def theorem2_count(m_prev: int, n: int) -> int:
    """Messages produced by one doubling-and-deleting step from length n-1."""
    if m_prev < 0:
        raise ValueError("message count must be nonnegative")
    if 2 * m_prev * (n + 1) <= 2**n:
        return 2 * m_prev
    return U(n) + 1 if r(n) >= 2 * n else U(n)


def corollary1_count(n: int, k: int) -> int:
    n2 = 2**k - 1
    n1 = n - n2
    if k < 1 or n1 < 0:
        raise ValueError(f"Hamming length {n2} does not fit in n={n}")
    return 2**n1 * (2**n2 // (n1 + n2 + 1))


def best_corollary1(n: int, allow_no_feedback: bool = False) -> tuple[int, int]:
    """(messages, k) maximizing the Hamming-based one-feedback count; ties go
    to the larger Hamming length."""
    best = (0, 1)
    k = 1
    while 2**k - 1 <= n - (0 if allow_no_feedback else 1):
        best = max(best, (corollary1_count(n, k), k))
        k += 1
    return best


# -- one-feedback assembly from a code family ----------------------------------

@dataclass
class CodeFamily:
    """A length-n2 code C(u) for every first-block word u of length n1."""

    n1: int
    n2: int
    graph: ErrorGraph
    codes: dict  # u -> NonadaptiveCode of length n2
    label: str = ""

    def M(self, u: int) -> int:
        return self.codes[u].M

    def predecessors(self, v: int) -> list[int]:
        """Words u != v that one error turns into v, ascending."""
        return predecessor_map(self.n1, self.graph)[v]

    def total(self) -> int:
        return sum(c.M for c in self.codes.values())

    def check(self) -> list[tuple[int, int, int]]:
        """(v, needed, available) for every vertex violating the free-point condition."""
        bad = []
        for v in sorted(self.codes):
            need = sum(self.M(u) for u in self.predecessors(v))
            have = len(free_points(self.codes[v]))
            if need > have:
                bad.append((v, need, have))
        return bad


@lru_cache(maxsize=32)
def predecessor_map(n1: int, graph: ErrorGraph) -> dict:
    """For every word v of length n1, the ascending list of words u != v
    that one error turns into v."""
    preds: dict[int, list[int]] = {v: [] for v in range(graph.q**n1)}
    for u in range(graph.q**n1):
        for v in error_ball(u, n1, graph, 1):
            if v != u:
                preds[v].append(u)
    return preds


def uniform_family(n1: int, code: NonadaptiveCode, graph: ErrorGraph) -> CodeFamily:
    return CodeFamily(n1, code.n, graph, {u: code for u in range(graph.q**n1)})


def assemble_one_feedback(family: CodeFamily, graph: Optional[ErrorGraph] = None) -> FeedbackStrategy:
    """One-feedback strategy from a code family.

    Messages are (u, j): first block u, then codeword j of C(u) if u arrived
    intact, else a free point of C(v) reserved for (u, j) when v arrived.
    Free points of C(v) go to the predecessors u in increasing order, then by j.
    """
    graph = graph or family.graph
    q, n1, n2 = graph.q, family.n1, family.n2
    vertices = sorted(family.codes)
    reserved: dict[tuple[int, int], dict[int, int]] = {}  # (u, j) -> {v: point}
    owner: dict[tuple[int, int], tuple[int, int]] = {}  # (v, point) -> (u, j)
    for v in vertices:
        pool = sorted(free_points(family.codes[v]))
        preds = family.predecessors(v)
        need = sum(family.M(u) for u in preds)
        if need > len(pool):
            raise ConstraintViolation(v, need, len(pool), n1, q)
        it = iter(pool)
        for u in preds:
            for j in range(family.M(u)):
                a = next(it)
                reserved.setdefault((u, j), {})[v] = a
                owner[(v, a)] = (u, j)

    messages = [(u, j) for u in vertices for j in range(family.M(u))]
    index = {msg: i for i, msg in enumerate(messages)}
    encoder = []
    for u, j in messages:
        table = {(0, 0): u, (n1, u): family.codes[u].centers[j]}
        for v, a in reserved.get((u, j), {}).items():
            table[(n1, v)] = a
        encoder.append(table)

    decoder = {}
    for v in vertices:
        code = family.codes[v]
        for j, cloud in enumerate(code.clouds()):
            for a in cloud:
                decoder[v * q**n2 + a] = index[(v, j)]
    for (v, a), msg in owner.items():
        decoder[v * q**n2 + a] = index[msg]
    blocks = tuple(b for b in (n1, n2) if b)
    if n1 == 0:
        # no feedback at all: the single code is sent in one block
        encoder = [{(0, 0): family.codes[0].centers[j]} for _, j in messages]
    return FeedbackStrategy(n1 + n2, graph, blocks, encoder, decoder, family.label or "family")


def corollary1_family(n: int, k: int) -> CodeFamily:
    """Hamming code of length 2^k - 1 with its last codewords dropped, for every u."""
    n2 = 2**k - 1
    n1 = n - n2
    if n1 < 0:
        raise ValueError(f"Hamming length {n2} exceeds n={n}")
    keep = 2**n2 // (n1 + n2 + 1)
    ham = hamming_code(k)
    code = ham.with_centers(ham.centers[:keep])
    fam = uniform_family(n1, code, BSC)
    fam.label = f"corollary1(n={n},k={k})"
    return fam


def corollary1_strategy(n: int, k: Optional[int] = None) -> FeedbackStrategy:
    if k is None:
        k = best_corollary1(n)[1]
    if 2**k - 1 > n - 1:
        raise ValueError("Hamming length must leave at least one symbol before the feedback")
    return assemble_one_feedback(corollary1_family(n, k))


# -- codes depending only on the weight of u ------------------------------------

@dataclass
class Corollary2Plan:
    n1: int
    n2: int
    M_by_weight: tuple
    F_by_weight: tuple
    total: int

    def check(self) -> list[int]:
        """Weights w where (n1 - w) * M_{w+1} <= F_w fails."""
        return [
            w for w in range(self.n1)
            if (self.n1 - w) * self.M_by_weight[w + 1] > self.F_by_weight[w]
        ]


def corollary2_optimize(n1: int, n2: int, f_table: Sequence[tuple[int, int]]) -> Corollary2Plan:
    """Choose (M_w, F_w) per weight of u maximizing sum_w C(n1, w) M_w subject to
    (n1 - w) M_{w+1} <= F_w, by dynamic programming from w = n1 down to 0.

    ``f_table`` lists achievable (cardinality, free points) pairs at length n2;
    the empty code (0, 2^n2) is always available.
    """
    if not f_table:
        raise ValueError("empty table of codes")
    best_f: dict[int, int] = {0: 2**n2}
    for M, F in f_table:
        best_f[M] = max(best_f.get(M, -1), F)
    options = sorted(best_f.items())

    # value[w][i]: best count over weights w..n1 when weight w uses options[i]
    value = [[0] * len(options) for _ in range(n1 + 1)]
    choice: list[list[Optional[int]]] = [[None] * len(options) for _ in range(n1 + 1)]
    for i, (M, _) in enumerate(options):
        value[n1][i] = M
    for w in range(n1 - 1, -1, -1):
        for i, (M, F) in enumerate(options):
            best, arg = None, None
            for i2, (M2, _) in enumerate(options):
                if (n1 - w) * M2 <= F and (best is None or value[w + 1][i2] > best):
                    best, arg = value[w + 1][i2], i2
            value[w][i] = comb(n1, w) * M + best
            choice[w][i] = arg
    i = max(range(len(options)), key=lambda i: (value[0][i], -i))
    total = value[0][i]
    picks = [i]
    for w in range(n1):
        i = choice[w][i]
        picks.append(i)
    Ms = tuple(options[i][0] for i in picks)
    Fs = tuple(options[i][1] for i in picks)
    return Corollary2Plan(n1, n2, Ms, Fs, total)


def best_corollary2(n: int, f_tables: dict) -> Corollary2Plan:
    """Best plan over splits n = n1 + n2 with n1, n2 >= 1 and a table for n2."""
    best = None
    for n1 in range(1, n):
        n2 = n - n1
        if n2 not in f_tables:
            continue
        plan = corollary2_optimize(n1, n2, f_tables[n2])
        if best is None or plan.total > best.total:
            best = plan
    if best is None:
        raise ValueError(f"no code table available for any split of n={n}")
    return best


def corollary2_family(plan: Corollary2Plan, codes: dict, graph: ErrorGraph) -> CodeFamily:
    """Family realizing a plan; ``codes`` maps cardinality -> length-n2 code."""
    empty = NonadaptiveCode(plan.n2, 1, graph, ())
    by_weight = [codes[M] if M else empty for M in plan.M_by_weight]
    fam = CodeFamily(
        plan.n1, plan.n2, graph,
        {u: by_weight[u.bit_count()] for u in range(2**plan.n1)},
        f"corollary2(n1={plan.n1},n2={plan.n2})",
    )
    return fam


# -- doubling and deleting ---------------------------------------------------------

@dataclass
class DadaTrace:
    doubled: int
    eliminated: list = field(default_factory=list)
    restored: Optional[tuple] = None


def dada_lift(inner: FeedbackStrategy, trace: Optional[DadaTrace] = None) -> FeedbackStrategy:
    """Strategy of length n with one more feedback from one of length n - 1.

    Each inner cloud B gives the incomplete clouds 0B and 1B; one word from the
    opposite half completes each. Free points of both halves are spent first;
    when they run out, one incomplete cloud per half is dissolved into free
    points, and if the last such pair is left entirely unused one of the two is
    restored. After an error in the first position the sender transmits the
    rest of the completing word and ignores later feedback.
    """
    if inner.q != 2:
        raise ValueError("doubling is defined for binary strategies")
    n = inner.n + 1
    half = 1 << inner.n
    clouds = inner.clouds()
    roots = [inner.root(m) for m in range(inner.M)]
    covered = set().union(*clouds) if clouds else set()
    free = [x for x in range(half) if x not in covered]

    pool = {b: deque(b * half + x for x in free) for b in (0, 1)}
    waiting = {b: deque(sorted(range(inner.M), key=lambda m: roots[m])) for b in (0, 1)}
    done: dict[tuple[int, int], int] = {}
    trace = trace if trace is not None else DadaTrace(2 * inner.M)

    def fill():
        for b in (0, 1):
            while waiting[b] and pool[1 - b]:
                done[(b, waiting[b].popleft())] = pool[1 - b].popleft()

    fill()
    last = None
    while waiting[0] or waiting[1]:
        last = {}
        for b in (0, 1):
            if waiting[b]:
                m = waiting[b].popleft()
                last[b] = m
                pool[b].extend(sorted(b * half + x for x in clouds[m]))
        trace.eliminated.append(tuple(sorted(last.items())))
        fill()
    if last is not None and len(last) == 2 and all(
        len(pool[b]) == len(clouds[last[b]]) for b in (0, 1)
    ):
        m = last[0]
        dissolved = set(pool[0])
        pool[0] = deque(x for x in pool[0] if x not in dissolved)
        done[(0, m)] = pool[1].popleft()
        trace.restored = (0, m)

    lifted = sorted(done)
    encoder, decoder = [], {}
    inner_starts = inner.starts()
    for idx, (b, m) in enumerate(lifted):
        table = {(0, 0): b}
        for (plen, pre), block in inner.encoder[m].items():
            table[(plen + 1, (b << plen) | pre)] = block
        fallback = done[(b, m)]
        for plen, blen in inner_starts:
            pre = fallback >> (inner.n - plen)
            block = (fallback >> (inner.n - plen - blen)) & ((1 << blen) - 1)
            table[(plen + 1, pre)] = block
        encoder.append(table)
        for x in clouds[m]:
            decoder[b * half + x] = idx
        decoder[fallback] = idx
    return FeedbackStrategy(n, inner.graph, (1,) + inner.block_lengths, encoder, decoder,
                            f"dada({inner.label})")


def complete_feedback_strategy(n: int) -> FeedbackStrategy:
    """Feedback after every symbol, built by doubling n times from length 0."""
    s = empty_strategy()
    for _ in range(n):
        s = dada_lift(s)
    s.label = f"complete(n={n})"
    return s


# -- one- and two-feedback BSC strategies -------------------------------------

def best_one_feedback_bsc(n: int, need: int = 0, time_limit: float = 120.0) -> FeedbackStrategy:
    """A one-feedback BSC strategy with at least ``need`` messages if one is
    found, else the largest found.

    The Hamming-based family is tried first; when it falls short, families
    choosing a different number of Hamming codewords per first block are
    searched, shortest first block first.
    """
    from .familysearch import hamming_options, search_family

    count, k = best_corollary1(n)
    best = corollary1_strategy(n, k) if count else None
    if best is not None and need and count >= need:
        return best
    golden = golden_families().get(("bsc", n))
    if golden is not None and golden.total() > (best.M if best else 0):
        best = assemble_one_feedback(golden)
        if need and best.M >= need:
            return best
    for n1 in range(1, n):
        k2 = (n - n1 + 1).bit_length() - 1
        if 2**k2 - 1 != n - n1 or k2 < 1:
            continue
        if 2**n1 * 2 ** (n - n1 - k2) <= (best.M if best else 0):
            continue
        fam = search_family(BSC, n1, hamming_options(k2), time_limit)
        if fam is not None and fam.total() > (best.M if best else 0):
            best = assemble_one_feedback(fam)
            if need and best.M >= need:
                break
    if best is None:
        raise ValueError(f"no one-feedback strategy found for n={n}")
    return best


def lift_requirement(n: int) -> int:
    """Fewest messages at length n - 1 from which one doubling step reaches m_ad(n)."""
    target = m_ad(n)
    M = target // 2
    while theorem2_count(M, n) < target:
        M += 1
    return M


def build_two_feedback(n: int) -> FeedbackStrategy:
    """As many messages as complete feedback allows, using two feedbacks
    (one feedback suffices for n <= 9)."""
    if n < 3:
        raise ValueError("n must be at least 3")
    if n <= 9:
        s = best_one_feedback_bsc(n, need=m_ad(n))
        s.label = f"one-feedback(n={n})"
        return s
    inner = best_one_feedback_bsc(n - 1, need=lift_requirement(n))
    s = dada_lift(inner)
    s.label = f"two-feedback(n={n})"
    return s


# -- Z-channel families ---------------------------------------------------------

Z_EMPTY_N8 = (
    "111000", "001110", "010101", "100011", "100100", "010010",
    "001001", "110000", "010100", "001000", "000010", "000001",
)


def z_family_n8() -> CodeFamily:
    """Length 8, split 6 + 2: {00, 11} after 111111, nothing after the twelve
    words of Z_EMPTY_N8, {00} after every other word; 53 messages."""
    from .channel import Z_CHANNEL

    pair = NonadaptiveCode(2, 1, Z_CHANNEL, (0, 3))
    single = NonadaptiveCode(2, 1, Z_CHANNEL, (0,))
    empty = NonadaptiveCode(2, 1, Z_CHANNEL, ())
    skip = {parse_word(w) for w in Z_EMPTY_N8}
    codes = {}
    for u in range(64):
        codes[u] = pair if u == 63 else empty if u in skip else single
    return CodeFamily(6, 2, Z_CHANNEL, codes, "z-family(n=8)")


def z_weight_family_n9() -> CodeFamily:
    """Length 9, split 5 + 4, code chosen by the weight of the first block:
    {0000, 0011} for weights 0-1, plus 1100 for weights 2-3, plus 1111 for 4-5."""
    from .channel import Z_CHANNEL

    words = [parse_word(w) for w in ("0000", "0011", "1100", "1111")]
    sizes = (2, 2, 3, 3, 4, 4)
    plan = Corollary2Plan(5, 4, sizes, (12, 12, 9, 9, 4, 4), 96)
    codes = {M: NonadaptiveCode(4, 1, Z_CHANNEL, tuple(words[:M])) for M in set(sizes)}
    return corollary2_family(plan, codes, Z_CHANNEL)


def search_one_feedback_z(n: int, frontier: dict, max_n1: int = 7, time_limit: float = 120.0):
    """Best searched Z-channel family of length n; ``frontier`` maps a length
    n2 to its list of codes (one per cardinality)."""
    from .channel import Z_CHANNEL
    from .familysearch import frontier_options, search_family

    best = None
    for n2 in sorted(frontier):
        n1 = n - n2
        if not 1 <= n1 <= max_n1:
            continue
        fam = search_family(Z_CHANNEL, n1, frontier_options(n2, Z_CHANNEL, frontier[n2]), time_limit)
        if fam is not None and (best is None or fam.total() > best.total()):
            best = fam
    return best


# -- JSON ---------------------------------------------------------------------

def strategy_to_dict(s: FeedbackStrategy) -> dict:
    q, n = s.q, s.n
    starts = s.starts()
    first, trans = [], []
    for table in s.encoder:
        first.append(word_str(table[(0, 0)], starts[0][1], q) if starts else "")
        rows = {}
        for (plen, pre), block in sorted(table.items()):
            if plen == 0:
                continue
            blen = dict(starts)[plen]
            rows[word_str(pre, plen, q)] = word_str(block, blen, q)
        trans.append(rows)
    return {
        "n": n,
        "q": q,
        "graph": s.graph.to_list(),
        "block_lengths": list(s.block_lengths),
        "M": s.M,
        "label": s.label,
        "first_block": first,
        "transitions": trans,
        "decoder": {word_str(y, n, q): m for y, m in sorted(s.decoder.items())},
    }


def strategy_from_dict(d: dict) -> FeedbackStrategy:
    q = int(d["q"])
    graph = ErrorGraph(q, frozenset(tuple(e) for e in d["graph"]))
    for g in GRAPHS.values():
        if g == graph:
            graph = g
    n = int(d["n"])
    blocks = tuple(int(b) for b in d["block_lengths"])
    encoder = []
    for first, rows in zip(d["first_block"], d["transitions"]):
        table = {(0, 0): parse_word(first, q) if first else 0}
        for pre, block in rows.items():
            table[(len(pre), parse_word(pre, q))] = parse_word(block, q)
        encoder.append(table)
    if len(encoder) != int(d["M"]):
        raise ValueError("message count does not match the encoder tables")
    decoder = {parse_word(y, q): int(m) for y, m in d["decoder"].items()}
    return FeedbackStrategy(n, graph, blocks, encoder, decoder, d.get("label", ""))


def family_to_dict(fam: CodeFamily) -> dict:
    q = fam.graph.q
    return {
        "n1": fam.n1,
        "n2": fam.n2,
        "q": q,
        "graph": fam.graph.to_list(),
        "label": fam.label,
        "codes": {
            word_str(u, fam.n1, q): [word_str(c, fam.n2, q) for c in code.centers]
            for u, code in sorted(fam.codes.items())
        },
    }


def family_from_dict(d: dict) -> CodeFamily:
    q = int(d["q"])
    graph = ErrorGraph(q, frozenset(tuple(e) for e in d["graph"]))
    for g in GRAPHS.values():
        if g == graph:
            graph = g
    n1, n2 = int(d["n1"]), int(d["n2"])
    codes = {}
    for u, centers in d["codes"].items():
        codes[parse_word(u, q) if u else 0] = NonadaptiveCode(
            n2, 1, graph, tuple(parse_word(c, q) for c in centers))
    if len(codes) != q**n1:
        raise ValueError("a family needs a code for every first block")
    return CodeFamily(n1, n2, graph, codes, d.get("label", ""))


DATA_DIR = Path(__file__).with_name("data")


def golden_families() -> dict:
    """Checked-in searched families keyed by (channel name, n)."""
    out = {}
    for path in sorted(DATA_DIR.glob("*_family_n*.json")):
        fam = family_from_dict(json.loads(path.read_text()))
        out[(fam.graph.name, fam.n1 + fam.n2)] = fam
    return out


def dumps_family(fam: CodeFamily) -> str:
    return json.dumps(family_to_dict(fam), indent=1) + "\n"


def dumps_strategy(s: FeedbackStrategy) -> str:
    return json.dumps(strategy_to_dict(s), separators=(",", ":")) + "\n"


def loads_strategy(text: str) -> FeedbackStrategy:
    return strategy_from_dict(json.loads(text))
