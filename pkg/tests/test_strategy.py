import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from feedbackcodes.channel import BSC, Z_CHANNEL, NonadaptiveCode, parse_word
from feedbackcodes.strategy import (
    CodeFamily,
    ConstraintViolation,
    DadaTrace,
    U,
    assemble_one_feedback,
    best_corollary1,
    build_two_feedback,
    complete_feedback_strategy,
    corollary1_count,
    corollary1_family,
    corollary1_strategy,
    corollary2_optimize,
    dada_lift,
    dumps_family,
    dumps_strategy,
    empty_strategy,
    family_from_dict,
    golden_families,
    lift_requirement,
    loads_strategy,
    m_ad,
    r,
    theorem2_count,
    uniform_family,
    z_family_n8,
    z_weight_family_n9,
)
from feedbackcodes.verify import verify_strategy


def test_identical_codes_cannot_carry_messages_at_n3():
    one = NonadaptiveCode(1, 1, BSC, (0,))
    with pytest.raises(ConstraintViolation):
        assemble_one_feedback(uniform_family(2, one, BSC))
    empty = NonadaptiveCode(1, 1, BSC, ())
    assert assemble_one_feedback(uniform_family(2, empty, BSC)).M == 0


def test_two_different_codes_carry_two_messages():
    one = NonadaptiveCode(1, 1, BSC, (0,))
    empty = NonadaptiveCode(1, 1, BSC, ())
    fam = CodeFamily(2, 1, BSC, {0: one, 1: empty, 2: empty, 3: one})
    s = assemble_one_feedback(fam)
    assert s.M == 2 and verify_strategy(s).ok


def test_violation_names_the_vertex():
    fam = z_family_n8()
    codes = dict(fam.codes)
    codes[parse_word("111000")] = codes[parse_word("000000")]  # give it one codeword
    bad = CodeFamily(6, 2, Z_CHANNEL, codes)
    with pytest.raises(ConstraintViolation) as err:
        assemble_one_feedback(bad)
    assert bad.check()
    assert err.value.v in {v for v, _, _ in bad.check()}


def test_z_family_n8_spot_check():
    fam = z_family_n8()
    v = parse_word("101000")
    preds = fam.predecessors(v)
    assert preds == sorted(parse_word(w) for w in ("111000", "101100", "101010", "101001"))
    assert [fam.M(u) for u in preds] == [1, 1, 1, 0]  # in increasing word order
    assert sum(fam.M(u) for u in preds) <= 3
    assert fam.total() == 53 and not fam.check()


def test_z_weight_family_n9():
    fam = z_weight_family_n9()
    assert fam.total() == 96
    assert verify_strategy(assemble_one_feedback(fam)).ok


@pytest.mark.parametrize("n,k,M", [(8, 3, 28), (15, 3, 2048), (16, 4, 3854), (5, 2, 4)])
def test_corollary1_counts(n, k, M):
    assert corollary1_count(n, k) == M


@pytest.mark.parametrize("n", range(3, 13))
def test_corollary1_strategy_count_matches_formula(n):
    k = 1
    while 2**k - 1 <= n - 1:
        fam = corollary1_family(n, k)
        # independent count: messages per first block times number of blocks
        assert fam.total() == corollary1_count(n, k)
        s = assemble_one_feedback(fam)
        assert s.M == corollary1_count(n, k)
        assert verify_strategy(s).ok
        k += 1


def test_best_corollary1():
    assert best_corollary1(3) == (0, 1)
    assert best_corollary1(3, allow_no_feedback=True)[0] == 2
    assert best_corollary1(16) == (3854, 4)
    with pytest.raises(ValueError):
        corollary1_strategy(7, 3)


def test_corollary2_example_plan():
    plan = corollary2_optimize(5, 4, [(2, 12), (3, 9), (4, 4)])
    assert plan.M_by_weight == (2, 2, 3, 3, 4, 4)
    assert plan.total == 96 and not plan.check()
    with pytest.raises(ValueError):
        corollary2_optimize(5, 4, [])


def brute_plan(n1, n2, table):
    opts = dict(table)
    opts.setdefault(0, 2**n2)
    best = 0
    from itertools import product
    from math import comb
    for Ms in product(sorted(opts), repeat=n1 + 1):
        if all((n1 - w) * Ms[w + 1] <= opts[Ms[w]] for w in range(n1)):
            best = max(best, sum(comb(n1, w) * Ms[w] for w in range(n1 + 1)))
    return best


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(2, 4), st.randoms(use_true_random=False))
def test_corollary2_matches_exhaustive(n1, n2, rnd):
    size = 2**n2
    table = sorted({(m, rnd.randint(0, size - m)) for m in range(1, 5)})
    plan = corollary2_optimize(n1, n2, table)
    assert plan.total == brute_plan(n1, n2, table)
    assert not plan.check()


def test_closed_forms():
    assert [m_ad(n) for n in (1, 2, 3, 9, 12)] == [1, 1, 2, 50, 314]
    assert m_ad(49736) == U(49736) + 1 and r(49736) >= 2 * 49736
    assert theorem2_count(1, 5) == 2
    assert theorem2_count(50, 10) == 92
    assert theorem2_count(1088, 15) == 2048
    assert theorem2_count(0, 7) == 0


@pytest.mark.parametrize("n", range(1, 31))
def test_mad_properties(n):
    assert m_ad(n) <= 2**n // (n + 1) or n <= 2
    if r(n) != 2 * n:
        assert m_ad(n) % 2 == 0 or n <= 2


def test_m_ad_rare_case_only_at_known_lengths():
    assert [n for n in range(3, 50000) if r(n) >= 2 * n] == [49736]


@pytest.mark.parametrize("n", range(1, 12))
def test_complete_feedback_chain(n):
    s = complete_feedback_strategy(n)
    assert s.M == m_ad(n)
    assert s.block_lengths == (1,) * n
    assert verify_strategy(s).ok


def test_dada_counts_from_arbitrary_inputs():
    rng = random.Random(4)
    for n in range(4, 10):
        inner = corollary1_strategy(n - 1) if best_corollary1(n - 1)[0] else empty_strategy()
        if inner.n != n - 1:
            continue
        # drop a random subset of messages to vary the input count
        keep = sorted(rng.sample(range(inner.M), rng.randint(0, inner.M)))
        thin = type(inner)(inner.n, inner.graph, inner.block_lengths,
                           [inner.encoder[m] for m in keep],
                           {y: keep.index(m) for y, m in inner.decoder.items() if m in keep})
        trace = DadaTrace(2 * thin.M)
        out = dada_lift(thin, trace)
        assert out.M == theorem2_count(thin.M, n)
        assert verify_strategy(out).ok


def test_lift_edge_cases():
    one = dada_lift(empty_strategy())
    assert one.M == 1 and one.n == 1
    zero = type(one)(1, BSC, (1,), [], {})
    assert dada_lift(zero).M == 0


@pytest.mark.parametrize("n", range(3, 13))
def test_two_feedback_counts(n):
    s = build_two_feedback(n)
    assert s.M == m_ad(n)
    assert s.k == (1 if n <= 9 else 2)
    if n >= 10:
        assert s.feedback_points[0] == 1
    assert verify_strategy(s).ok


def test_lift_requirement():
    assert lift_requirement(10) == 46
    assert lift_requirement(15) == 1024
    assert lift_requirement(13) == 292


def test_golden_families_verify():
    golden = golden_families()
    assert golden[("bsc", 9)].total() == 50
    assert golden[("z", 9)].total() == 97
    for fam in golden.values():
        assert not fam.check()
        assert family_from_dict(json.loads(dumps_family(fam))).codes == fam.codes


@pytest.mark.parametrize("build", [
    lambda: corollary1_strategy(8, 3),
    lambda: build_two_feedback(11),
    lambda: assemble_one_feedback(z_family_n8()),
    lambda: complete_feedback_strategy(5),
])
def test_strategy_json_bit_exact(build):
    s = build()
    text = dumps_strategy(s)
    back = loads_strategy(text)
    assert dumps_strategy(back) == text
    assert back.encoder == s.encoder and back.decoder == s.decoder
    assert back.block_lengths == s.block_lengths and back.graph == s.graph
