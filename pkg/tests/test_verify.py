import pytest

from feedbackcodes.channel import parse_word
from feedbackcodes.strategy import (
    FeedbackStrategy,
    assemble_one_feedback,
    build_two_feedback,
    corollary1_strategy,
    z_family_n8,
)
from feedbackcodes.verify import (
    NO_ERROR,
    AdversaryAction,
    simulate,
    verify_message,
    verify_strategy,
)


def test_error_free_round_trip():
    s = corollary1_strategy(8, 3)
    for m in range(s.M):
        assert s.decode(simulate(s, m, NO_ERROR)) == m


def test_first_position_error_uses_reserved_point():
    s = corollary1_strategy(8, 3)
    root = simulate(s, 0)
    y = simulate(s, 0, AdversaryAction(0, 1 - (root >> 7)))
    assert y >> 7 != root >> 7
    assert s.decode(y) == 0


def test_z_family_feedback_loop():
    s = assemble_one_feedback(z_family_n8())
    u = parse_word("101100")
    m = next(i for i in range(s.M) if s.first_block(i) == u)
    y = simulate(s, m, AdversaryAction(0, 0))
    assert y >> 2 == parse_word("001100")
    assert s.decode(y) == m


def test_illegal_corruption_is_no_error():
    s = assemble_one_feedback(z_family_n8())
    m = 0
    root = simulate(s, m)
    zero_positions = [p for p in range(8) if not (root >> (7 - p)) & 1]
    assert zero_positions
    assert simulate(s, m, AdversaryAction(zero_positions[0], 1)) == root


def test_z_case_census_counts_illegal_actions():
    s = assemble_one_feedback(z_family_n8())
    rep = verify_strategy(s)
    assert rep.ok
    assert rep.total_cases == s.M * (1 + s.n)


def test_two_feedback_n12_exhaustive():
    s = build_two_feedback(12)
    rep = verify_strategy(s)
    assert s.M == 314 and rep.ok
    assert rep.total_cases == 314 * 13
    assert all(len(c) >= 13 for c in rep.cloud_census.values())


def test_broken_strategy_is_caught():
    s = corollary1_strategy(6, 2)
    enc = [dict(t) for t in s.encoder]
    u0 = s.first_block(0)
    shared = [k for k in enc[0] if k[0] == 3 and k[1] != u0]
    assert shared
    enc[1][(0, 0)] = u0
    enc[1].update({k: enc[0][k] for k in shared})
    broken = FeedbackStrategy(s.n, s.graph, s.block_lengths, enc, dict(s.decoder))
    rep = verify_strategy(broken)
    assert not rep.ok and rep.failures
    assert rep.failure_rows(s.n)


def test_missing_transition_reported():
    s = corollary1_strategy(5, 2)
    enc = [dict(t) for t in s.encoder]
    enc[0] = {k: v for k, v in enc[0].items() if k == (0, 0) or k[1] == s.first_block(0)}
    broken = FeedbackStrategy(s.n, s.graph, s.block_lengths, enc, dict(s.decoder))
    rep = verify_message(broken, 0)
    assert any(y is None for _, _, y, _ in rep.failures)


def test_message_range():
    s = corollary1_strategy(5, 2)
    with pytest.raises(ValueError):
        simulate(s, s.M)
