import pytest

from feedbackcodes.oracles import (
    GameState,
    halflie_winnable,
    max_messages,
    symmetric_winnable,
    thresholds,
    winnable,
    winnable_bruteforce,
)
from feedbackcodes.strategy import m_ad


@pytest.mark.parametrize("game", ["symmetric", "halflie"])
def test_threshold_dp_matches_question_search(game):
    for n in range(0, 6):
        for a in range(0, 12):
            for b in range(0, 14):
                s = GameState(a, b, n)
                assert winnable(game, s) == winnable_bruteforce(game, s), s


def test_examples():
    assert symmetric_winnable(GameState(1, 0, 0))
    assert symmetric_winnable(GameState(2, 0, 3)) and not symmetric_winnable(GameState(3, 0, 3))
    assert symmetric_winnable(GameState(92, 0, 10)) and not symmetric_winnable(GameState(93, 0, 10))
    assert halflie_winnable(GameState(11, 0, 5)) and not halflie_winnable(GameState(12, 0, 5))
    assert halflie_winnable(GameState(66, 0, 8)) and not halflie_winnable(GameState(67, 0, 8))
    assert max_messages("symmetric", 0) == max_messages("halflie", 0) == 1


@pytest.mark.parametrize("n", range(1, 15))
def test_symmetric_equals_closed_form(n):
    assert max_messages("symmetric", n) == m_ad(n)


def test_halflie_table():
    assert [max_messages("halflie", n) for n in range(5, 14)] == [
        11, 20, 36, 66, 121, 223, 415, 774, 1452]


@pytest.mark.parametrize("n", range(0, 12))
def test_halflie_dominates(n):
    assert max_messages("halflie", n) >= max_messages("symmetric", n)


@pytest.mark.parametrize("game", ["symmetric", "halflie"])
def test_monotone(game):
    for n in range(0, 7):
        t = thresholds(game, n)
        t_next = thresholds(game, n + 1)
        # fewer candidates never hurts; one more question never hurts
        assert all(t[a] >= t[a + 1] for a in range(len(t) - 1))
        assert all(t_next[a] >= t[a] for a in range(len(t)))


def test_volume_condition():
    for n in range(0, 10):
        t = thresholds("symmetric", n)
        for a, b in enumerate(t):
            assert a * (n + 1) + b <= 2**n


def test_bad_input():
    with pytest.raises(ValueError):
        GameState(-1, 0, 0)
    with pytest.raises(ValueError):
        max_messages("liar", 3)
