from itertools import combinations

import pytest

from feedbackcodes.constant_weight import (
    constant_weight_exact,
    greedy_packing,
    max_clique_size,
)


def brute_cw(m, d, w):
    words = [sum(1 << i for i in c) for c in combinations(range(m), w)]
    best = 0
    for r in range(1, len(words) + 1):
        found = False
        for sub in combinations(words, r):
            if all((a ^ b).bit_count() >= d for a, b in combinations(sub, 2)):
                found = True
                break
        if not found:
            break
        best = r
    return best


@pytest.mark.parametrize("m,d,w", [(4, 4, 2), (5, 4, 2), (6, 4, 3), (5, 6, 3), (6, 6, 3), (5, 4, 3)])
def test_matches_brute_force(m, d, w):
    assert constant_weight_exact(m, d, w).value == brute_cw(m, d, w)


def test_known_values():
    assert constant_weight_exact(7, 4, 3).value == 7  # Fano plane
    assert constant_weight_exact(4, 4, 2).value == 2
    assert constant_weight_exact(8, 4, 4).value == 14
    assert constant_weight_exact(9, 4, 3).value == 12


def test_bracket_is_sound():
    v = constant_weight_exact(12, 4, 5)
    assert v.lower <= v.upper
    assert v.lower == len(greedy_packing(12, 4, 5))
    with pytest.raises(ValueError):
        constant_weight_exact(5, 3, 2)


def test_clique_on_cycle():
    # 5-cycle: largest clique 2
    adj = [0] * 5
    for i in range(5):
        j = (i + 1) % 5
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    assert max_clique_size(adj)[0] == 2
