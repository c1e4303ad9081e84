import pytest
from hypothesis import given, settings, strategies as st

from postpfa import coin
from postpfa.errors import BadParameter
from postpfa.ratio import ONE, Q


def test_encode_examples():
    assert coin.encode_coin([1]) == Q(5, 8)
    assert coin.encode_coin([0]) == Q(1, 8)
    assert coin.encode_coin([0, 0]) == Q(9, 64)
    assert coin.encoding_error_bound(4) == Q(1, 4096)


def test_encode_rejects_bad_bits():
    with pytest.raises(BadParameter):
        coin.encode_coin([])
    with pytest.raises(BadParameter):
        coin.encode_coin([2])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=8),
       st.integers(0, 7))
def test_encode_monotone_in_each_bit(bits, index):
    index %= len(bits)
    low = list(bits)
    low[index] = 0
    high = list(bits)
    high[index] = 1
    delta = coin.encode_coin(high) - coin.encode_coin(low)
    assert delta == Q(1, 2 ** (3 * (index + 1) - 2))


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 3), st.integers(0, 64 ** 3))
def test_guess_bit_twiddle_equals_division(k, heads):
    heads = min(heads, 64 ** k)
    by_shift = coin.guess_bit_from_heads(k, heads)
    by_division = 1 if (heads // 8 ** k) % 8 >= 4 else 0
    assert by_shift == by_division


def test_guess_bit_pinned_values():
    assert coin.guess_bit_from_heads(1, 0) == 0
    assert coin.guess_bit_from_heads(1, 32) == 1
    assert coin.guess_bit_from_heads(1, 31) == 0
    with pytest.raises(BadParameter):
        coin.guess_bit_from_heads(1, 65)
    with pytest.raises(BadParameter):
        coin.guess_bit_from_heads(1, -1)


def test_exact_success_bounds_k1():
    for bit in (0, 1):
        for K in (1, 4):
            p = coin.encode_coin([bit] + [0] * (K - 1))
            assert coin.exact_guess_success(p, 1, bit) >= Q(3, 4)


def test_exact_success_degenerate_coins():
    assert coin.exact_guess_success(Q(0), 1, 0) == ONE
    assert coin.exact_guess_success(Q(0), 1, 1) == Q(0)
    assert coin.exact_guess_success(ONE, 1, 0) == ONE  # H = 64 decodes to 0


def test_exact_success_infeasible_above_k1():
    with pytest.raises(BadParameter):
        coin.exact_guess_success(Q(1, 2), 2, 1)


def test_success_probabilities_sum_to_one():
    p = coin.encode_coin([1, 0, 1])
    total = (coin.exact_guess_success(p, 1, 0)
             + coin.exact_guess_success(p, 1, 1))
    assert total == ONE


def test_crossing_guess_agrees_except_block_edges():
    disagreements = [h for h in range(65)
                     if coin.crossing_guess(1, h)
                     != coin.guess_bit_from_heads(1, h)]
    assert disagreements == [32, 64]
    # ...and those edges sit outside the high-probability window, so the
    # two decode rules share the 3/4 guarantee
    for bit in (0, 1):
        p = coin.encode_coin([bit])
        assert coin.exact_crossing_success(p, 1, bit) >= Q(3, 4)


def test_mc_is_seed_deterministic():
    p = coin.encode_coin([1])
    a = coin.mc_guess_success(p, 1, 1, 300, seed=9)
    b = coin.mc_guess_success(p, 1, 1, 300, seed=9)
    assert a == b
    assert Q(1, 2) <= a <= ONE
