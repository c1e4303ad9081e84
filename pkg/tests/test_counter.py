import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from postpfa import coin, counter, zoo
from postpfa.engine import LEFT_END, RIGHT_END
from postpfa.errors import BadParameter
from postpfa.ratio import ONE, Q

X = Q(1, 4)


def test_member_word_composition():
    w = counter.dima3_member(1)
    assert len(w) == 198
    assert w.count("0") == 119
    assert w.count("1") == 79
    assert w.startswith("0100100001" + "0" * 8 + "1" + "0" * 16 + "11")
    with pytest.raises(BadParameter):
        counter.dima3_member(0)


def test_member_word_scales_with_index():
    w2 = counter.dima3_member(2)
    assert w2.count("0") == sum(2 ** i for i in range(12)) + 64 * 63
    assert w2.count("1") == 13 + 4096 + 64


def test_parameter_ranges():
    with pytest.raises(BadParameter):
        counter.build_dima3(Q(1, 3))
    with pytest.raises(BadParameter):
        counter.build_dima3(Q(0))
    with pytest.raises(BadParameter):
        counter.build_dima3I(Q(1, 19), [1], 4)
    with pytest.raises(BadParameter):
        counter.build_dima3I(Q(1, 20), [1, 0], 1)


def test_member_accepted_with_probability_one():
    machine = counter.build_dima3(X)
    res = counter.run_pca_exact(machine, counter.dima3_member(1))
    assert res.accept_mass == X / 3
    assert res.reject_mass == 0
    assert res.acceptance == ONE


def test_single_broken_equation_rejects_at_one_over_one_plus_x():
    machine = counter.build_dima3(X)
    w = counter.dima3_member(1)
    worst = min(
        counter.run_pca_exact(machine, w[:pos] + flip + w[pos + 1:]).rejection
        for pos, flip in (
            (0, "1"), (30, "1"), (120, "0"), (190, "1")))
    assert worst >= ONE / (1 + X)


def test_malformed_shape_rejected_outright():
    machine = counter.build_dima3(X)
    for w in ("", "1", "0", "0101", "0" * 198):
        res = counter.run_pca_exact(machine, w)
        assert res.accept_mass == 0
        assert res.rejection == ONE


def _pca_trace(machine, word):
    """Replay the sparse distribution evolution, yielding each step."""
    dist = {(machine.start, 0): ONE}
    for sym in (LEFT_END,) + tuple(word) + (RIGHT_END,):
        nxt = {}
        for (state, cnt), mass in dist.items():
            for succ, dc, prob in machine.delta[(state, sym, cnt == 0)]:
                if prob:
                    key = (succ, cnt + dc)
                    nxt[key] = nxt.get(key, Q(0)) + mass * prob
        dist = nxt
        yield dist


def test_counter_stays_within_word_length_bound():
    machine = counter.build_dima3(X)
    w = counter.dima3_member(1)
    for dist in _pca_trace(machine, w):
        assert sum(dist.values()) == ONE
        assert max(abs(cnt) for _, cnt in dist) <= len(w) + 2


def test_decisions_match_reference_on_template_words():
    machine = counter.build_dima3(X)
    rng = random.Random(5)

    def template(ts, u, ss):
        parts = []
        for i, t in enumerate(ts, 1):
            parts.append("0" * t)
            parts.append("11" if i == len(ts) - 1 else "1")
        parts.append("1" * u)
        for s in ss:
            parts.append("0" * s + "1")
        return "".join(parts)

    for _ in range(40):
        ts = [1] + [rng.randint(1, 4) for _ in range(5)]
        word = template(ts, rng.randint(1, 8),
                        [rng.randint(1, 4) for _ in range(rng.randint(1, 5))])
        res = counter.run_pca_exact(machine, word)
        acceptance = res.acceptance if res.defined else Q(0)
        member = zoo.reference_membership(zoo.DIMA3, word)
        assert (acceptance > Q(1, 2)) == member


@settings(max_examples=50, deadline=None)
@given(st.text(alphabet="01", max_size=24))
def test_short_words_never_cross_half(w):
    machine = counter.build_dima3(X)
    res = counter.run_pca_exact(machine, w)
    acceptance = res.acceptance if res.defined else Q(0)
    # the shortest member has 198 symbols, so every short word must fail
    assert acceptance <= Q(1, 2)


def test_advice_variant_exact_values():
    y = Q(1, 20)
    w = counter.dima3_member(1)
    m1 = counter.build_dima3I(y, [1], 4)
    q1 = coin.exact_guess_success(coin.encode_coin([1, 0, 0, 0]), 1, 1)
    assert counter.run_pca_exact(m1, w).acceptance == (1 + 4 * q1) / 5

    m0 = counter.build_dima3I(y, [0], 4)
    q0 = coin.exact_guess_success(coin.encode_coin([0, 0, 0, 0]), 1, 0)
    assert counter.run_pca_exact(m0, w).rejection == 4 * q0 / 5


def test_advice_variant_rejects_corruption():
    m1 = counter.build_dima3I(Q(1, 20), [1], 4)
    w = counter.dima3_member(1)
    ww = w[:100] + ("1" if w[100] == "0" else "0") + w[101:]
    assert counter.run_pca_exact(m1, ww).rejection > Q(4, 5)


def test_pca_monte_carlo_matches_exact():
    machine = counter.build_dima3(X)
    w = counter.dima3_member(1)
    mc = counter.run_pca_mc(machine, w, 400, seed=1)
    assert mc.accepted == 400
    again = counter.run_pca_mc(machine, w, 400, seed=1)
    assert mc.total_passes == again.total_passes


def test_serialized_pca_reruns_identically():
    from postpfa.serialize import parse_automaton, serialize_automaton
    machine = counter.build_dima3(X)
    clone = parse_automaton(serialize_automaton(machine))
    w = counter.dima3_member(1)
    assert counter.run_pca_exact(clone, w) == counter.run_pca_exact(machine, w)
