import random

import pytest
from hypothesis import given, settings, strategies as st

from postpfa.engine import (ACCEPT_STATE, REJECT_STATE, PostPFA,
                            distribution_trace, random_post_pfa,
                            restart_statistics, run_exact,
                            simulate_monte_carlo, validate_pfa)
from postpfa.errors import (MalformedAutomaton, PostselectionUndefined)
from postpfa.ratio import ONE, Q
from postpfa.zoo import build_equal


def _coin_flip_machine():
    """Accept/reject each with mass 1/4; half the mass never decides."""
    states = ("q", ACCEPT_STATE, REJECT_STATE)
    half, quarter = Q(1, 2), Q(1, 4)
    delta = {}
    for sym in ("0", "1", "¢"):
        delta[("q", sym)] = (("q", ONE),)
        for s in (ACCEPT_STATE, REJECT_STATE):
            delta[(s, sym)] = ((s, ONE),)
    delta[("q", "$")] = (("q", half), (ACCEPT_STATE, quarter),
                         (REJECT_STATE, quarter))
    delta[(ACCEPT_STATE, "$")] = ((ACCEPT_STATE, ONE),)
    delta[(REJECT_STATE, "$")] = ((REJECT_STATE, ONE),)
    return PostPFA(states, ("0", "1"), delta, "q")


def test_run_exact_masses_and_acceptance():
    machine = _coin_flip_machine()
    res = run_exact(machine, "01")
    assert res.accept_mass == Q(1, 4)
    assert res.reject_mass == Q(1, 4)
    assert res.other_mass == Q(1, 2)
    assert res.acceptance == Q(1, 2)
    assert res.rejection == Q(1, 2)


def test_undefined_postselection_raises():
    machine = _coin_flip_machine()
    machine.delta[("q", "$")] = (("q", ONE),)
    machine._checked = False
    res = run_exact(machine, "0")
    assert not res.defined
    with pytest.raises(PostselectionUndefined):
        res.acceptance


def test_validate_catches_bad_row_sum():
    machine = _coin_flip_machine()
    machine.delta[("q", "0")] = (("q", Q(1, 2)),)
    assert any("sums to" in p for p in validate_pfa(machine))
    machine._checked = False
    with pytest.raises(MalformedAutomaton):
        run_exact(machine, "0")


def test_distribution_trace_conserves_mass():
    machine = build_equal(Q(1, 4))
    for dist in distribution_trace(machine, "0100"):
        assert sum(dist.values()) == ONE


def test_restart_statistics_expected_passes():
    machine = build_equal(Q(1, 4))
    stats = restart_statistics(machine, "010")
    assert stats.expected_passes == Q(2048, 5)


def test_monte_carlo_is_deterministic_per_seed():
    machine = build_equal(Q(1, 4))
    a = simulate_monte_carlo(machine, "010", 500, seed="s")
    b = simulate_monte_carlo(machine, "010", 500, seed="s")
    c = simulate_monte_carlo(machine, "010", 500, seed="t")
    assert (a.accepted, a.total_passes) == (b.accepted, b.total_passes)
    assert (a.accepted, a.total_passes) != (c.accepted, c.total_passes)


def test_rejects_symbols_outside_alphabet():
    machine = build_equal(Q(1, 4))
    with pytest.raises(ValueError):
        run_exact(machine, "012")


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 9), st.text(alphabet="01", max_size=8))
def test_random_machines_conserve_mass(seed, word):
    machine = random_post_pfa(random.Random(seed))
    res = run_exact(machine, word)
    assert res.accept_mass + res.reject_mass + res.other_mass == ONE


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_monte_carlo_tracks_exact(seed):
    rng = random.Random(seed)
    machine = random_post_pfa(rng)
    word = "".join(rng.choice("01") for _ in range(rng.randint(0, 6)))
    exact = run_exact(machine, word)
    if exact.accept_mass + exact.reject_mass < Q(1, 20):
        return
    mc = simulate_monte_carlo(machine, word, 3000, seed=seed)
    p = exact.acceptance
    emp = Q(mc.accepted, mc.trials)
    # generous 6-sigma band at 3000 trials, compared exactly
    assert (emp - p) ** 2 <= 36 * p * (1 - p) / 3000 + Q(1, 10 ** 6)
