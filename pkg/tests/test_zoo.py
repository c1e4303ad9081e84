import itertools

import pytest
from hypothesis import given, settings, strategies as st

from postpfa.engine import run_exact
from postpfa.errors import BadParameter
from postpfa.ratio import ONE, Q
from postpfa import zoo

X = Q(1, 4)


def test_equal_member_is_four_fifths():
    machine = zoo.build_equal(X)
    res = run_exact(machine, "010")
    assert res.accept_mass == Q(1, 512)
    assert res.reject_mass == Q(1, 2048)
    assert res.acceptance == Q(4, 5)


def test_equal_near_member_rejection():
    machine = zoo.build_equal(X)
    assert run_exact(machine, "0100").rejection == Q(257, 385)


def test_equal_event_probs_closed_form():
    assert zoo.equal_event_probs(X, 1, 2) == (Q(1, 4096), Q(257, 131072))
    pr_a, pr_r = zoo.equal_event_probs(X, 3, 3)
    assert zoo.pair_acceptance(X, pr_a, pr_r) == Q(4, 5)


def test_equal_blocks_members_and_law():
    machine = zoo.build_equal_blocks(X)
    for w in ("010", "00100", "0010010001000"):
        assert run_exact(machine, w).acceptance == Q(4, 5)
    assert run_exact(machine, "01001000").rejection >= Q(2, 3)


def test_equal_blocks_f_affine_pairs():
    machine = zoo.build_equal_blocks_f(X, 2, 1)
    assert run_exact(machine, "01000").acceptance == Q(4, 5)  # 2*1+1 = 3
    assert run_exact(machine, "01001000000100000").rejection >= Q(2, 3)
    constant = zoo.build_equal_blocks_f(X, 0, 3)
    assert run_exact(constant, "001000").acceptance == Q(4, 5)


def test_log_members():
    machine = zoo.build_log(X)
    for top in (1, 2, 3):
        w = "1".join("0" * 2 ** i for i in range(top + 1))
        assert run_exact(machine, w).acceptance == Q(4, 5)


def test_log_non_members_reject():
    machine = zoo.build_log(X)
    for w in ("00", "010", "01000", "010001", "0100100000000"):
        assert not zoo.reference_membership(zoo.LOG, w)
        res = run_exact(machine, w)
        rejection = res.rejection if res.defined else ONE
        assert rejection >= Q(2, 3)


def test_log_event_probs_match_engine():
    machine = zoo.build_log(X)
    blocks = (1, 2, 4)
    w = "1".join("0" * b for b in blocks)
    pr_a, pr_r = zoo.log_event_probs(X, blocks)
    assert run_exact(machine, w).acceptance == pr_a / (pr_a + X * pr_r)


def test_pad_log_examples():
    assert zoo.pad_log("1") == "01100"
    assert zoo.pad_log("0") == "01000"
    assert zoo.pad_log("10") == "01100100000"
    with pytest.raises(BadParameter):
        zoo.pad_log("2")


def test_pad_log_lands_in_log_skeleton():
    # stripping the payload bits back out leaves a doubling chain
    padded = zoo.pad_log("101")
    blocks = []
    run = 0
    i = 0
    while i < len(padded):
        if padded[i] == "0":
            run += 1
            i += 1
        else:
            blocks.append(run)
            run = 0
            i += 2  # separator plus payload bit
    blocks.append(run)
    assert blocks == [1, 2, 4, 8]


def test_bias_range_is_enforced():
    for bad in (Q(0), Q(1, 2), Q(3, 4), Q(-1, 4)):
        with pytest.raises(BadParameter):
            zoo.build_equal(bad)


def test_reference_membership_equal():
    assert zoo.reference_membership(zoo.EQUAL, "010")
    assert not zoo.reference_membership(zoo.EQUAL, "0100")
    assert not zoo.reference_membership(zoo.EQUAL, "1")
    assert not zoo.reference_membership(zoo.EQUAL, "")


@settings(max_examples=60, deadline=None)
@given(st.text(alphabet="01", max_size=12))
def test_equal_decision_matches_reference(w):
    machine = zoo.build_equal(X)
    res = run_exact(machine, w)
    acceptance = res.acceptance if res.defined else Q(0)
    assert (acceptance > Q(1, 2)) == zoo.reference_membership(zoo.EQUAL, w)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=4))
def test_blocks_decision_matches_reference(blocks):
    machine = zoo.build_equal_blocks(X)
    w = "1".join("0" * b for b in blocks)
    res = run_exact(machine, w)
    acceptance = res.acceptance if res.defined else Q(0)
    assert (acceptance > Q(1, 2)) == zoo.reference_membership(
        zoo.EQUAL_BLOCKS, w)
