import json

import pytest
from hypothesis import given, settings, strategies as st

import random

from postpfa import counter, serialize, verifier, zoo
from postpfa.engine import random_post_pfa, run_exact
from postpfa.errors import ParseError, ValidationError
from postpfa.ratio import Q


def _sample_machines():
    return (zoo.build_equal(Q(1, 4)),
            zoo.build_log(Q(1, 10)),
            counter.build_dima3(Q(1, 4)),
            verifier.build_upower_verifier(Q(1, 2)),
            verifier.build_usquare_verifier(Q(1, 2)))


def test_round_trip_structural_equality():
    for machine in _sample_machines():
        text = serialize.serialize_automaton(machine)
        clone = serialize.parse_automaton(text)
        assert clone == machine
        assert type(clone) is type(machine)


def test_serialization_is_canonical():
    machine = zoo.build_equal(Q(1, 4))
    text = serialize.serialize_automaton(machine)
    assert text == serialize.serialize_automaton(machine)
    assert text == serialize.serialize_automaton(
        serialize.parse_automaton(text))


def test_kind_tags():
    kinds = [serialize.automaton_kind(m) for m in _sample_machines()]
    assert kinds == ["pfa", "pfa", "pca", "verifier", "verifier"]


def _doc(machine=None):
    machine = machine or zoo.build_equal(Q(1, 4))
    return json.loads(serialize.serialize_automaton(machine))


def test_zero_denominator_probability_is_a_parse_error():
    doc = _doc()
    doc["transitions"][0]["probability"] = "2/0"
    with pytest.raises(ParseError):
        serialize.parse_automaton(json.dumps(doc))


def test_missing_fields_are_parse_errors():
    doc = _doc()
    del doc["transitions"][0]["to"]
    with pytest.raises(ParseError):
        serialize.parse_automaton(json.dumps(doc))
    doc = _doc()
    del doc["states"]
    with pytest.raises(ParseError):
        serialize.parse_automaton(json.dumps(doc))
    with pytest.raises(ParseError):
        serialize.parse_automaton("not json at all {")
    with pytest.raises(ParseError):
        serialize.parse_automaton(json.dumps({"kind": "nope"}))


def test_broken_row_sum_is_a_validation_error():
    doc = _doc()
    doc["transitions"][0]["probability"] = "1/4"
    with pytest.raises(ValidationError) as err:
        serialize.parse_automaton(json.dumps(doc))
    assert "sums to" in str(err.value)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_random_machine_round_trip_preserves_runs(seed):
    rng = random.Random(seed)
    machine = random_post_pfa(rng)
    word = "".join(rng.choice("01") for _ in range(4))
    clone = serialize.parse_automaton(serialize.serialize_automaton(machine))
    assert clone == machine
    assert run_exact(clone, word) == run_exact(machine, word)
