"""Canonical JSON documents for the three automaton kinds.

One document shape covers plain machines, certificate readers, and
counter machines; the `kind` field selects which extra column each
transition row carries (nothing / certificate symbol + head move /
counter-zero flag + counter delta).  Probabilities travel as exact
"numerator/denominator" strings and the row order is sorted, so equal
machines serialize to byte-identical text.
"""

import json

from .counter import PostPCA
from .engine import PostPFA, validate_pfa
from .errors import ParseError, ValidationError
from .ratio import format_rational, parse_rational
from .verifier import VerifierPFA, validate_verifier

_KINDS = ("pfa", "verifier", "pca")


def automaton_kind(machine):
    if isinstance(machine, VerifierPFA):
        return "verifier"
    if isinstance(machine, PostPCA):
        return "pca"
    if isinstance(machine, PostPFA):
        return "pfa"
    raise ValidationError("not a recognized automaton type: %r"
                          % type(machine).__name__)


def serialize_automaton(machine):
    """Canonical text form; equal machines yield identical text."""
    kind = automaton_kind(machine)
    doc = {
        "kind": kind,
        "states": sorted(machine.states),
        "input_alphabet": list(machine.input_alphabet),
        "start": machine.start,
        "accept_state": machine.post_accept,
        "reject_state": machine.post_reject,
    }
    if kind == "verifier":
        doc["cert_alphabet"] = list(machine.cert_alphabet)
    rows = []
    for key in sorted(machine.delta, key=repr):
        for entry in sorted(machine.delta[key], key=repr):
            if kind == "pfa":
                state, sym = key
                succ, prob = entry
                row = {"state": state, "symbol": sym, "to": succ,
                       "probability": format_rational(prob)}
            elif kind == "verifier":
                state, sym, cert_sym = key
                succ, move, prob = entry
                row = {"state": state, "symbol": sym,
                       "cert_symbol": cert_sym, "to": succ,
                       "head_move": move,
                       "probability": format_rational(prob)}
            else:
                state, sym, zero = key
                succ, dc, prob = entry
                row = {"state": state, "symbol": sym,
                       "counter_zero": bool(zero), "to": succ,
                       "counter_delta": dc,
                       "probability": format_rational(prob)}
            rows.append(row)
    doc["transitions"] = rows
    return json.dumps(doc, ensure_ascii=False, indent=1, sort_keys=True) + "\n"


def _field(row, name, index):
    try:
        return row[name]
    except (KeyError, TypeError):
        raise ParseError("transition %d: missing field %r" % (index, name))


def parse_automaton(text):
    """Inverse of serialize_automaton; validates before returning."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("not well-formed JSON: %s" % exc)
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    kind = doc.get("kind")
    if kind not in _KINDS:
        raise ParseError("kind must be one of %s, got %r" % (_KINDS, kind))
    for name in ("states", "input_alphabet", "start", "accept_state",
                 "reject_state", "transitions"):
        if name not in doc:
            raise ParseError("missing document field %r" % name)
    states = tuple(doc["states"])
    alphabet = tuple(doc["input_alphabet"])
    delta = {}
    for index, row in enumerate(doc["transitions"]):
        prob_text = _field(row, "probability", index)
        try:
            prob = parse_rational(prob_text)
        except Exception:
            raise ParseError("transition %d: bad probability %r"
                             % (index, prob_text))
        state = _field(row, "state", index)
        sym = _field(row, "symbol", index)
        succ = _field(row, "to", index)
        if kind == "pfa":
            key, entry = (state, sym), (succ, prob)
        elif kind == "verifier":
            move = _field(row, "head_move", index)
            if move not in (0, 1):
                raise ParseError("transition %d: head move must be 0 or 1"
                                 % index)
            key = (state, sym, _field(row, "cert_symbol", index))
            entry = (succ, move, prob)
        else:
            dc = _field(row, "counter_delta", index)
            if dc not in (-1, 0, 1):
                raise ParseError("transition %d: counter delta must be "
                                 "-1, 0, or 1" % index)
            key = (state, sym, bool(_field(row, "counter_zero", index)))
            entry = (succ, dc, prob)
        delta.setdefault(key, []).append(entry)
    delta = {key: tuple(rows) for key, rows in delta.items()}
    if kind == "pfa":
        machine = PostPFA(states, alphabet, delta, doc["start"],
                          doc["accept_state"], doc["reject_state"])
        problems = validate_pfa(machine)
    elif kind == "verifier":
        if "cert_alphabet" not in doc:
            raise ParseError("missing document field 'cert_alphabet'")
        machine = VerifierPFA(states, alphabet, tuple(doc["cert_alphabet"]),
                              delta, doc["start"], doc["accept_state"],
                              doc["reject_state"])
        problems = validate_verifier(machine)
    else:
        from .counter import validate_pca
        machine = PostPCA(states, alphabet, delta, doc["start"],
                          doc["accept_state"], doc["reject_state"])
        problems = validate_pca(machine)
    if problems:
        raise ValidationError("; ".join(problems[:5]))
    machine._checked = True
    return machine
