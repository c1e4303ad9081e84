"""Compile structured step functions into explicit transition tables.

The machine builders in this package describe their automata as small
Python step functions over structured labels (tuples of phase markers).
The helpers here explore the reachable label set breadth-first and emit
the flat, fully stochastic tables that the engines consume.  The three
sentinel labels below mark the postselecting states and the absorbing
non-postselecting sink.
"""

from .errors import MalformedAutomaton
from .ratio import ONE, ZERO
from . import engine

ACCEPT = ("!accept",)
REJECT = ("!reject",)
SINK = ("!sink",)

_FIXED = {ACCEPT: engine.ACCEPT_STATE,
          REJECT: engine.REJECT_STATE,
          SINK: engine.SINK_STATE}


def _flat(label):
    if isinstance(label, tuple):
        return "(" + ",".join(_flat(part) for part in label) + ")"
    return str(label)


class _Namer:
    def __init__(self):
        self.names = {}
        self.used = set(_FIXED.values())

    def __call__(self, label):
        if label in _FIXED:
            return _FIXED[label]
        try:
            return self.names[label]
        except KeyError:
            base = _flat(label)
            name = base
            counter = 1
            while name in self.used:
                counter += 1
                name = "%s#%d" % (base, counter)
            self.names[label] = name
            self.used.add(name)
            return name


def _check_row(label, sym, row, total):
    if total != ONE:
        raise MalformedAutomaton(
            "builder bug: row (%s, %r) sums to %s" % (_flat(label), sym, total))


def compile_pfa(initial, step, input_alphabet):
    """Flatten a PFA description.

    `step(label, symbol) -> [(next_label, prob), ...]` must be defined for
    every reachable label and every framed symbol; `initial` is the label
    holding all mass before the left end marker is read.
    """
    name = _Namer()
    framed = tuple(input_alphabet) + (engine.LEFT_END, engine.RIGHT_END)
    delta = {}
    frontier = [initial]
    seen = {initial}
    while frontier:
        label = frontier.pop()
        for sym in framed:
            total = ZERO
            row = {}
            for nxt, prob in step(label, sym):
                total += prob
                if prob:
                    row[name(nxt)] = row.get(name(nxt), ZERO) + prob
                    if nxt not in seen and nxt not in _FIXED:
                        seen.add(nxt)
                        frontier.append(nxt)
            _check_row(label, sym, row, total)
            delta[(name(label), sym)] = tuple(sorted(row.items()))
    for special in _FIXED.values():
        for sym in framed:
            delta.setdefault((special, sym), ((special, ONE),))
    states = sorted({src for src, _ in delta})
    return engine.PostPFA(states, tuple(input_alphabet), delta,
                          name(initial))


def compile_verifier(initial, step, input_alphabet, cert_alphabet):
    """Flatten a verifier description.

    `step(label, symbol, cert_symbol) -> [(next_label, move, prob), ...]`
    where move is 0 (hold the certificate head) or 1 (advance it).
    Returns the pieces of a VerifierPFA table (delta keyed by
    (state, symbol, cert_symbol) with (successor, move, prob) entries).
    """
    name = _Namer()
    framed = tuple(input_alphabet) + (engine.LEFT_END, engine.RIGHT_END)
    delta = {}
    frontier = [initial]
    seen = {initial}
    while frontier:
        label = frontier.pop()
        for sym in framed:
            for cert_sym in cert_alphabet:
                total = ZERO
                row = {}
                for nxt, move, prob in step(label, sym, cert_sym):
                    total += prob
                    if prob:
                        key = (name(nxt), move)
                        row[key] = row.get(key, ZERO) + prob
                        if nxt not in seen and nxt not in _FIXED:
                            seen.add(nxt)
                            frontier.append(nxt)
                _check_row(label, sym, row, total)
                delta[(name(label), sym, cert_sym)] = tuple(
                    (dst, move, prob) for (dst, move), prob in sorted(row.items()))
    for special in _FIXED.values():
        for sym in framed:
            for cert_sym in cert_alphabet:
                delta.setdefault((special, sym, cert_sym),
                                 ((special, 0, ONE),))
    states = sorted({src for src, _, _ in delta})
    return states, delta, name(initial)


def compile_pca(initial, step, input_alphabet):
    """Flatten a counter-machine description.

    `step(label, symbol, counter_is_zero) -> [(next_label, delta, prob), ...]`
    with delta in {-1, 0, +1}.  Returns the pieces of a PostPCA table
    (delta keyed by (state, symbol, zero_flag)).
    """
    name = _Namer()
    framed = tuple(input_alphabet) + (engine.LEFT_END, engine.RIGHT_END)
    delta = {}
    frontier = [initial]
    seen = {initial}
    while frontier:
        label = frontier.pop()
        for sym in framed:
            for zero in (True, False):
                total = ZERO
                row = {}
                for nxt, dc, prob in step(label, sym, zero):
                    total += prob
                    if prob:
                        key = (name(nxt), dc)
                        row[key] = row.get(key, ZERO) + prob
                        if nxt not in seen and nxt not in _FIXED:
                            seen.add(nxt)
                            frontier.append(nxt)
                _check_row(label, sym, row, total)
                delta[(name(label), sym, zero)] = tuple(
                    (dst, dc, prob) for (dst, dc), prob in sorted(row.items()))
    for special in _FIXED.values():
        for sym in framed:
            for zero in (True, False):
                delta.setdefault((special, sym, zero), ((special, 0, ONE),))
    states = sorted({src for src, _, _ in delta})
    return states, delta, name(initial)
