"""Postselecting realtime probabilistic finite automata: exact + sampled runs.

An automaton reads its input once, left to right, framed by the two end
markers.  After the right end marker the mass sitting on the two special
states decides the outcome: accept mass a and reject mass r yield the
conditional acceptance probability a / (a + r).  Equivalently the machine
restarts whenever it ends in any other state; the expected number of full
passes is 1 / (a + r).
"""

import random
from dataclasses import dataclass

from .errors import (
    EmptyTrialSet,
    MalformedAutomaton,
    PostselectionUndefined,
    RestartCapExceeded,
)
from .ratio import ONE, Q, ZERO

LEFT_END = "¢"
RIGHT_END = "$"

ACCEPT_STATE = "s_pa"
REJECT_STATE = "s_pr"
SINK_STATE = "sink"


class PostPFA:
    """A table-driven postselecting realtime PFA.

    delta maps (state, symbol) to a tuple of (successor, probability)
    pairs whose probabilities sum to exactly 1.  A row must exist for
    every state and every symbol of the framed alphabet (input alphabet
    plus both end markers).
    """

    __slots__ = ("states", "input_alphabet", "delta", "start",
                 "post_accept", "post_reject", "_checked")

    def __init__(self, states, input_alphabet, delta, start,
                 post_accept=ACCEPT_STATE, post_reject=REJECT_STATE):
        self.states = tuple(states)
        self.input_alphabet = tuple(input_alphabet)
        self.delta = dict(delta)
        self.start = start
        self.post_accept = post_accept
        self.post_reject = post_reject
        self._checked = False

    def framed_alphabet(self):
        return self.input_alphabet + (LEFT_END, RIGHT_END)

    def __eq__(self, other):
        if not isinstance(other, PostPFA):
            return NotImplemented
        return (sorted(self.states) == sorted(other.states)
                and self.input_alphabet == other.input_alphabet
                and self.start == other.start
                and self.post_accept == other.post_accept
                and self.post_reject == other.post_reject
                and {k: dict(v) for k, v in self.delta.items()}
                == {k: dict(v) for k, v in other.delta.items()})

    __hash__ = object.__hash__


@dataclass(frozen=True)
class RunResult:
    """Terminal mass split of one exact run."""

    accept_mass: object
    reject_mass: object
    other_mass: object

    @property
    def defined(self):
        return self.accept_mass + self.reject_mass > 0

    @property
    def acceptance(self):
        if not self.defined:
            raise PostselectionUndefined(
                "no mass on either postselecting state")
        return self.accept_mass / (self.accept_mass + self.reject_mass)

    @property
    def rejection(self):
        return 1 - self.acceptance


@dataclass(frozen=True)
class RestartStatistics:
    accept_mass: object
    reject_mass: object
    expected_passes: object  # expected number of full passes, 1/(a+r)


def validate_pfa(machine):
    """Return a list of human-readable violations (empty when well formed)."""
    problems = []
    states = set(machine.states)
    if len(states) != len(machine.states):
        problems.append("duplicate state names")
    for special, name in ((machine.start, "start"),
                          (machine.post_accept, "post_accept"),
                          (machine.post_reject, "post_reject")):
        if special not in states:
            problems.append("%s state %r is not a state" % (name, special))
    if machine.post_accept == machine.post_reject:
        problems.append("postselecting states must be distinct")
    symbols = set(machine.framed_alphabet())
    if len(symbols) != len(machine.framed_alphabet()):
        problems.append("input alphabet collides with an end marker")
    seen = set()
    for (src, sym), row in machine.delta.items():
        seen.add((src, sym))
        if src not in states:
            problems.append("row for unknown state %r" % (src,))
            continue
        if sym not in symbols:
            problems.append("row for unknown symbol %r" % (sym,))
            continue
        total = ZERO
        for dst, prob in row:
            if dst not in states:
                problems.append("transition %r --%s--> unknown %r"
                                % (src, sym, dst))
            if not 0 <= prob <= 1:
                problems.append("probability %s out of range on (%r, %r)"
                                % (prob, src, sym))
            total += prob
        if total != ONE:
            problems.append("row (%r, %r) sums to %s, not 1" % (src, sym, total))
    for src in machine.states:
        for sym in machine.framed_alphabet():
            if (src, sym) not in seen:
                problems.append("missing row (%r, %r)" % (src, sym))
    return problems


def _ensure_valid(machine):
    if machine._checked:
        return
    problems = validate_pfa(machine)
    if problems:
        raise MalformedAutomaton("; ".join(problems[:5]))
    machine._checked = True


def _check_word(machine, word):
    alphabet = set(machine.input_alphabet)
    for ch in word:
        if ch not in alphabet:
            raise ValueError("symbol %r not in the input alphabet" % ch)


def distribution_trace(machine, word):
    """The full sequence of state distributions, one per framed symbol read."""
    _ensure_valid(machine)
    _check_word(machine, word)
    delta = machine.delta
    dist = {machine.start: ONE}
    trace = [dict(dist)]
    for sym in (LEFT_END,) + tuple(word) + (RIGHT_END,):
        nxt = {}
        for state, mass in dist.items():
            for dst, prob in delta[(state, sym)]:
                if prob:
                    nxt[dst] = nxt.get(dst, ZERO) + mass * prob
        dist = nxt
        trace.append(dict(dist))
    return trace


def run_exact(machine, word):
    """Exact terminal masses for one framed pass over `word`."""
    _ensure_valid(machine)
    _check_word(machine, word)
    delta = machine.delta
    dist = {machine.start: ONE}
    for sym in (LEFT_END,) + tuple(word) + (RIGHT_END,):
        nxt = {}
        get = nxt.get
        for state, mass in dist.items():
            for dst, prob in delta[(state, sym)]:
                if prob:
                    nxt[dst] = get(dst, ZERO) + mass * prob
                    get = nxt.get
        dist = nxt
    a = dist.get(machine.post_accept, ZERO)
    r = dist.get(machine.post_reject, ZERO)
    return RunResult(a, r, ONE - a - r)


def restart_statistics(machine, word):
    """Terminal masses plus the expected number of passes of the restarting view."""
    result = run_exact(machine, word)
    if not result.defined:
        raise PostselectionUndefined(
            "restart semantics undefined: the machine never halts on %r" % word)
    return RestartStatistics(
        accept_mass=result.accept_mass,
        reject_mass=result.reject_mass,
        expected_passes=1 / (result.accept_mass + result.reject_mass),
    )


@dataclass(frozen=True)
class MonteCarloResult:
    trials: int
    accepted: int
    rejected: int
    total_passes: int

    @property
    def estimate(self):
        return self.accepted / self.trials

    @property
    def mean_passes(self):
        return self.total_passes / self.trials


def trial_rng(seed, index):
    """Deterministic per-trial generator; independent streams per index."""
    return random.Random("%s:%d" % (seed, index))


def _threshold_rows(delta, bits):
    """Precompute integer sampling thresholds: u < ceil(c * 2^bits) <=> u/2^bits < c."""
    scale = 1 << bits
    rows = {}
    for key, row in delta.items():
        cumulative = ZERO
        thresholds = []
        for dst, prob in row:
            if not prob:
                continue
            cumulative += prob
            num = int(cumulative.numerator) * scale
            den = int(cumulative.denominator)
            thresholds.append((-(-num // den), dst))
        rows[key] = thresholds
    return rows


def _sample(thresholds, draw):
    for bound, dst in thresholds:
        if draw < bound:
            return dst
    return thresholds[-1][1]


def simulate_monte_carlo(machine, word, trials, seed=0,
                         restart_cap=10 ** 6, bits=128):
    """Sampled restarting runs.

    Every transition is sampled by comparing a `bits`-bit uniform draw
    against exact cumulative thresholds, so no floating point enters the
    simulation.  Each trial restarts until the pass ends in a
    postselecting state (or the restart cap trips).
    """
    if trials <= 0:
        raise EmptyTrialSet("trials must be positive")
    _ensure_valid(machine)
    _check_word(machine, word)
    rows = _threshold_rows(machine.delta, bits)
    framed = (LEFT_END,) + tuple(word) + (RIGHT_END,)
    accept, reject_state = machine.post_accept, machine.post_reject
    accepted = rejected = total_passes = 0
    for i in range(trials):
        rng = trial_rng(seed, i)
        getrandbits = rng.getrandbits
        passes = 0
        while True:
            passes += 1
            if passes > restart_cap:
                raise RestartCapExceeded(
                    "trial %d exceeded %d passes" % (i, restart_cap))
            state = machine.start
            for sym in framed:
                state = _sample(rows[(state, sym)], getrandbits(bits))
            if state == accept:
                accepted += 1
                break
            if state == reject_state:
                rejected += 1
                break
        total_passes += passes
    return MonteCarloResult(trials, accepted, rejected, total_passes)


def random_post_pfa(rng, n_working=3, alphabet=("0", "1"), max_weight=4):
    """A random well-formed machine; used for cross-checking the two runners.

    Rows are exact rationals obtained by normalizing small random integer
    weights, so the machine is stochastic by construction.
    """
    working = ["q%d" % i for i in range(n_working)]
    states = working + [ACCEPT_STATE, REJECT_STATE]
    framed = tuple(alphabet) + (LEFT_END, RIGHT_END)
    delta = {}
    for src in working:
        for sym in framed:
            targets = states if sym == RIGHT_END else working
            weights = [rng.randint(0, max_weight) for _ in targets]
            if not any(weights):
                weights[rng.randrange(len(targets))] = 1
            total = sum(weights)
            delta[(src, sym)] = tuple(
                (dst, Q(wt, total)) for dst, wt in zip(targets, weights) if wt)
    for special in (ACCEPT_STATE, REJECT_STATE):
        for sym in framed:
            delta[(special, sym)] = ((special, ONE),)
    return PostPFA(states, tuple(alphabet), delta, working[0])
