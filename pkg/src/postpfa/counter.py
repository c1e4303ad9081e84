"""Postselecting counter automata and the doubling-chain counter language.

A PostPCA extends a PostPFA with one integer counter: every transition
sees whether the counter is zero and adds -1, 0, or +1 to it.  The
recognizers here target words of the form

    0^t1 1 0^t2 1 ... 1 0^t(m-1) 11 0^tm 1 1^u 0^s1 1 0^s2 1 ... 1 0^sn 1

with t1 = 1 and m divisible by 6 (anything else is rejected outright by
a deterministic shape filter).  Members additionally double each t-block
over the previous one, set u to twice the last t-block, and make all n
trailing s-blocks equal with n = s1 + 1; four parallel counter paths
each verify a slice of those equations, so that every broken equation
costs at least one path.
"""

from .construct import ACCEPT, REJECT, SINK, compile_pca
from .engine import (ACCEPT_STATE, LEFT_END, MonteCarloResult, REJECT_STATE,
                     RIGHT_END, RunResult, trial_rng)
from .errors import (BadParameter, MalformedAutomaton, RestartCapExceeded)
from .ratio import ONE, Q, ZERO

HALF = Q(1, 2)


class PostPCA:
    """Postselecting realtime automaton with one integer counter.

    delta maps (state, symbol, counter_is_zero) to a tuple of
    (successor, counter_delta, probability) entries.
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
        if not isinstance(other, PostPCA):
            return NotImplemented
        mine = {k: sorted(v, key=repr) for k, v in self.delta.items()}
        theirs = {k: sorted(v, key=repr) for k, v in other.delta.items()}
        return (sorted(self.states) == sorted(other.states)
                and self.input_alphabet == other.input_alphabet
                and self.start == other.start
                and self.post_accept == other.post_accept
                and self.post_reject == other.post_reject
                and mine == theirs)

    __hash__ = object.__hash__


def validate_pca(machine):
    """Structural violations of a PostPCA as human-readable strings."""
    problems = []
    states = set(machine.states)
    if machine.start not in states:
        problems.append("start state %r missing" % machine.start)
    for state in machine.states:
        for sym in machine.framed_alphabet():
            for zero in (True, False):
                row = machine.delta.get((state, sym, zero))
                if row is None:
                    problems.append("missing row (%r, %r, zero=%s)"
                                    % (state, sym, zero))
                    continue
                total = ZERO
                for succ, dc, prob in row:
                    total += prob
                    if succ not in states:
                        problems.append("unknown successor %r" % (succ,))
                    if dc not in (-1, 0, 1):
                        problems.append("bad counter delta %r" % (dc,))
                    if not 0 <= prob <= 1:
                        problems.append("probability %s out of range" % prob)
                if total != ONE:
                    problems.append("row (%r, %r, zero=%s) sums to %s"
                                    % (state, sym, zero, total))
    return problems


def _ensure_valid(machine):
    if machine._checked:
        return
    problems = validate_pca(machine)
    if problems:
        raise MalformedAutomaton("; ".join(problems[:5]))
    machine._checked = True


def run_pca_exact(machine, word):
    """Exact terminal masses over sparse (state, counter value) pairs."""
    _ensure_valid(machine)
    alphabet = set(machine.input_alphabet)
    for ch in word:
        if ch not in alphabet:
            raise ValueError("symbol %r not in the input alphabet" % ch)
    delta = machine.delta
    dist = {(machine.start, 0): ONE}
    for sym in (LEFT_END,) + tuple(word) + (RIGHT_END,):
        nxt = {}
        for (state, counter), mass in dist.items():
            for succ, dc, prob in delta[(state, sym, counter == 0)]:
                if prob:
                    key = (succ, counter + dc)
                    nxt[key] = nxt.get(key, ZERO) + mass * prob
        dist = nxt
    accept = reject = other = ZERO
    for (state, _), mass in dist.items():
        if state == machine.post_accept:
            accept += mass
        elif state == machine.post_reject:
            reject += mass
        else:
            other += mass
    return RunResult(accept, reject, other)


def run_pca_mc(machine, word, trials, seed=0, restart_cap=10 ** 6, bits=128):
    """Monte Carlo restart simulation of a PostPCA; mirrors the PFA version."""
    _ensure_valid(machine)
    if trials < 1:
        raise BadParameter("need at least one trial")
    framed = (LEFT_END,) + tuple(word) + (RIGHT_END,)
    delta = machine.delta
    scale = 1 << bits
    thresholds = {}
    for key, row in delta.items():
        acc = ZERO
        cuts = []
        for succ, dc, prob in row:
            acc += prob
            cuts.append((-(-(acc.numerator * scale) // acc.denominator),
                         succ, dc))
        thresholds[key] = cuts
    accepted = rejected = 0
    total_passes = 0
    for index in range(trials):
        rng = trial_rng(seed, index)
        verdict = None
        passes = 0
        while verdict is None:
            passes += 1
            if passes > restart_cap:
                raise RestartCapExceeded(
                    "no postselecting outcome in %d passes" % restart_cap)
            state, counter = machine.start, 0
            for sym in framed:
                draw = rng.getrandbits(bits)
                for cut, succ, dc in thresholds[(state, sym, counter == 0)]:
                    if draw < cut:
                        state, counter = succ, counter + dc
                        break
            if state == machine.post_accept:
                verdict = True
            elif state == machine.post_reject:
                verdict = False
        total_passes += passes
        if verdict:
            accepted += 1
        else:
            rejected += 1
    return MonteCarloResult(trials, accepted, rejected, total_passes)


# ---------------------------------------------------------------------------
# the language itself

def dima3_member(k):
    """The k-th shortest member of the counter language.

    Doubling prefix 0^(2^0) 1 ... 11 0^(2^(6k-1)) 1, then 2^(6k) extra
    ones, then 2^(3k) equal blocks (0^(2^(3k)-1) 1).
    """
    if k < 1:
        raise BadParameter("member index must be >= 1")
    m = 6 * k
    parts = []
    for i in range(1, m + 1):
        parts.append("0" * 2 ** (i - 1))
        parts.append("11" if i == m - 1 else "1")
    parts.append("1" * 2 ** m)
    parts.append(("0" * (2 ** (3 * k) - 1) + "1") * 2 ** (3 * k))
    return "".join(parts)


# ---------------------------------------------------------------------------
# deterministic shape filter, shared by every path

DEAD = ("dead",)


def _shape_step(shape, sym):
    """One step of the deterministic block-structure automaton.

    States: s0/s1 first block (forced to a single 0); ("po", c) after a
    single separating 1 with c closed blocks mod 6; ("pz", c) inside a
    later doubling block; mk after the 11 marker; mz inside the final
    doubling block; mo after its closing 1; ones inside the extra-ones
    run; sz inside a trailing block; so after a trailing block's 1.
    """
    if shape == DEAD:
        return DEAD
    if shape == "s0":
        return "s1" if sym == "0" else DEAD
    if shape == "s1":
        return ("po", 1) if sym == "1" else DEAD
    if shape[0] == "po":
        if sym == "0":
            return ("pz", shape[1])
        return "mk" if (shape[1] + 1) % 6 == 0 else DEAD
    if shape[0] == "pz":
        if sym == "0":
            return shape
        return ("po", (shape[1] + 1) % 6)
    if shape == "mk":
        return "mz" if sym == "0" else DEAD
    if shape == "mz":
        return "mz" if sym == "0" else "mo"
    if shape == "mo":
        return "ones" if sym == "1" else DEAD
    if shape == "ones":
        return "ones" if sym == "1" else "sz"
    if shape == "sz":
        return "sz" if sym == "0" else "so"
    # shape == "so"
    return "sz" if sym == "0" else DEAD


_SHAPE_ACCEPT = "so"


def _doubling_zero(shape):
    """Is a 0 read in this shape state part of a doubling (t) block?"""
    return shape in ("s0", "mk", "mz") or shape[0] in ("po", "pz")


def _doubling_index_parity(shape):
    """Parity of the current doubling block's 1-based index (None if n/a)."""
    if shape == "s0" or shape == "s1":
        return 1
    if shape[0] in ("po", "pz"):
        return (shape[1] + 1) % 2
    if shape in ("mk", "mz"):
        return 0          # the final block's index m is divisible by 6
    return None


# ---------------------------------------------------------------------------
# the four comparison paths
#
# Each path's label is (tag, shape, payload..., fail_flag).  A failed
# check latches; verdicts happen at the right end marker: a path whose
# shape filter rejects, or whose checks failed, puts its whole mass on
# the rejecting state; otherwise it puts `verdict` mass on the accepting
# state and the rest on the sink.

def _verdict(ok, verdict):
    if not ok:
        return [(REJECT, 0, ONE)]
    return [(ACCEPT, 0, verdict), (SINK, 0, 1 - verdict)]


def _path1_step(label, sym, zero, verdict):
    """Doubling pairs (t1,t2),(t3,t4),...: 2*t_odd = t_even; trailing
    pairs (s1,s2),(s3,s4),...: equal lengths."""
    _, shape, par, sodd, fail = label
    if sym == RIGHT_END:
        return _verdict(shape == _SHAPE_ACCEPT and not fail, verdict)
    nshape = _shape_step(shape, sym)
    dc = 0
    if sym == "0" and _doubling_zero(shape):
        if _doubling_index_parity(shape) == 1:
            dc = 1                        # charging an odd block
        else:
            dc = -1 if par == 0 else 0    # discharging half-rate
            par ^= 1
    elif sym == "1" and (shape[0] == "pz" or shape == "mz") \
            and _doubling_index_parity(shape) == 0:
        # an even doubling block just closed: its comparison resolves
        if not zero or par != 0:
            fail = True
        par = 0
    elif sym == "0" and shape in ("ones", "sz", "so"):
        dc = 1 if sodd == 0 else -1       # trailing blocks compared 1:1
    elif sym == "1" and shape == "sz":
        if sodd == 1 and not zero:        # an even trailing block closed
            fail = True
        sodd ^= 1
    return [(("p1", nshape, par, sodd, fail), dc, ONE)]


def _path2_step(label, sym, zero, verdict):
    """Doubling pairs (t2,t3),(t4,t5),...; 2*t_m = extra-ones run;
    trailing pairs (s2,s3),(s4,s5),... (the first trailing block is
    skipped, which also realigns the counter)."""
    _, shape, par, sphase, fail = label
    if sym == RIGHT_END:
        return _verdict(shape == _SHAPE_ACCEPT and not fail, verdict)
    nshape = _shape_step(shape, sym)
    dc = 0
    if sym == "0" and _doubling_zero(shape):
        parity = _doubling_index_parity(shape)
        if shape in ("mk", "mz"):
            dc = 1                        # final block charges the ones check
        elif parity == 0:
            dc = 1                        # charging an even block
        elif shape != "s0":               # t1 takes no part
            dc = -1 if par == 0 else 0    # discharging half-rate
            par ^= 1
    elif sym == "1" and shape[0] == "pz" \
            and _doubling_index_parity(shape) == 1:
        # an odd doubling block (3rd, 5th, ...) just closed
        if not zero or par != 0:
            fail = True
        par = 0
    elif sym == "1" and shape in ("mo", "ones"):
        dc = -1 if par == 0 else 0        # extra ones discharge half-rate
        par ^= 1
    elif sym == "0" and shape == "ones":
        # the ones run ended: 2*t_m = run length must have resolved
        if not zero or par != 0:
            fail = True
        par = 0
        sphase = "first"
    elif shape in ("sz", "so") or shape == "ones":
        if sym == "0":
            if sphase == "even":
                dc = 1
            elif sphase == "odd":
                dc = -1
        elif sym == "1" and shape == "sz":
            if sphase == "first":
                sphase = "even"
            elif sphase == "even":
                sphase = "odd"
            else:
                if not zero:              # pair (s_even, s_odd) resolves
                    fail = True
                sphase = "even"
    return [(("p2", nshape, par, sphase, fail), dc, ONE)]


def _path3_step(label, sym, zero, verdict):
    """Global balance: 1 + sum of doubling blocks = n + sum of trailing
    blocks (n counted via the trailing blocks' closing 1s)."""
    _, shape = label
    if sym == RIGHT_END:
        return _verdict(shape == _SHAPE_ACCEPT and zero, verdict)
    nshape = _shape_step(shape, sym)
    dc = 0
    if sym == LEFT_END:
        dc = 1
    elif sym == "0" and _doubling_zero(shape):
        dc = 1
    elif sym == "0" and shape in ("ones", "sz", "so"):
        dc = -1
    elif sym == "1" and shape == "sz":
        dc = -1
    return [(("p3", nshape), dc, ONE)]


def _path4_step(label, sym, zero, verdict):
    """First trailing block vs. block count: s1 + 1 = n."""
    _, shape, in_first = label
    if sym == RIGHT_END:
        return _verdict(shape == _SHAPE_ACCEPT and zero, verdict)
    nshape = _shape_step(shape, sym)
    dc = 0
    if sym == LEFT_END:
        dc = 1
    elif sym == "0" and shape == "ones":
        in_first = True
        dc = 1
    elif sym == "0" and shape == "sz" and in_first:
        dc = 1
    elif sym == "1" and shape == "sz":
        dc = -1
        in_first = False
    return [(("p4", nshape, in_first), dc, ONE)]


_PATH_STEPS = {"p1": _path1_step, "p2": _path2_step,
               "p3": _path3_step, "p4": _path4_step}


def _initial_paths():
    """(label, counter delta at the left end marker) per path."""
    return [(("p1", "s0", 0, 0, False), 0),
            (("p2", "s0", 0, "first", False), 0),
            (("p3", "s0"), 1),
            (("p4", "s0", False), 1)]


def build_dima3(x):
    """Recognizer with four equal-mass comparison paths; error x/(1+x)."""
    x = Q(x)
    if not 0 < x < Q(1, 3):
        raise BadParameter("path weight must satisfy 0 < x < 1/3, got %s" % x)
    verdict = x / 3

    def step(label, sym, zero):
        if label == "init":
            if sym == LEFT_END:
                return [(path, dc, Q(1, 4))
                        for path, dc in _initial_paths()]
            return [(SINK, 0, ONE)]
        return _PATH_STEPS[label[0]](label, sym, zero, verdict)

    states, delta, start = compile_pca("init", step, ("0", "1"))
    return PostPCA(states, ("0", "1"), delta, start)


# ---------------------------------------------------------------------------
# the coin-advice variant
#
# Half the mass reruns the four comparison paths with accepting verdict
# mass y/4; the other half loads 1 + (sum of doubling blocks) into the
# counter, then spends one counter unit per biased-coin toss, consuming
# two input symbols on a head and one on a tail.  Trailing-block closing
# 1s consumed during the tossing count the head total in units of one
# trailing block, mod 8; when the counter hits zero the parity of that
# count (>= 4 or not) is the guessed advice bit, voted with mass y.

def build_dima3I(y, advice_bits, precision_K):
    y = Q(y)
    if not 0 < y < Q(1, 19):
        raise BadParameter("vote weight must satisfy 0 < y < 1/19, got %s" % y)
    bits = list(advice_bits)
    if precision_K < max(1, len(bits)):
        raise BadParameter("precision must cover all provided advice bits")
    from .coin import encode_coin
    p_head = encode_coin(bits + [0] * (precision_K - len(bits)))
    verdict = y / 4

    def coin_step(label, sym, zero):
        tag, shape = label[0], label[1]
        if sym == RIGHT_END:
            if shape != _SHAPE_ACCEPT:
                return [(REJECT, 0, ONE)]
            if tag == "Bacc":
                return [(ACCEPT, 0, ONE)]
            if tag == "Brej":
                return [(REJECT, 0, ONE)]
            if tag == "Btoss" and zero:
                j = label[2]
                good = j >= 4
                return [(ACCEPT if good else REJECT, 0, y), (SINK, 0, 1 - y)]
            return [(REJECT, 0, ONE)]     # tosses still pending at the end
        nshape = _shape_step(shape, sym)
        if tag in ("Bacc", "Brej"):
            return [((tag, nshape), 0, ONE)]
        if tag == "Bload":
            dc = 1 if sym == "0" and _doubling_zero(shape) else 0
            if nshape == "mo":            # the doubling prefix just ended
                return [(("Btoss", nshape, 0), dc, ONE)]
            return [(("Bload", nshape), dc, ONE)]
        crossing = 1 if (sym == "1" and shape == "sz") else 0
        if tag == "Bskip":                # second symbol of a head
            j = (label[2] + crossing) % 8
            return [(("Btoss", nshape, j), 0, ONE)]
        # tag == "Btoss"
        j = (label[2] + crossing) % 8
        if zero:                          # all tosses spent: vote and latch
            good = label[2] >= 4
            return [((("Bacc" if good else "Brej"), nshape), 0, y),
                    (SINK, 0, 1 - y)]
        return [(("Bskip", nshape, j), -1, p_head),
                (("Btoss", nshape, j), -1, 1 - p_head)]

    def step(label, sym, zero):
        if label == "init":
            if sym == LEFT_END:
                rows = [(path, dc, Q(1, 8)) for path, dc in _initial_paths()]
                rows.append((("Bload", "s0"), 1, HALF))
                return rows
            return [(SINK, 0, ONE)]
        tag = label[0]
        if tag in _PATH_STEPS:
            return _PATH_STEPS[tag](label, sym, zero, verdict)
        return coin_step(label, sym, zero)

    states, delta, start = compile_pca("init", step, ("0", "1"))
    return PostPCA(states, ("0", "1"), delta, start)
