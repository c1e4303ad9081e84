"""Certificate-reading postselecting verifiers for unary languages.

A verifier reads the framed input in realtime while holding a one-way
head on an infinite certificate string; each transition either keeps the
certificate head in place or advances it one symbol.  The protocols here
follow a shared pattern: an accepting path deposits a small calibrated
mass on the accepting state, while a main path and probabilistically
forked subpaths each enforce one length equation about the certificate's
block structure, dumping their mass on the rejecting state when their
check fails.  Honest certificates pass every check, so members are
accepted with probability exactly 1; for any other certificate some
check fails with mass large enough to force rejection.
"""

from .construct import ACCEPT, REJECT, SINK, compile_verifier
from .engine import ACCEPT_STATE, LEFT_END, REJECT_STATE, RIGHT_END, RunResult
from .errors import (BadParameter, BudgetExceeded, MalformedAutomaton,
                     NotAMember)
from .ratio import ONE, Q, ZERO

CERT_END = "$"
HALF = Q(1, 2)


class Certificate:
    """Finite certificate prefix followed by an infinitely repeated symbol."""

    __slots__ = ("prefix", "tail_symbol")

    def __init__(self, prefix, tail_symbol=CERT_END):
        self.prefix = tuple(prefix)
        self.tail_symbol = tail_symbol

    def symbol_at(self, position):
        if position < len(self.prefix):
            return self.prefix[position]
        return self.tail_symbol

    def __eq__(self, other):
        if not isinstance(other, Certificate):
            return NotImplemented
        return (self.prefix == other.prefix
                and self.tail_symbol == other.tail_symbol)

    def __hash__(self):
        return hash((self.prefix, self.tail_symbol))

    def __repr__(self):
        return "Certificate(%r, tail=%r)" % ("".join(self.prefix),
                                             self.tail_symbol)


class TwoTrackCertificate:
    """Pair of certificates read jointly as symbols of a product alphabet."""

    __slots__ = ("track1", "track2")

    def __init__(self, track1, track2):
        self.track1 = track1
        self.track2 = track2

    def as_certificate(self):
        n1, n2 = len(self.track1.prefix), len(self.track2.prefix)
        pairs = tuple(self.track1.symbol_at(j) + self.track2.symbol_at(j)
                      for j in range(max(n1, n2)))
        return Certificate(pairs,
                           self.track1.tail_symbol + self.track2.tail_symbol)

    def __repr__(self):
        return "TwoTrackCertificate(%r, %r)" % (self.track1, self.track2)


class VerifierPFA:
    """Postselecting automaton with a one-way certificate head.

    delta maps (state, input symbol, certificate symbol) to a tuple of
    (successor, head_move, probability) entries, head_move in {0, 1}.
    """

    __slots__ = ("states", "input_alphabet", "cert_alphabet", "delta",
                 "start", "post_accept", "post_reject", "_checked")

    def __init__(self, states, input_alphabet, cert_alphabet, delta, start,
                 post_accept=ACCEPT_STATE, post_reject=REJECT_STATE):
        self.states = tuple(states)
        self.input_alphabet = tuple(input_alphabet)
        self.cert_alphabet = tuple(cert_alphabet)
        self.delta = dict(delta)
        self.start = start
        self.post_accept = post_accept
        self.post_reject = post_reject
        self._checked = False

    def framed_alphabet(self):
        return self.input_alphabet + (LEFT_END, RIGHT_END)

    def __eq__(self, other):
        if not isinstance(other, VerifierPFA):
            return NotImplemented
        mine = {k: sorted(v, key=repr) for k, v in self.delta.items()}
        theirs = {k: sorted(v, key=repr) for k, v in other.delta.items()}
        return (sorted(self.states) == sorted(other.states)
                and self.input_alphabet == other.input_alphabet
                and self.cert_alphabet == other.cert_alphabet
                and self.start == other.start
                and self.post_accept == other.post_accept
                and self.post_reject == other.post_reject
                and mine == theirs)

    __hash__ = object.__hash__


def validate_verifier(machine):
    """Structural violations of a VerifierPFA as human-readable strings."""
    problems = []
    states = set(machine.states)
    if machine.start not in states:
        problems.append("start state %r missing" % machine.start)
    for state in machine.states:
        for sym in machine.framed_alphabet():
            for ups in machine.cert_alphabet:
                row = machine.delta.get((state, sym, ups))
                if row is None:
                    problems.append("missing row (%r, %r, %r)"
                                    % (state, sym, ups))
                    continue
                total = ZERO
                for succ, move, prob in row:
                    total += prob
                    if succ not in states:
                        problems.append("unknown successor %r" % (succ,))
                    if move not in (0, 1):
                        problems.append("bad head move %r" % (move,))
                    if not 0 <= prob <= 1:
                        problems.append("probability %s out of range" % prob)
                if total != ONE:
                    problems.append("row (%r, %r, %r) sums to %s"
                                    % (state, sym, ups, total))
    return problems


def _ensure_valid(machine):
    if machine._checked:
        return
    problems = validate_verifier(machine)
    if problems:
        raise MalformedAutomaton("; ".join(problems[:5]))
    machine._checked = True


def run_verifier_exact(machine, word, certificate):
    """Exact terminal masses of a verifier run on word with the certificate.

    Tracks the joint distribution over (state, certificate position)
    pairs through the framed input; certificate positions beyond the
    prefix read its tail symbol.
    """
    _ensure_valid(machine)
    alphabet = set(machine.input_alphabet)
    for ch in word:
        if ch not in alphabet:
            raise ValueError("symbol %r not in the input alphabet" % ch)
    if isinstance(certificate, TwoTrackCertificate):
        certificate = certificate.as_certificate()
    cert_alphabet = set(machine.cert_alphabet)
    for ups in tuple(certificate.prefix) + (certificate.tail_symbol,):
        if ups not in cert_alphabet:
            raise ValueError("certificate symbol %r not in the certificate "
                             "alphabet" % (ups,))
    delta = machine.delta
    dist = {(machine.start, 0): ONE}
    for sym in (LEFT_END,) + tuple(word) + (RIGHT_END,):
        nxt = {}
        for (state, pos), mass in dist.items():
            ups = certificate.symbol_at(pos)
            for succ, move, prob in delta[(state, sym, ups)]:
                if prob:
                    key = (succ, pos + move)
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


def verifier_from_pfa(machine, cert_alphabet=(CERT_END,)):
    """Lift a PostPFA to a verifier that ignores its certificate."""
    delta = {}
    for (state, sym), row in machine.delta.items():
        for ups in cert_alphabet:
            delta[(state, sym, ups)] = tuple(
                (succ, 0, prob) for succ, prob in row)
    return VerifierPFA(machine.states, machine.input_alphabet, cert_alphabet,
                       delta, machine.start)


# ---------------------------------------------------------------------------
# honest certificates

def honest_cert_upower(n):
    """Halving-chain certificate for a power of two: 0^(n/2-1)1 0^(n/4-1)1 ... 1 $."""
    if n < 2 or n & (n - 1):
        raise NotAMember("%d is not a power of two greater than 1" % n)
    parts = []
    block = n // 2
    while block >= 1:
        parts.append("0" * (block - 1) + "1")
        block //= 2
    parts.append(CERT_END)
    return Certificate("".join(parts))


def honest_cert_usquare(n):
    """Alternating-letter certificate for a square: m-1 blocks of length m."""
    root = 1
    while root * root < n:
        root += 1
    if root * root != n or root < 2:
        raise NotAMember("%d is not a square of an integer greater than 1" % n)
    parts = ["ab"[j % 2] * root for j in range(root - 1)]
    parts.append(CERT_END)
    return Certificate("".join(parts))


def honest_cert_upower6(k):
    """Two-track certificate for 0^(64^k): power-of-64 proof over square proof."""
    if k < 1:
        raise BadParameter("exponent k must be >= 1")
    n = 64 ** k
    return TwoTrackCertificate(honest_cert_upower(n), honest_cert_usquare(n))


# ---------------------------------------------------------------------------
# power-of-two verifier (plus the mod-k block count refinement)
#
# Certificate format: t blocks, every block 0+1 except the last which is
# exactly "1", then $.  The main path consumes one input symbol per
# certificate symbol (including the $), checking |input| = |prefix|+1 and
# the format; at each block starting with 0 it forks a subpath with half
# probability; the j-th subpath re-reads that block at half speed,
# checking that twice its length plus the input already consumed equals
# the whole input.  Together the checks force block j+1 to be half of
# block j, the last block to be 1, and the input length to be twice the
# first block: a power of two.

def _upower_acc_step(label, sym, ups, x):
    fmt = label[1]
    if sym == RIGHT_END:
        if fmt == "end":
            return [(ACCEPT, 0, x), (SINK, 0, 1 - x)]
        return [(REJECT, 0, ONE)]
    if sym == LEFT_END or fmt in ("end", "fail"):
        return [(label, 0, ONE)]
    if fmt == "B0":
        if ups == "0":
            return [(("uacc", "Bz"), 1, ONE)]
        if ups == "1":   # closes the final single-symbol block; halve
            return [(("uacc", "L1"), 1, HALF), (SINK, 0, HALF)]
        return [(("uacc", "fail"), 0, ONE)]
    if fmt == "Bz":
        if ups == "0":
            return [(label, 1, ONE)]
        if ups == "1":   # closes a 0+1 block; halve
            return [(("uacc", "B0"), 1, HALF), (SINK, 0, HALF)]
        return [(("uacc", "fail"), 0, ONE)]
    # fmt == "L1": only the certificate end may follow the last block
    if ups == CERT_END:
        return [(("uacc", "end"), 0, ONE)]
    return [(("uacc", "fail"), 0, ONE)]


def _upower_main_step(label, sym, ups, k):
    kind = label[0]
    if kind == "um":
        st, cnt = label[1], label[2]
        if sym == RIGHT_END:
            if st == "done" and cnt == 0:
                return [(SINK, 0, ONE)]
            return [(REJECT, 0, ONE)]
        if sym == LEFT_END or st == "fail":
            return [(label, 0, ONE)]
        if st == "B0":
            if ups == "0":   # fork the subpath double-reading this block
                return [(("um", "Bz", cnt), 1, HALF), (("us", "A"), 0, HALF)]
            if ups == "1":
                return [(("um", "L1", (cnt + 1) % k), 1, ONE)]
            return [(("um", "fail", 0), 0, ONE)]
        if st == "Bz":
            if ups == "0":
                return [(label, 1, ONE)]
            if ups == "1":
                return [(("um", "B0", (cnt + 1) % k), 1, ONE)]
            return [(("um", "fail", 0), 0, ONE)]
        if st == "L1":
            if ups == CERT_END:
                return [(("um", "done", cnt), 0, ONE)]
            return [(("um", "fail", 0), 0, ONE)]
        # st == "done": the input outlives the certificate
        return [(("um", "fail", 0), 0, ONE)]
    # kind == "us": subpath reading the forked block twice per symbol
    st = label[1]
    if sym == RIGHT_END:
        if st == "done":
            return [(SINK, 0, ONE)]
        return [(REJECT, 0, ONE)]
    if sym == LEFT_END or st == "fail":
        return [(label, 0, ONE)]
    if st == "A":            # second visit of the current symbol
        if ups == "1":
            return [(("us", "done"), 1, ONE)]
        return [(("us", "B"), 1, ONE)]
    if st == "B":            # first visit of the current symbol
        if ups == CERT_END:
            return [(("us", "fail"), 0, ONE)]
        return [(("us", "A"), 0, ONE)]
    # st == "done": block check succeeded but input continues
    return [(("us", "fail"), 0, ONE)]


def _build_upower(x, k):
    x = Q(x)
    if not 0 < x < 1:
        raise BadParameter("acceptance weight must satisfy 0 < x < 1, got %s"
                           % x)

    def step(label, sym, ups):
        if label == "init":
            if sym == LEFT_END:
                return [(("uacc", "B0"), 0, HALF), (("um", "B0", 0), 0, HALF)]
            return [(SINK, 0, ONE)]
        if label[0] == "uacc":
            return _upower_acc_step(label, sym, ups, x)
        return _upower_main_step(label, sym, ups, k)

    states, delta, start = compile_verifier(
        "init", step, ("0",), ("0", "1", CERT_END))
    return VerifierPFA(states, ("0",), ("0", "1", CERT_END), delta, start)


def build_upower_verifier(x):
    """Verifier accepting 0^n exactly when n is a power of two (n >= 2)."""
    return _build_upower(x, 1)


def build_upowerk_verifier(x, k):
    """As build_upower_verifier, additionally requiring 2^(k*j) inputs."""
    if k < 2:
        raise BadParameter("block-count modulus k must be >= 2")
    return _build_upower(x, k)


# ---------------------------------------------------------------------------
# perfect-square verifier
#
# Certificate format: t alternating letter blocks starting with a, then $.
# The length equations |input| = sum(m_i) + m_j (one forked subpath per
# block j) force all blocks to one common length m, and the equation
# |input| = sum(m_i) + t + 1 (a separate counting path that pauses once
# per block and once at $) forces m = t + 1, hence |input| = m^2.  The
# forking path consumes the certificate strictly one symbol per input so
# that its subpaths inherit no pauses; the counting path forks nothing.

def _usquare_acc_step(label, sym, ups, x):
    prev = label[1]
    if sym == RIGHT_END:
        if prev == "end":
            return [(ACCEPT, 0, x), (SINK, 0, 1 - x)]
        return [(REJECT, 0, ONE)]
    if sym == LEFT_END or prev in ("end", "fail"):
        return [(label, 0, ONE)]
    if prev == "start":
        if ups == "a":       # first block opens; halve
            return [(("qacc", "a"), 1, HALF), (SINK, 0, HALF)]
        return [(("qacc", "fail"), 0, ONE)]
    if ups == prev:
        return [(label, 1, ONE)]
    if ups == CERT_END:
        return [(("qacc", "end"), 0, ONE)]
    # letter change: a new block opens; halve
    return [(("qacc", ups), 1, HALF), (SINK, 0, HALF)]


def _usquare_forker_step(label, sym, ups):
    kind = label[0]
    if kind == "qa":
        prev = label[1]
        if sym == RIGHT_END:
            return [(SINK, 0, ONE)]
        if sym == LEFT_END or prev == "end":
            return [(label, 0, ONE)]
        if ups == CERT_END:
            return [(("qa", "end"), 0, ONE)]
        if ups == prev:
            return [(label, 1, ONE)]
        # block opens (first symbol, or a letter change): fork a subpath
        return [(("qa", ups), 1, HALF), (("qs", ups, "A"), 0, HALF)]
    if kind == "qs":
        letter, phase = label[1], label[2]
        if sym == RIGHT_END:
            if phase == "B" and ups == CERT_END:
                return [(SINK, 0, ONE)]
            return [(REJECT, 0, ONE)]
        if sym == LEFT_END:
            return [(label, 0, ONE)]
        if phase == "A":     # second visit of the current symbol
            return [(("qs", letter, "B"), 1, ONE)]
        # phase == "B": first visit of the current symbol
        if ups == letter:
            return [(("qs", letter, "A"), 0, ONE)]
        if ups == CERT_END:
            return [(("qsf",), 0, ONE)]
        # the forked block ended; read the remaining blocks at full speed
        return [(("qss",), 1, ONE)]
    if kind == "qss":
        if sym == RIGHT_END:
            if ups == CERT_END:
                return [(SINK, 0, ONE)]
            return [(REJECT, 0, ONE)]
        if sym == LEFT_END:
            return [(label, 0, ONE)]
        if ups == CERT_END:
            return [(("qsf",), 0, ONE)]
        return [(label, 1, ONE)]
    # kind == "qsf": failed subpath
    if sym == RIGHT_END:
        return [(REJECT, 0, ONE)]
    return [(label, 0, ONE)]


def _usquare_counter_step(label, sym, ups):
    kind = label[0]
    if sym == RIGHT_END:
        if kind == "qbf":
            return [(SINK, 0, ONE)]
        return [(REJECT, 0, ONE)]
    if sym == LEFT_END or kind == "qbx":
        return [(label, 0, ONE)]
    if kind == "qb":
        prev = label[1]
        if ups == CERT_END:
            return [(("qbf",), 0, ONE)]       # the pause charged for the $
        if ups == prev:
            return [(label, 1, ONE)]
        return [(("qbp", ups), 0, ONE)]       # pause at a block start
    if kind == "qbp":
        return [(("qb", label[1]), 1, ONE)]
    # kind == "qbf": one pause after $ already consumed; input must end
    return [(("qbx",), 0, ONE)]


def build_usquare_verifier(x):
    """Verifier accepting 0^n exactly when n is a perfect square.

    Inputs of length at most 3 are decided outright (1 is the only such
    square); the certificate protocol handles the rest.
    """
    x = Q(x)
    if not 0 < x < 1:
        raise BadParameter("acceptance weight must satisfy 0 < x < 1, got %s"
                           % x)

    def step(label, sym, ups):
        if label == "init":
            if sym == LEFT_END:
                return [((0, ("qacc", "start")), 0, Q(1, 4)),
                        ((0, ("qa", "start")), 0, HALF),
                        ((0, ("qb", "start")), 0, Q(1, 4))]
            return [(SINK, 0, ONE)]
        seen, inner = label
        if sym == RIGHT_END:
            if seen == 1:
                return [(ACCEPT, 0, ONE)]
            if seen in (0, 2, 3):
                return [(REJECT, 0, ONE)]
        bump = min(seen + 1, 4) if sym == "0" else seen
        kind = inner[0]
        if kind == "qacc":
            rows = _usquare_acc_step(inner, sym, ups, x)
        elif kind in ("qa", "qs", "qss", "qsf"):
            rows = _usquare_forker_step(inner, sym, ups)
        else:
            rows = _usquare_counter_step(inner, sym, ups)
        return [(nxt if nxt in (ACCEPT, REJECT, SINK) else (bump, nxt),
                 move, prob) for nxt, move, prob in rows]

    states, delta, start = compile_verifier(
        "init", step, ("0",), ("a", "b", CERT_END))
    return VerifierPFA(states, ("0",), ("a", "b", CERT_END), delta, start)


# ---------------------------------------------------------------------------
# the two-track coin verifier
#
# Accepts 0^n for n = 64^k when bit k of the advice sequence encoded in
# the coin bias is 1.  Three certificate-checking path groups prove
# n = 2^(6k) (track 1) and n = m^2 (track 2); their accepting masses are
# flattened to c * 2^-n by one fair halving per input symbol, so that any
# failed structural check dominates them outright.  A fourth path tosses
# the biased coin once per input symbol, walks the certificate's second
# track one block per 8^k heads, and turns the parity of the head count's
# relevant binary digit into an accept/reject vote of mass 2^-n / 4.

def _coin_walk_step(label, sym, ups, p_head):
    prev, cnt = label[1], label[2]
    if sym == RIGHT_END:
        if cnt >= 4:
            return [(ACCEPT, 0, Q(1, 4)), (SINK, 0, Q(3, 4))]
        return [(REJECT, 0, Q(1, 4)), (SINK, 0, Q(3, 4))]
    if sym == LEFT_END:
        return [(label, 0, ONE)]
    if prev == "end":
        return [(label, 0, HALF), (SINK, 0, HALF)]
    track2 = ups[1]
    if track2 == CERT_END:
        advanced = ("p3", "end", cnt)
    elif prev == "start":
        advanced = ("p3", track2, cnt)
    elif track2 != prev:
        advanced = ("p3", track2, (cnt + 1) % 8)
    else:
        advanced = label
    return [(advanced, 1, p_head / 2),
            (label, 0, (1 - p_head) / 2),
            (SINK, 0, HALF)]


def _flat_acc_step(label, sym, final_factor):
    if sym == RIGHT_END:
        return [(ACCEPT, 0, final_factor), (SINK, 0, 1 - final_factor)]
    if sym == LEFT_END:
        return [(label, 0, ONE)]
    return [(label, 0, HALF), (SINK, 0, HALF)]


def build_upower6I_verifier(advice_bits, precision_K):
    """Coin-advice verifier for inputs 0^(64^k) with advice bit k set.

    advice_bits lists the leading advice bits; the coin bias is their
    dyadic encoding truncated at precision_K fractional bit groups.
    """
    bits = list(advice_bits)
    if precision_K < max(1, len(bits)):
        raise BadParameter("precision must cover all provided advice bits")
    from .coin import encode_coin
    p_head = encode_coin(bits + [0] * (precision_K - len(bits)))

    pair_alphabet = tuple(t1 + t2 for t1 in ("0", "1", CERT_END)
                          for t2 in ("a", "b", CERT_END))

    def step(label, sym, ups):
        if label == "init":
            if sym == LEFT_END:
                return [(("c1acc",), 0, Q(1, 6)),
                        (("um", "B0", 0), 0, Q(1, 6)),
                        (("c2acc",), 0, Q(1, 12)),
                        (("qa", "start"), 0, Q(1, 6)),
                        (("qb", "start"), 0, Q(1, 12)),
                        (("p3", "start", 0), 0, Q(1, 3))]
            return [(SINK, 0, ONE)]
        kind = label[0]
        if kind == "c1acc":
            return _flat_acc_step(label, sym, Q(1, 16))
        if kind == "c2acc":
            return _flat_acc_step(label, sym, Q(1, 8))
        if kind in ("um", "us"):
            return _upower_main_step(label, sym, ups[0], 6)
        if kind in ("qa", "qs", "qss", "qsf"):
            return _usquare_forker_step(label, sym, ups[1])
        if kind in ("qb", "qbp", "qbf", "qbx"):
            return _usquare_counter_step(label, sym, ups[1])
        return _coin_walk_step(label, sym, ups, p_head)

    states, delta, start = compile_verifier(
        "init", step, ("0",), pair_alphabet)
    return VerifierPFA(states, ("0",), pair_alphabet, delta, start)


# ---------------------------------------------------------------------------
# exhaustive certificate search

def soundness_search(machine, word, max_prefix_len, budget=10 ** 7,
                     tail_symbol=CERT_END):
    """Best acceptance any certificate can reach, with a maximizing witness.

    Explores every certificate prefix of length max_prefix_len over the
    verifier's certificate alphabet (positions beyond read tail_symbol),
    sharing work across prefixes: a certificate position is only branched
    on once some run mass actually reads it, so certificates that differ
    only at unread positions are explored once.  Ties prefer the
    lexicographically smallest witness.  Searching prefixes of exactly
    this length covers all shorter prefixes, whose remainder is tail
    symbols.  Complete once max_prefix_len >= |word| + 2, since the head
    advances at most once per framed input symbol.
    """
    _ensure_valid(machine)
    if max_prefix_len < 0:
        raise BadParameter("prefix length cannot be negative")
    symbols = sorted(machine.cert_alphabet)
    if len(symbols) ** max_prefix_len > budget:
        raise BudgetExceeded(
            "%d^%d certificate prefixes exceed the budget of %d"
            % (len(symbols), max_prefix_len, budget))
    framed = (LEFT_END,) + tuple(word) + (RIGHT_END,)
    delta = machine.delta
    post_accept, post_reject = machine.post_accept, machine.post_reject
    best = [None, None]  # acceptance, assigned prefix

    def settle(dist, assigned):
        accept = reject = ZERO
        for (state, _), mass in dist.items():
            if state == post_accept:
                accept += mass
            elif state == post_reject:
                reject += mass
        value = accept / (accept + reject) if accept + reject > 0 else ZERO
        if best[0] is None or value > best[0]:
            best[0] = value
            best[1] = tuple(assigned)

    def explore(dist, step_index, assigned):
        while step_index < len(framed):
            frontier = len(assigned)
            if frontier < max_prefix_len and any(
                    pos == frontier for _, pos in dist):
                for choice in symbols:
                    assigned.append(choice)
                    explore(dist, step_index, assigned)
                    assigned.pop()
                return
            sym = framed[step_index]
            nxt = {}
            for (state, pos), mass in dist.items():
                ups = assigned[pos] if pos < frontier else tail_symbol
                for succ, move, prob in delta[(state, sym, ups)]:
                    if prob:
                        key = (succ, pos + move)
                        nxt[key] = nxt.get(key, ZERO) + mass * prob
            dist = nxt
            step_index += 1
        settle(dist, assigned)

    explore({(machine.start, 0): ONE}, 0, [])
    prefix = best[1] + (tail_symbol,) * (max_prefix_len - len(best[1]))
    return best[0], Certificate(prefix, tail_symbol)
