"""Recognizer constructions for the block-comparison language families.

Each builder returns a table-driven postselecting machine over {0, 1}.
The machines share one layout: a deterministic shape component parses the
block structure of the input (routing every malformed string to the
rejecting state with probability 1 at the right end marker), while
probabilistic gadget components realize two survival events A and R whose
masses end up on the accepting and rejecting states in the exact ratio
Pr[A] : x * Pr[R].  Words whose block lengths match make the two event
masses equal, so members are accepted with probability exactly 1/(1+x);
a mismatched word inflates Pr[R] relative to Pr[A] by at least 1/(2x^2),
giving rejection probability at least 1/(2x+1).
"""

from .construct import ACCEPT, REJECT, SINK, compile_pfa
from .errors import BadParameter
from .ratio import ONE, Q

DEAD = ("dead",)

EQUAL = "EQUAL"
EQUAL_BLOCKS = "EQUAL_BLOCKS"
EQUAL_BLOCKS_F = "EQUAL_BLOCKS_F"
LOG = "LOG"
UPOWER = "UPOWER"
UPOWERK = "UPOWERK"
USQUARE = "USQUARE"
UPOWER6 = "UPOWER6"
DIMA3 = "DIMA3"

LANGUAGES = (EQUAL, EQUAL_BLOCKS, EQUAL_BLOCKS_F, LOG, UPOWER, UPOWERK,
             USQUARE, UPOWER6, DIMA3)


def _require_small_bias(x):
    x = Q(x)
    if not 0 < x < Q(1, 2):
        raise BadParameter("bias parameter must satisfy 0 < x < 1/2, got %s" % x)
    return x


# ---------------------------------------------------------------------------
# paired-block machines: EQUAL, EQUAL_BLOCKS, EQUAL_BLOCKS_F

_BLOCK_SHAPE = {
    ("pre", "0"): "m", ("pre", "1"): None,
    ("m", "0"): "m", ("m", "1"): "mw",
    ("mw", "0"): "n", ("mw", "1"): None,
    ("n", "0"): "n", ("n", "1"): "pre",
}


def _build_block_family(x, slope, offset, single_pair):
    """Machine comparing n_i against slope*m_i + offset on every block pair."""
    x = _require_small_bias(x)
    if slope < 0 or offset < 0 or slope + offset == 0:
        raise BadParameter("block map must have slope >= 0, offset >= 0, "
                           "and not be identically zero")
    a_first = x ** (2 * (slope + offset))   # first zero of an m-block
    a_m = x ** (2 * slope)                  # later zeros of an m-block
    a_n = x ** 2                            # zeros of an n-block
    r_first = x ** (4 * (slope + offset))
    r_m = x ** (4 * slope)
    r_n = x ** 4

    def step(label, sym):
        if label == "init":
            if sym == "¢":
                return [(("pre", "A"), Q(1, 2)), (("pre", "Rr"), Q(1, 2))]
            return [(SINK, ONE)]
        if label == DEAD:
            if sym == "$":
                return [(REJECT, ONE)]
            return [(DEAD, ONE)]
        shape, gadget = label
        if sym == "¢":
            return [(SINK, ONE)]
        if sym == "$":
            if shape != "n":
                return [(REJECT, ONE)]
            if gadget == "A":
                return [(ACCEPT, ONE)]
            if gadget in ("Rmn", "Rnn"):
                return [(REJECT, x), (SINK, 1 - x)]
            return [(SINK, ONE)]
        nxt = _BLOCK_SHAPE[(shape, sym)]
        if single_pair and shape == "n" and sym == "1":
            nxt = None
        if nxt is None:
            return [(DEAD, ONE)]
        if sym == "1":
            moved = {"Rm": "Rmn", "Rn": "Rnn",
                     "Rmn": "Rr", "Rnn": "Rr"}.get(gadget, gadget)
            return [((nxt, moved), ONE)]
        # sym == "0": survival factors depend on the position in the pair
        if shape == "pre":       # first zero of an m-block
            if gadget == "A":
                return [((nxt, "A"), a_first), (SINK, 1 - a_first)]
            # gadget == "Rr": commit to one side of the pair comparison
            return [((nxt, "Rm"), r_first / 2),
                    ((nxt, "Rn"), Q(1, 2)),
                    (SINK, (1 - r_first) / 2)]
        if shape == "m":
            factor = {"A": a_m, "Rm": r_m, "Rn": ONE}[gadget]
        else:                    # first or later zero of an n-block
            factor = {"A": a_n, "Rmn": ONE, "Rnn": r_n}[gadget]
        out = [((nxt, gadget), factor)]
        if factor != ONE:
            out.append((SINK, 1 - factor))
        return out

    return compile_pfa("init", step, ("0", "1"))


def build_equal(x):
    """Recognizer for 0^m 1 0^n with m = n (single block pair)."""
    return _build_block_family(x, 1, 0, single_pair=True)


def build_equal_blocks(x):
    """Recognizer for (0^m_i 1 0^n_i 1)* 0^m_t 1 0^n_t with every m_i = n_i."""
    return _build_block_family(x, 1, 0, single_pair=False)


def build_equal_blocks_f(x, slope, offset):
    """Paired-block recognizer demanding n_i = slope * m_i + offset."""
    return _build_block_family(x, slope, offset, single_pair=False)


def equal_event_probs(x, m, n):
    """The two survival-event masses of the single-pair machine on 0^m 1 0^n."""
    x = _require_small_bias(x)
    if m < 1 or n < 1:
        raise BadParameter("block lengths must be positive")
    return x ** (2 * m + 2 * n), (x ** (4 * m) + x ** (4 * n)) / 2


def blocks_event_probs(x, pairs, slope=1, offset=0):
    """Event masses of the paired-block machine for the given (m_i, n_i) list."""
    x = _require_small_bias(x)
    pr_a = ONE
    pr_r = ONE
    for m, n in pairs:
        if m < 1 or n < 1:
            raise BadParameter("block lengths must be positive")
        f = slope * m + offset
        pr_a *= x ** (2 * f + 2 * n)
        pr_r *= (x ** (4 * f) + x ** (4 * n)) / 2
    return pr_a, pr_r


def pair_acceptance(x, pr_a, pr_r):
    """Acceptance probability induced by the two event masses."""
    x = Q(x)
    return pr_a / (pr_a + x * pr_r)


# ---------------------------------------------------------------------------
# the doubling-chain machine: LOG

_LOG_SHAPE = {
    ("pre", "0"): "z1", ("pre", "1"): None,
    ("z1", "0"): None, ("z1", "1"): "b1a",
    ("b1a", "0"): "b1b", ("b1a", "1"): None,
    ("b1b", "0"): "b1c", ("b1b", "1"): None,
    ("b1c", "0"): None, ("b1c", "1"): "sep",
    ("sep", "0"): "blk", ("sep", "1"): None,
    ("blk", "0"): "blk", ("blk", "1"): "sep",
}
_LOG_ACCEPTING = ("b1c", "blk")
# every '1' that survives the shape automaton opens a new block
_LOG_OPENS = {("z1", "1"), ("b1c", "1"), ("blk", "1")}


def _proc_step_a(state, kind, x):
    if kind == "open":
        if state in ("turn", "x2"):
            return [("x4", Q(1, 2)), ("last", Q(1, 2))]
        if state == "x4":
            return [("x2", ONE)]
        if state == "pre":
            return [("turn", ONE)]
        return []                       # wrong "last block" guess
    # kind == "zero"
    if state == "x4":
        return [("x4", x ** 4)]
    if state == "x2":
        return [("x2", x ** 2)]
    return [(state, ONE)]


def _proc_step_r(state, kind, x):
    if kind == "open":
        if state in ("turn", "x8done", "x4"):
            return [("x8", Q(1, 4)), ("x4wait", Q(1, 4)), ("last", Q(1, 2))]
        if state == "x8":
            return [("x8done", ONE)]
        if state == "x4wait":
            return [("x4", ONE)]
        if state == "pre":
            return [("turn", ONE)]
        return []
    if state == "x8":
        return [("x8", x ** 8)]
    if state == "x4":
        return [("x4", x ** 4)]
    return [(state, ONE)]


_ALIVE_A = {"x2", "last", "turn", "pre"}
_ALIVE_R = {"x8done", "x4", "last", "turn", "pre"}


def build_log(x):
    """Recognizer for 0 1 0^2 1 0^4 ... 1 0^(2^t): each block doubles the last.

    The two survival events compare adjacent block pairs; because the
    pairs overlap, each event runs as two interleaved procedures (one for
    odd pair indices, one for even) living on separate components of a
    product.  Each procedure guesses, with a coin flip per block, whether
    the block just opened is the final one; the guessing cost 2^-t is the
    same in both events and cancels from the acceptance ratio.
    """
    x = _require_small_bias(x)

    def step(label, sym):
        if label == "init":
            if sym == "¢":
                return [(("A", "pre", "turn", "pre"), Q(1, 2)),
                        (("R", "pre", "turn", "pre"), Q(1, 2))]
            return [(SINK, ONE)]
        if label == DEAD:
            if sym == "$":
                return [(REJECT, ONE)]
            return [(DEAD, ONE)]
        path, shape, odd, even = label
        if sym == "¢":
            return [(SINK, ONE)]
        if sym == "$":
            if shape not in _LOG_ACCEPTING:
                return [(REJECT, ONE)]
            alive = _ALIVE_A if path == "A" else _ALIVE_R
            if odd in alive and even in alive:
                if path == "A":
                    return [(ACCEPT, ONE)]
                return [(REJECT, x), (SINK, 1 - x)]
            return [(SINK, ONE)]
        nxt = _LOG_SHAPE[(shape, sym)]
        if nxt is None:
            return [(DEAD, ONE)]
        kind = "open" if (shape, sym) in _LOG_OPENS else "zero"
        proc = _proc_step_a if path == "A" else _proc_step_r
        out = []
        used = Q(0)
        for odd_next, p_odd in proc(odd, kind, x):
            for even_next, p_even in proc(even, kind, x):
                weight = p_odd * p_even
                out.append(((path, nxt, odd_next, even_next), weight))
                used += weight
        if used != ONE:
            out.append((SINK, 1 - used))
        return out

    return compile_pfa("init", step, ("0", "1"))


def log_event_probs(x, blocks):
    """Event masses of the doubling-chain machine for block lengths m_1..m_t."""
    x = _require_small_bias(x)
    pr_a = ONE
    pr_r = ONE
    for m, m_next in zip(blocks, blocks[1:]):
        pr_a *= x ** (4 * m + 2 * m_next)
        pr_r *= (x ** (8 * m) + x ** (4 * m_next)) / 2
    return pr_a, pr_r


# ---------------------------------------------------------------------------
# reference membership and the padding transform

def pad_log(w):
    """Interleave w into the doubling-chain skeleton.

    Bit i of w rides directly after the i-th separator, so the result is
    0 (1 w_1) 0^2 (1 w_2) 0^4 ... (1 w_k) 0^(2^k).
    """
    if any(ch not in "01" for ch in w):
        raise BadParameter("payload must be a binary string")
    parts = ["0"]
    for i, bit in enumerate(w, start=1):
        parts.append("1" + bit + "0" * (2 ** i))
    return "".join(parts)


def _block_runs(w):
    """Maximal runs of w as (symbol, length) pairs."""
    runs = []
    for ch in w:
        if runs and runs[-1][0] == ch:
            runs[-1][1] += 1
        else:
            runs.append([ch, 1])
    return [(ch, ln) for ch, ln in runs]


def _paired_zero_blocks(w):
    """Zero-block lengths of 0^a 1 0^b 1 0^c ... (single separating 1s).

    Returns None when w is not of that alternating shape.
    """
    runs = _block_runs(w)
    if not runs or runs[0][0] != "0":
        return None
    lengths = []
    for i, (ch, ln) in enumerate(runs):
        if ch == "1":
            if ln != 1:
                return None
        else:
            if i % 2 != 0:
                return None
            lengths.append(ln)
    if runs[-1][0] != "0":
        return None
    # every 0-run must be preceded/followed by single 1s: enforced above
    return lengths if len(runs) == 2 * len(lengths) - 1 else None


def _is_power(n, base):
    if n < base:
        return False
    while n % base == 0:
        n //= base
    return n == 1


def reference_membership(language, w, slope=None, offset=None, k=None):
    """Slow, definition-level membership oracle for the supported languages."""
    if language == EQUAL:
        blocks = _paired_zero_blocks(w)
        return blocks is not None and len(blocks) == 2 and blocks[0] == blocks[1]
    if language in (EQUAL_BLOCKS, EQUAL_BLOCKS_F):
        if language == EQUAL_BLOCKS:
            slope, offset = 1, 0
        if slope is None or offset is None:
            raise BadParameter("EQUAL_BLOCKS_F needs slope and offset")
        blocks = _paired_zero_blocks(w)
        if blocks is None or len(blocks) < 2 or len(blocks) % 2 != 0:
            return False
        return all(blocks[i + 1] == slope * blocks[i] + offset
                   for i in range(0, len(blocks), 2))
    if language == LOG:
        blocks = _paired_zero_blocks(w)
        if blocks is None or len(blocks) < 2:
            return False
        return all(blocks[i] == 2 ** i for i in range(len(blocks)))
    if language in (UPOWER, UPOWERK, UPOWER6, USQUARE):
        if any(ch != "0" for ch in w):
            return False
        n = len(w)
        if language == UPOWER:
            return _is_power(n, 2)
        if language == USQUARE:
            root = int(n ** 0.5)
            while root * root < n:
                root += 1
            return n > 0 and root * root == n
        kk = 6 if language == UPOWER6 else k
        if kk is None or kk < 1:
            raise BadParameter("UPOWERK needs a positive exponent step k")
        return _is_power(n, 2 ** kk)
    if language == DIMA3:
        from .counter import dima3_member
        if not w:
            return False
        k = 1
        while True:
            member = dima3_member(k)
            if len(member) > len(w):
                return False
            if member == w:
                return True
            k += 1
    raise BadParameter("unknown language id %r" % (language,))
