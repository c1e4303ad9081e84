"""Encoding a bit string into a coin bias, and recovering bits from tosses.

A string x_1..x_K is packed into the dyadic rational

    p = sum_i ( x_i * 2^-(3i-2) + 2^-(3i) )

so bit x_i occupies binary digit 3i-2 of p and a guard 1 sits at digit 3i.
Tossing the coin n = 64^k times concentrates the head count H near n*p,
and because n*p = 2^(6k)*p shifts the binary point, bit x_k can be read
off H with pure bit arithmetic.  The recovery succeeds whenever H lies
within 2^(3(k-1)) of its mean, which a Chernoff bound (checked here by
exact binomial summation) makes overwhelmingly likely.
"""

from .errors import BadParameter
from .ratio import ONE, Q


def encode_coin(bits):
    """Bias of the coin encoding the given bit sequence."""
    bits = list(bits)
    if not bits or any(b not in (0, 1) for b in bits):
        raise BadParameter("need a nonempty sequence of 0/1 bits")
    p = Q(0)
    for i, b in enumerate(bits, start=1):
        if b:
            p += Q(1, 2 ** (3 * i - 2))
        p += Q(1, 2 ** (3 * i))
    return p


def encoding_error_bound(k_max):
    """Upper bound on the mass of digits beyond position 3*k_max."""
    return Q(1, 2 ** (3 * k_max))


def guess_bit_from_heads(k, heads):
    """Read bit k from the head count of 64^k tosses: digit 3k+2 of H."""
    if k < 1:
        raise BadParameter("bit index must be >= 1")
    if not 0 <= heads <= 64 ** k:
        raise BadParameter("head count must lie in [0, 64^k]")
    return (heads >> (3 * k + 2)) & 1


def exact_guess_success(p, k, target_bit):
    """Exact probability that 64^k tosses of a p-coin reveal target_bit.

    Sums the binomial distribution of the head count over the outcomes
    whose digit 3k+2 equals target_bit.  The sum has 64^k + 1 terms, so
    the exact form is only offered for k = 1; use mc_guess_success above
    that scale.
    """
    p = Q(p)
    if k != 1:
        raise BadParameter("exact summation is only supported for k = 1")
    if not 0 <= p <= 1:
        raise BadParameter("bias must lie in [0, 1]")
    if target_bit not in (0, 1):
        raise BadParameter("target bit must be 0 or 1")
    n = 64 ** k
    q = 1 - p
    total = Q(0)
    # walk the binomial pmf incrementally to avoid n recomputations of comb
    if p == 0:
        return ONE if guess_bit_from_heads(k, 0) == target_bit else Q(0)
    if p == 1:
        return ONE if guess_bit_from_heads(k, n) == target_bit else Q(0)
    term = q ** n
    ratio = p / q
    for h in range(n + 1):
        if guess_bit_from_heads(k, h) == target_bit:
            total += term
        if h < n:
            term = term * ratio * Q(n - h, h + 1)
    return total


def crossing_guess(k, heads):
    """Bit k as read off by walking an alternating-block certificate.

    A head-count walker over blocks of length 8^k sees a letter change
    once per block boundary; it guesses 1 while the boundary count mod 8
    is in 4..7.  Agrees with guess_bit_from_heads except when the head
    count sits exactly on a multiple of 8^k or beyond the last boundary.
    """
    if k < 1:
        raise BadParameter("bit index must be >= 1")
    if not 0 <= heads <= 64 ** k:
        raise BadParameter("head count must lie in [0, 64^k]")
    if heads == 0:
        return 0
    m = 8 ** k
    boundaries = min((heads - 1) // m, m - 2)
    return 1 if boundaries % 8 >= 4 else 0


def exact_crossing_success(p, k, target_bit):
    """Exact probability that the block-walking rule recovers target_bit."""
    p = Q(p)
    if k != 1:
        raise BadParameter("exact summation is only supported for k = 1")
    if not 0 <= p <= 1:
        raise BadParameter("bias must lie in [0, 1]")
    if target_bit not in (0, 1):
        raise BadParameter("target bit must be 0 or 1")
    n = 64 ** k
    q = 1 - p
    if p == 0:
        return ONE if crossing_guess(k, 0) == target_bit else Q(0)
    if p == 1:
        return ONE if crossing_guess(k, n) == target_bit else Q(0)
    total = Q(0)
    term = q ** n
    ratio = p / q
    for h in range(n + 1):
        if crossing_guess(k, h) == target_bit:
            total += term
        if h < n:
            term = term * ratio * Q(n - h, h + 1)
    return total


def mc_guess_success(p, k, target_bit, trials, seed=0, bits=64):
    """Monte Carlo estimate of exact_guess_success via simulated tosses."""
    from .engine import trial_rng

    p = Q(p)
    n = 64 ** k
    num, den = p.numerator, p.denominator
    hits = 0
    for t in range(trials):
        rng = trial_rng(seed, t)
        heads = 0
        for _ in range(n):
            # integer comparison keeps the per-toss bias exactly p
            if rng.randrange(den) < num:
                heads += 1
        if guess_bit_from_heads(k, heads) == target_bit:
            hits += 1
    return Q(hits, trials)
