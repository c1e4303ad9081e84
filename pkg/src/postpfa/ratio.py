"""Exact rational arithmetic helpers.

All probabilities in this package are exact rationals.  We use gmpy2.mpq
when it is available (it is considerably faster on the deep products that
show up in long runs) and fall back to fractions.Fraction otherwise.  The
two types compare equal to each other, so callers may mix them freely.
"""

from fractions import Fraction

from .errors import ParseError

try:
    from gmpy2 import mpq as Q  # type: ignore[import-untyped]
except ImportError:  # pragma: no cover - gmpy2 is normally installed
    Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def rational(num, den=1):
    """Build an exact rational from integers, a Fraction, or a 'p/q' string."""
    if isinstance(num, str):
        return parse_rational(num)
    return Q(num, den)


def parse_rational(text):
    """Parse 'p/q' (or a bare integer string) into an exact rational."""
    if not isinstance(text, str):
        raise ParseError("expected a 'p/q' string, got %r" % (text,))
    text = text.strip()
    try:
        if "/" in text:
            p, _, q = text.partition("/")
            num, den = int(p), int(q)
        else:
            num, den = int(text), 1
    except ValueError:
        raise ParseError("not a rational: %r" % text)
    if den == 0:
        raise ParseError("rational with zero denominator: %r" % text)
    return Q(num, den)


def format_rational(q):
    """Render a rational canonically as 'p/q' (always with a denominator)."""
    q = Q(q)
    return "%d/%d" % (q.numerator, q.denominator)


def approx_decimal(q, digits=12):
    """A decimal rendering with `digits` significant digits, for display only."""
    q = Fraction(int(Q(q).numerator), int(Q(q).denominator))
    if q == 0:
        return "0"
    return format(float(q), ".%dg" % digits)


def is_probability(q):
    return 0 <= q <= 1
