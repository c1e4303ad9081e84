import pytest

from postpfa.errors import ParseError
from postpfa.ratio import (Q, approx_decimal, format_rational, is_probability,
                           parse_rational)


def test_basic_arithmetic_is_exact():
    assert Q(1, 3) + Q(1, 6) == Q(1, 2)
    assert Q(2, 4) == Q(1, 2)
    assert Q(1, 3) * 3 == 1


def test_parse_and_format_round_trip():
    for text in ("1/2", "0", "4/5", "257/131072"):
        assert format_rational(parse_rational(text)) in (text, text + "/1")
    assert parse_rational("3/6") == Q(1, 2)


def test_parse_rejects_garbage():
    for bad in ("", "a/b", "1/0", "2/0", "1//2", "1.5"):
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_approx_decimal_is_display_only():
    assert approx_decimal(Q(1, 3)).startswith("0.3333333333")
    assert approx_decimal(Q(0)) == "0"


def test_is_probability():
    assert is_probability(Q(1, 2))
    assert is_probability(0) and is_probability(1)
    assert not is_probability(Q(3, 2))
    assert not is_probability(Q(-1, 2))
