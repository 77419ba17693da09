import random
from fractions import Fraction

import pytest

from dynkin_coha.polyblock import MPoly, u, w
from dynkin_coha.polytext import PolyParseError, parse_poly


def test_parse_simple_difference():
    assert parse_poly("w[1,1] - w[2,1]") == MPoly.var(w(1, 1)) - MPoly.var(w(2, 1))


def test_parse_precedence_and_parentheses():
    got = parse_poly("2*w[1,1]^2 + (w[1,1] - 1)*u[2,1]")
    expected = (
        2 * MPoly.var(w(1, 1), 2)
        + (MPoly.var(w(1, 1)) - MPoly.one()) * MPoly.var(u(2, 1))
    )
    assert got == expected


def test_parse_unary_minus():
    assert parse_poly("-w[1,1]") == -MPoly.var(w(1, 1))
    assert parse_poly("3 - -2") == MPoly.const(5)


def test_render_parse_round_trip():
    rng = random.Random(19)
    vs = [w(1, 1), w(1, 2), w(2, 1), u(3, 1)]
    for _ in range(30):
        poly = MPoly.zero()
        for _ in range(rng.randint(1, 5)):
            term = MPoly.const(Fraction(rng.randint(-3, 3)))
            for v in vs:
                term = term * MPoly.var(v, rng.randint(0, 2))
            poly = poly + term
        if not poly.has_integer_coefficients():
            continue
        assert parse_poly(str(poly)) == poly


@pytest.mark.parametrize(
    "text",
    ["w[1,1] +", "w[1]", "(w[1,1]", "w[1,1] w[2,1]", "^2", "w[1,1]^-1", "x[1,1]"],
)
def test_parse_errors_report_column(text):
    with pytest.raises(PolyParseError) as err:
        parse_poly(text)
    assert "column" in str(err.value)


def test_kind_restriction():
    with pytest.raises(PolyParseError):
        parse_poly("a[1,1]", allowed_kinds="w")
    parse_poly("a[1,1]", allowed_kinds="ab")
