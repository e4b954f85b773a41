from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from wvir.linalg import (
    RatFunc,
    rational_roots,
    rref,
    split_linear_factors,
    upoly,
    upoly_eval,
    upoly_primitive,
    upoly_str,
)
from wvir.mpoly import MPoly

x = sp.Symbol("alpha")
small = st.lists(st.integers(-6, 6), min_size=0, max_size=4)


def to_sp(p):
    return sum(sp.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p))


def test_upoly_normalizes():
    assert upoly([1, 2, 0, 0]) == (1, 2)
    assert upoly([0]) == ()
    assert upoly_primitive(upoly([Fraction(1, 2), -1])) == (-1, 2)


def test_upoly_str():
    assert upoly_str(upoly([1, 2])) == "2*alpha + 1"
    assert upoly_str(upoly([0, -1, 8])) == "8*alpha^2 - alpha"
    assert upoly_str(()) == "0"


def test_rational_roots_and_split():
    p = upoly([-1, 0, 0, 2, 0])  # 2a^3 - 1: no rational roots
    assert rational_roots(p) == []
    q = upoly([0, -1, 1, 2])  # a(2a - 1)(a + 1)
    assert rational_roots(q) == [-1, 0, Fraction(1, 2)]
    factors, rest = split_linear_factors(upoly([1, 2, 1]))
    assert factors == [(1, 1), (1, 1)] and rest == (1,)


@settings(max_examples=60, deadline=None)
@given(small, small.filter(lambda c: any(c)), small, small.filter(lambda c: any(c)))
def test_ratfunc_field_ops_match_sympy(n1, d1, n2, d2):
    p, q = RatFunc(upoly(n1), upoly(d1)), RatFunc(upoly(n2), upoly(d2))
    sp_p = to_sp(upoly(n1)) / to_sp(upoly(d1))
    sp_q = to_sp(upoly(n2)) / to_sp(upoly(d2))

    def same(r, e):
        return sp.simplify(to_sp(r.num) / to_sp(r.den) - e) == 0

    assert same(p + q, sp_p + sp_q)
    assert same(p * q, sp_p * sp_q)
    assert same(p - q, sp_p - sp_q)
    if q:
        assert same(p / q, sp_p / sp_q)


def test_ratfunc_is_reduced():
    r = RatFunc(upoly([-1, 0, 1]), upoly([2, 2]))  # (a^2 - 1)/(2a + 2)
    assert r.num == (Fraction(-1, 2), Fraction(1, 2)) and r.den == (1,)
    with pytest.raises(ZeroDivisionError):
        RatFunc(upoly([1]), ())
    with pytest.raises(ZeroDivisionError):
        RatFunc(upoly([0, 1]), upoly([1, 1])).at(-1)


def test_rref_records_conditions():
    a = RatFunc(upoly([0, 1]))
    one = RatFunc.const(1)
    red = rref([[a + 1, one], [one, one]])
    assert red.pivots == [0, 1]
    assert (1, 1) in red.conditions
    assert red.rows[0][0] == 1 and red.rows[1][1] == 1


def test_rref_rank_deficient():
    two = RatFunc.const(2)
    one = RatFunc.const(1)
    red = rref([[one, two], [two, RatFunc.const(4)]])
    assert red.pivots == [0]
    assert upoly_eval((1, 2), 3) == 7


# -- multivariate polynomials ------------------------------------------------------------

G = ("x", "y", "z")


def test_mpoly_arithmetic():
    X, Y = MPoly.var(G, "x"), MPoly.var(G, "y")
    p = (X + Y) ** 2
    assert p == X * X + 2 * X * Y + Y * Y
    assert p.degree("x") == 2 and p.total_degree(["x", "y"]) == 2
    assert p.coeff("x", 1) == 2 * Y
    assert p.coeff_monomial({"x": 0, "y": 2}) == 1
    assert (p - p).is_zero() and not (p - p)
    assert p.variables() == {"x", "y"}
    assert (p / 2).coeff("x", 2) == Fraction(1, 2)


def test_mpoly_divide_and_subs():
    X, Y, Z = (MPoly.var(G, g) for g in G)
    p = X * Y * (Z + 3)
    assert p.divide_monomial({"x": 1, "y": 1}) == Z + 3
    with pytest.raises(ValueError):
        p.divide_monomial({"z": 1})
    assert p.subs({"z": 0}) == 3 * X * Y
    assert p.subs({"x": Y + 1}) == (Y + 1) * Y * (Z + 3)
    with pytest.raises(ValueError):
        X + MPoly.var(("x",), "x")


def test_mpoly_str():
    X, Y = MPoly.var(G, "x"), MPoly.var(G, "y")
    assert str(X * X - Y + Fraction(1, 2)) == "x^2 - y + 1/2"
    assert str(MPoly(G)) == "0"
