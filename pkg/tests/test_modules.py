import itertools
from fractions import Fraction

import pytest
import sympy as sp

from conftest import a, b, l, oracle_act, t, to_sympy, vir_mono
from wvir.algebra import ONE, T, TPoly, parse_tpoly
from wvir.modules import (
    ModuleParams,
    act,
    act_vir,
    act_w1,
    act_wm1,
    act_wm1_deriv,
    action_table,
    check_shift_iso,
    closed_form_on_one,
    expansion_rhs,
    extract_params,
    family_oracle,
    format_action_table,
    parse_action_table,
    shift_map,
    table_oracle,
)

P1 = ModuleParams.symbolic(1)
M1 = ModuleParams.symbolic(-1)


def tk(k):
    return TPoly.monomial(1, t=k)


# -- parameters ------------------------------------------------------------------

def test_params_reject_zero_lambda():
    with pytest.raises(ValueError):
        ModuleParams.numeric(1, 0, 1, 1)
    with pytest.raises(ValueError):
        ModuleParams.symbolic(-1, lam=0)


def test_params_values():
    p = ModuleParams.numeric(-1, Fraction(1, 2), 3, 0)
    assert p.is_numeric and p.values() == (Fraction(1, 2), 3, 0)
    with pytest.raises(ValueError):
        P1.values()


# -- against the sympy oracle ----------------------------------------------------

@pytest.mark.parametrize("eps,params", [(1, P1), (-1, M1)])
def test_family_action_matches_oracle(eps, params):
    for i, m, k in itertools.product(range(-2, 3), range(4), range(4)):
        assert to_sympy(act(params, i, m, tk(k))) == oracle_act(eps, i, m, t**k), (i, m, k)


def test_action_on_general_polynomial_matches_oracle():
    f = parse_tpoly("2*t^3 + -1/2*a*t^1 + b")
    expr = sp.expand(2 * t**3 - sp.Rational(1, 2) * a * t + b)
    for eps, params in ((1, P1), (-1, M1)):
        assert to_sympy(act(params, 2, 2, f)) == oracle_act(eps, 2, 2, expr)


def test_numeric_action_matches_oracle():
    params = ModuleParams.numeric(-1, 3, Fraction(1, 2), -2)
    got = to_sympy(act(params, -1, 2, tk(3)))
    want = oracle_act(-1, -1, 2, t**3, lam=sp.Integer(3), al=sp.Rational(1, 2), be=sp.Integer(-2))
    assert got == want


# -- worked examples ------------------------------------------------------------------

def test_act_vir_examples():
    assert act_vir(0, tk(3), P1) == tk(4)
    i = 2
    assert to_sympy(act_vir(i, ONE, P1)) == sp.expand(l**i * (t - i * a))
    assert to_sympy(act_vir(1, T, P1)) == sp.expand(l * (t**2 - (1 + a) * t + a))


def test_act_w1_examples():
    for i in range(-2, 3):
        assert to_sympy(act_w1(i, 1, ONE, P1)) == sp.expand(l**i * (a - i * a * b + b * t))
        want = l**i * b * (2 * a - i * a * b + b * t) * (t - i) + 2 * l**i * (a - i * a * b + b * t)
        assert to_sympy(act_w1(i, 2, T, P1)) == sp.expand(want)
    at_beta0 = ModuleParams.symbolic(1, beta=0)
    want = l * a * (t - 1) ** 2 + 2 * l * (t - a) * (t - 1)
    assert to_sympy(act_w1(1, 1, tk(2), at_beta0)) == sp.expand(want)


def test_act_wm1_examples():
    for i in range(-2, 3):
        assert to_sympy(act_wm1(i, 1, ONE, M1)) == sp.expand(l**i * b * (t - i * a - a * b))
    want = b * t**2 - (a * b**2 + b**2) * t + 2 * a * b**3
    assert to_sympy(act_wm1(0, 1, T, M1)) == sp.expand(want)
    assert to_sympy(act_wm1_deriv(0, 1, T, M1)) == sp.expand(want)


@pytest.mark.parametrize("fn,params", [(act_w1, P1), (act_wm1, M1)])
def test_m_zero_is_the_virasoro_action(fn, params):
    for i, k in itertools.product(range(-3, 4), range(5)):
        assert fn(i, 0, tk(k), params) == act_vir(i, tk(k), params)
        assert to_sympy(act_vir(i, tk(k), params)) == vir_mono(i, k)


def test_derivative_form_agrees():
    assert act_wm1_deriv(1, 2, tk(5), M1) == act_wm1(1, 2, tk(5), M1)
    for i in range(-2, 3):
        assert act_wm1_deriv(i, 3, ONE, M1) == act_wm1(i, 3, ONE, M1)
    assert act_wm1_deriv(1, 1, TPoly(), M1).is_zero()


def test_negative_m_rejected():
    with pytest.raises(ValueError):
        act_w1(0, -1, ONE, P1)
    with pytest.raises(ValueError):
        act_wm1(0, -1, ONE, M1)


# -- expansion through values on 1 --------------------------------------------------

def test_expansion_examples():
    oracle = family_oracle(P1)
    for i, m in itertools.product(range(-2, 3), range(1, 4)):
        want = (T - i) * oracle(i, m, ONE) + m * oracle(i, m - 1, ONE)
        assert expansion_rhs(1, i, m, 1, oracle) == want
        assert expansion_rhs(1, i, m, 0, oracle) == oracle(i, m, ONE)
    assert expansion_rhs(-1, 1, 1, 2, family_oracle(M1)) == act_wm1(1, 1, tk(2), M1)


# -- closed forms on 1 ----------------------------------------------------------------

def test_closed_forms_against_oracle():
    for i, m in itertools.product(range(-3, 4), range(5)):
        if m:
            want1 = l**i * (m * a * b ** (m - 1) - i * a * b**m + b**m * t)
        else:
            want1 = l**i * (t - i * a)
        assert to_sympy(closed_form_on_one(P1, i, m)) == sp.expand(want1)
        want2 = l**i * b**m * (t - i * a - m * a * b)
        assert to_sympy(closed_form_on_one(M1, i, m)) == sp.expand(want2)


# -- shift isomorphism ------------------------------------------------------------------

def test_shift_iso_w1_point():
    # both sides come out as b t^2 + t
    at0 = ModuleParams.symbolic(1, alpha=0)
    at1 = ModuleParams.symbolic(1, alpha=1)
    lhs = act(at0, 0, 1, shift_map(ONE))
    rhs = shift_map(act(at1, 0, 1, ONE))
    assert lhs == rhs
    assert to_sympy(lhs) == b * t**2 + t


def test_shift_iso_m_zero():
    k = 2
    for i in range(-2, 3):
        at0 = ModuleParams.symbolic(1, alpha=0)
        at1 = ModuleParams.symbolic(1, alpha=1)
        want = sp.expand(l**i * t * (t - i) ** (k + 1))
        assert to_sympy(act(at0, i, 0, shift_map(tk(k)))) == want
        assert to_sympy(shift_map(act(at1, i, 0, tk(k)))) == want


@pytest.mark.parametrize("eps", [1, -1])
def test_shift_iso_grid(eps):
    rep = check_shift_iso(eps, 3, 3, 4)
    assert len(rep) == 7 * 4 * 5 and rep.passed


# -- parameter extraction ----------------------------------------------------------------

@pytest.mark.parametrize(
    "eps,triple,l10,l01",
    [
        (1, (2, 3, 5), "2*t^1 + -6", "5*t^1 + 3"),
        (1, (1, 0, 0), "t^1", "0"),
        (-1, (3, 1, 2), "3*t^1 + -3", "2*t^1 + -4"),
    ],
)
def test_extract_params_examples(eps, triple, l10, l01):
    params = ModuleParams.numeric(eps, *triple)
    assert act(params, 1, 0, ONE) == parse_tpoly(l10)
    assert act(params, 0, 1, ONE) == parse_tpoly(l01)
    assert extract_params(family_oracle(params), eps) == triple


def test_extract_params_rejects_foreign_action():
    params = ModuleParams.numeric(1, 2, 3, 5)

    def skewed(i, m, f):
        out = act(params, i, m, f)
        return out + 1 if (i, m) == (2, 1) else out

    with pytest.raises(ValueError, match="leaves the Omega family"):
        extract_params(skewed, 1)
    with pytest.raises(ValueError):
        extract_params(lambda i, m, f: TPoly(), 1)


# -- action tables -------------------------------------------------------------------------

def test_action_table_round_trip():
    params = ModuleParams.numeric(-1, 2, Fraction(1, 3), -1)
    recs = action_table(params, 2, 2, 2)
    text = format_action_table(recs)
    assert text.splitlines()[0] == "epsilon\ti\tm\tk\tresult"
    assert parse_action_table(text) == recs
    oracle = table_oracle(parse_action_table(text))
    assert extract_params(oracle, -1, check_window=(2, 2, 2)) == (2, Fraction(1, 3), -1)
