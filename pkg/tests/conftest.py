"""Independent sympy oracle for the module actions.

These formulas are typed in directly from the definitions, without going
through the package's expansion code, so agreement is a real cross-check.
"""

from __future__ import annotations

import math

import pytest
import sympy as sp

t, l, a, b = sp.symbols("t l a b")


def to_sympy(p):
    """TPoly / CoefPoly -> sympy expression in t, l, a, b."""
    out = sp.Integer(0)
    for (et, el, ea, eb), c in p.exponent_items():
        out += sp.Rational(c.numerator, c.denominator) * t**et * l**el * a**ea * b**eb
    return sp.expand(out)


def sbinom(n, k):
    if k < 0:
        return sp.Integer(0)
    num = sp.Integer(1)
    for q in range(k):
        num *= n - q
    return num / math.factorial(k)


def vir_mono(i, k, lam=l, al=a):
    return sp.expand(lam**i * (t - i * al) * (t - i) ** k)


def w1_mono(i, m, k, lam=l, al=a, be=b):
    total = sp.Integer(0)
    for s in range(min(m, k) + 1):
        e = m - s
        if e == 0:
            factor = t - i * al
        else:
            factor = be ** (e - 1) * (e * al - i * al * be + be * t)
        total += math.factorial(s) * sbinom(m, s) * sbinom(k, s) * lam**i * factor * (t - i) ** (k - s)
    return sp.expand(total)


def wm1_mono(i, m, k, lam=l, al=a, be=b):
    total = sp.Integer(0)
    for s in range(k + 1):
        total += (
            (-1) ** s * math.factorial(s) * sbinom(m + s - 1, s) * sbinom(k, s)
            * lam**i * be ** (m + s) * (t - i * al - (m + s) * al * be) * (t - i) ** (k - s)
        )
    return sp.expand(total)


def oracle_act(eps, i, m, f, **params):
    """Apply L[i,m] (eps = 1 or -1) to a sympy polynomial in t."""
    mono = w1_mono if eps == 1 else wm1_mono
    poly = sp.Poly(sp.expand(f), t)
    return sp.expand(sum(c * mono(i, m, e[0], **params) for e, c in poly.terms()))


@pytest.fixture(scope="session")
def sym():
    return {"t": t, "l": l, "a": a, "b": b}


# -- acceptance reporting ---------------------------------------------------------

_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance_lines(request):
    return request.config.stash.setdefault(_ACCEPTANCE, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
