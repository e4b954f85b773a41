"""Rank-one free modules over W(eps) and over the centerless Virasoro algebra.

All actions are defined on monomials ``t^k`` and extended linearly; monomial
results are memoized per parameter set.  Parameters may be symbolic (the
variables ``l``, ``a``, ``b``), numeric, or mixed (e.g. alpha fixed to 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Protocol

from .algebra import (
    ALPHA,
    BETA,
    LAM,
    ONE,
    T,
    CoefPoly,
    Rat,
    TPoly,
    as_rat,
    binom,
    format_poly,
    parse_tpoly,
    poly_derivative,
    poly_shift,
    shifted_power,
)
from .lie import Epsilon, LieElt
from .report import VerificationReport

__all__ = [
    "ModuleParams",
    "ActionOracle",
    "act_vir",
    "act_w1",
    "act_wm1",
    "act_wm1_deriv",
    "act",
    "act_elt",
    "family_oracle",
    "expansion_rhs",
    "shift_map",
    "check_shift_iso",
    "closed_form_on_one",
    "extract_params",
    "ActionRecord",
    "action_table",
    "format_action_table",
    "parse_action_table",
    "table_oracle",
]


@dataclass(frozen=True)
class ModuleParams:
    """eps together with lambda, alpha, beta as coefficient polynomials.

    ``lam`` is either the symbol ``l`` or a nonzero constant.
    """

    epsilon: Epsilon
    lam: CoefPoly = LAM
    alpha: CoefPoly = ALPHA
    beta: CoefPoly = BETA

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Epsilon.coerce(self.epsilon))
        for name in ("lam", "alpha", "beta"):
            v = getattr(self, name)
            if not isinstance(v, CoefPoly):
                object.__setattr__(self, name, CoefPoly.const(v))
        if self.lam != LAM:
            if not self.lam.is_constant() or self.lam.constant_value() == 0:
                raise ValueError("lambda must be the symbol l or a nonzero rational")

    @classmethod
    def symbolic(cls, epsilon, *, lam=None, alpha=None, beta=None) -> "ModuleParams":
        """Fully symbolic parameters; any of them may be pinned to a rational."""
        return cls(
            epsilon,
            LAM if lam is None else CoefPoly.const(lam),
            ALPHA if alpha is None else CoefPoly.const(alpha),
            BETA if beta is None else CoefPoly.const(beta),
        )

    @classmethod
    def numeric(cls, epsilon, lam, alpha, beta) -> "ModuleParams":
        lam = as_rat(lam)
        if lam == 0:
            raise ValueError("lambda must be nonzero")
        return cls(epsilon, CoefPoly.const(lam), CoefPoly.const(alpha), CoefPoly.const(beta))

    @property
    def is_numeric(self) -> bool:
        return all(p.is_constant() for p in (self.lam, self.alpha, self.beta))

    def values(self) -> tuple[Rat, Rat, Rat]:
        if not self.is_numeric:
            raise ValueError("parameters are symbolic")
        return self.lam.constant_value(), self.alpha.constant_value(), self.beta.constant_value()

    def lam_power(self, i: int) -> CoefPoly:
        if self.lam == LAM:
            return CoefPoly.monomial(1, l=i)
        return CoefPoly.const(Fraction(self.lam.constant_value()) ** i)


class ActionOracle(Protocol):
    """Anything mapping ``(i, m, f)`` to ``L[i,m] . f``."""

    def __call__(self, i: int, m: int, f: TPoly) -> TPoly: ...


def _linear(mono: Callable[[int], TPoly], f) -> TPoly:
    if not isinstance(f, TPoly):
        f = TPoly.lift(f)
    out = TPoly()
    for k, c in f.coeffs().items():
        out = out + c * mono(k)
    return TPoly(out._terms)


@lru_cache(maxsize=None)
def _vir_mono(params: ModuleParams, i: int, k: int) -> TPoly:
    return params.lam_power(i) * (T - i * params.alpha) * shifted_power(i, k)


def act_vir(i: int, f, params: ModuleParams) -> TPoly:
    """Virasoro action ``L_i . t^k = l^i (t - i a)(t - i)^k``."""
    return _linear(lambda k: _vir_mono(params, i, k), f)


def _w1_bracket_factor(params: ModuleParams, i: int, e: int) -> TPoly:
    # b^(e-1) (e a - i a b + b t), expanded so no negative power of b appears;
    # the e*a*b^(e-1) term is absent when e == 0
    a, b = params.alpha, params.beta
    be = b**e
    out = be * T - i * (a * be)
    if e:
        out = out + e * (a * b ** (e - 1))
    return TPoly.lift(out)


@lru_cache(maxsize=None)
def _w1_mono(params: ModuleParams, i: int, m: int, k: int) -> TPoly:
    acc = TPoly()
    for s in range(min(m, k) + 1):
        c = math.factorial(s) * binom(m, s) * binom(k, s)
        acc = acc + c * (_w1_bracket_factor(params, i, m - s) * shifted_power(i, k - s))
    return TPoly((params.lam_power(i) * acc)._terms)


def act_w1(i: int, m: int, f, params: ModuleParams) -> TPoly:
    """Action of ``L[i,m]`` on Omega_{W(1)}(lambda, alpha, beta)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _linear(lambda k: _w1_mono(params, i, m, k), f)


@lru_cache(maxsize=None)
def _wm1_mono(params: ModuleParams, i: int, m: int, k: int) -> TPoly:
    a, b = params.alpha, params.beta
    acc = TPoly()
    for s in range(k + 1):
        c = (-1) ** s * math.factorial(s) * binom(m + s - 1, s) * binom(k, s)
        if not c:
            continue
        bp = b ** (m + s)
        lin = TPoly.lift(bp) * T - TPoly.lift(i * (a * bp) + (m + s) * (a * bp * b))
        acc = acc + c * (lin * shifted_power(i, k - s))
    return TPoly((params.lam_power(i) * acc)._terms)


def act_wm1(i: int, m: int, f, params: ModuleParams) -> TPoly:
    """Action of ``L[i,m]`` on Omega_{W(-1)}(lambda, alpha, beta), monomial form."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _linear(lambda k: _wm1_mono(params, i, m, k), f)


def act_wm1_deriv(i: int, m: int, f, params: ModuleParams) -> TPoly:
    """Same action computed through derivatives of ``f`` evaluated at ``t - i``.

    Sum over s of (-1)^s C(m+s-1, s) l^i b^(m+s) (t - i a - (m+s) a b) f^(s)(t - i).
    Independent of :func:`act_wm1`; used to cross-check it.
    """
    if not isinstance(f, TPoly):
        f = TPoly.lift(f)
    if f.is_zero():
        return TPoly()
    a, b = params.alpha, params.beta
    out = TPoly()
    for s in range(int(f.degree) + 1):
        c = (-1) ** s * binom(m + s - 1, s)
        if not c:
            continue
        bp = b ** (m + s)
        lin = T * TPoly.lift(bp) - TPoly.lift(i * a * bp + (m + s) * a * bp * b)
        out = out + c * (lin * poly_shift(poly_derivative(f, s), i))
    return TPoly((params.lam_power(i) * out)._terms)


def act(params: ModuleParams, i: int, m: int, f) -> TPoly:
    """``L[i,m] . f`` in the Omega family selected by ``params.epsilon``."""
    if params.epsilon == Epsilon.PLUS:
        return act_w1(i, m, f, params)
    return act_wm1(i, m, f, params)


def act_elt(params: ModuleParams, x: LieElt, f) -> TPoly:
    out = TPoly()
    for (i, m), c in x.items():
        out = out + c * act(params, i, m, f)
    return TPoly(out._terms)


def family_oracle(params: ModuleParams) -> ActionOracle:
    return lambda i, m, f: act(params, i, m, f)


def expansion_rhs(eps, i: int, m: int, k: int, oracle: ActionOracle) -> TPoly:
    """Rewrite ``L[i,m] . t^k`` through the values ``L[i,*] . 1``.

    eps = 1:  sum_{s<=min(m,k)} s! C(m,s) C(k,s) (t-i)^(k-s) L[i,m-s].1
    eps = -1: sum_{s<=k} (-1)^s s! C(m+s-1,s) C(k,s) (t-i)^(k-s) L[i,m+s].1
    """
    eps = Epsilon.coerce(eps)
    if m < 0 or k < 0:
        raise ValueError("m and k must be nonnegative")
    out = TPoly()
    if eps == Epsilon.PLUS:
        for s in range(min(m, k) + 1):
            c = math.factorial(s) * binom(m, s) * binom(k, s)
            out = out + c * (shifted_power(i, k - s) * oracle(i, m - s, ONE))
    else:
        for s in range(k + 1):
            c = (-1) ** s * math.factorial(s) * binom(m + s - 1, s) * binom(k, s)
            if c:
                out = out + c * (shifted_power(i, k - s) * oracle(i, m + s, ONE))
    return TPoly(out._terms)


def shift_map(f) -> TPoly:
    """``t^k -> t^(k+1)``: identifies Omega(l, 1, b) with t*Omega(l, 0, b)."""
    if not isinstance(f, TPoly):
        f = TPoly.lift(f)
    return T * f


def check_shift_iso(eps, i_max: int, m_max: int, k_max: int) -> VerificationReport:
    """Equivariance of :func:`shift_map` from Omega(l, 1, b) onto t*Omega(l, 0, b).

    For every grid point, ``L[i,m] . (t * t^k)`` computed at alpha = 0 must equal
    ``t * (L[i,m] . t^k)`` computed at alpha = 1, with l and b symbolic.
    """
    eps = Epsilon.coerce(eps)
    at0 = ModuleParams.symbolic(eps, alpha=0)
    at1 = ModuleParams.symbolic(eps, alpha=1)
    rep = VerificationReport(f"shift-iso eps={int(eps)}")
    for i in range(-i_max, i_max + 1):
        for m in range(m_max + 1):
            for k in range(k_max + 1):
                mono = TPoly.monomial(1, t=k)
                diff = act(at0, i, m, shift_map(mono)) - shift_map(act(at1, i, m, mono))
                rep.add("shift-iso", eps, (("i", i), ("m", m), ("k", k)), diff)
    return rep


def closed_form_on_one(params: ModuleParams, i: int, m: int) -> TPoly:
    """Claimed value of ``L[i,m] . 1`` in the family.

    eps = 1:  l^i (m a b^(m-1) - i a b^m + b^m t), first term absent at m = 0
    eps = -1: l^i b^m (t - i a - m a b)
    """
    a, b = params.alpha, params.beta
    lam_i = params.lam_power(i)
    if params.epsilon == Epsilon.PLUS:
        val = TPoly.lift(b**m) * T - TPoly.lift(i * a * b**m)
        if m:
            val = val + m * a * b ** (m - 1)
    else:
        val = TPoly.lift(b**m) * (T - TPoly.lift(i * a + m * a * b))
    return TPoly((lam_i * val)._terms)


def _numeric_coeffs(p: TPoly, what: str) -> dict[int, Rat]:
    out = {}
    for k, c in p.coeffs().items():
        if not c.is_constant():
            raise ValueError(f"{what} has non-numeric coefficients: {p}")
        out[k] = c.constant_value()
    return out


def extract_params(oracle: ActionOracle, eps, check_window: tuple[int, int, int] = (2, 2, 3)) -> tuple[Rat, Rat, Rat]:
    """Recover (lambda, alpha, beta) from a numeric action in the Omega family.

    ``L[1,0] . 1 = lambda (t - alpha)`` gives lambda and alpha; the t-coefficient
    of ``L[0,1] . 1`` gives beta for both signs of eps.  The recovered triple is
    then replayed against the oracle on ``check_window`` = (iMax, mMax, kMax).
    """
    eps = Epsilon.coerce(eps)
    v = _numeric_coeffs(oracle(1, 0, ONE), "L[1,0].1")
    if not v or max(v) != 1 or set(v) - {0, 1}:
        raise ValueError(f"L[1,0].1 must have degree 1; got {format_poly(oracle(1, 0, ONE))}")
    lam = v[1]
    if lam == 0:
        raise ValueError("L[1,0].1 has zero leading coefficient")
    alpha = as_rat(-Fraction(v.get(0, 0)) / lam)
    w = _numeric_coeffs(oracle(0, 1, ONE), "L[0,1].1")
    if set(w) - {0, 1}:
        raise ValueError(f"L[0,1].1 must have degree <= 1; got {format_poly(oracle(0, 1, ONE))}")
    beta = w.get(1, 0)
    regen = ModuleParams.numeric(eps, lam, alpha, beta)
    imax, mmax, kmax = check_window
    for i in range(-imax, imax + 1):
        for m in range(mmax + 1):
            for k in range(kmax + 1):
                mono = TPoly.monomial(1, t=k)
                if oracle(i, m, mono) != act(regen, i, m, mono):
                    raise ValueError(
                        f"oracle leaves the Omega family at L[{i},{m}] . t^{k} "
                        f"(recovered lambda={lam}, alpha={alpha}, beta={beta})"
                    )
    return lam, alpha, beta


# -- action tables -----------------------------------------------------------

@dataclass(frozen=True)
class ActionRecord:
    epsilon: int
    i: int
    m: int
    k: int
    result: TPoly


def action_table(params: ModuleParams, i_max: int, m_max: int, k_max: int) -> list[ActionRecord]:
    """Values ``L[i,m] . t^k`` over the window, in grid order (i, m, k)."""
    rows = []
    for i in range(-i_max, i_max + 1):
        for m in range(m_max + 1):
            for k in range(k_max + 1):
                rows.append(ActionRecord(int(params.epsilon), i, m, k, act(params, i, m, TPoly.monomial(1, t=k))))
    return rows


_TABLE_HEADER = "epsilon\ti\tm\tk\tresult"


def format_action_table(records: Iterable[ActionRecord]) -> str:
    lines = [_TABLE_HEADER]
    for r in records:
        lines.append(f"{r.epsilon}\t{r.i}\t{r.m}\t{r.k}\t{format_poly(r.result)}")
    return "\n".join(lines) + "\n"


def parse_action_table(text: str) -> list[ActionRecord]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != _TABLE_HEADER:
        raise ValueError("action table must start with the header line")
    out = []
    for ln in lines[1:]:
        fields = ln.split("\t")
        if len(fields) != 5:
            raise ValueError(f"bad action table row: {ln!r}")
        eps, i, m, k = (int(x) for x in fields[:4])
        out.append(ActionRecord(int(Epsilon.coerce(eps)), i, m, k, parse_tpoly(fields[4])))
    return out


def table_oracle(records: Iterable[ActionRecord]) -> ActionOracle:
    """Oracle backed by a finite table of monomial values; missing entries raise KeyError."""
    table = {(r.i, r.m, r.k): r.result for r in records}

    def oracle(i: int, m: int, f) -> TPoly:
        return _linear(lambda k: table[(i, m, k)], f)

    return oracle
