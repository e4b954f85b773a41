"""Exact linear algebra over the field Q(alpha) of rational functions.

Univariate polynomials are tuples of Fractions, lowest degree first, with no
trailing zeros (the zero polynomial is ``()``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

__all__ = [
    "upoly",
    "upoly_str",
    "upoly_eval",
    "upoly_primitive",
    "rational_roots",
    "split_linear_factors",
    "RatFunc",
    "rref",
]

UPoly = tuple


def upoly(coeffs: Sequence) -> UPoly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _add(p, q):
    n = max(len(p), len(q))
    return upoly([(p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n)])


def _neg(p):
    return tuple(-x for x in p)


def _mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if x:
            for b, y in enumerate(q):
                out[a + b] += x * y
    return upoly(out)


def _divmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q) and r:
        c = r[-1] / lead
        shift = len(r) - len(q)
        quo[shift] = c
        for k, y in enumerate(q):
            r[shift + k] -= c * y
        r = list(upoly(r))
    return upoly(quo), upoly(r)


def _monic(p):
    return tuple(x / p[-1] for x in p) if p else ()


def _gcd(p, q):
    while q:
        p, q = q, _divmod(p, q)[1]
    return _monic(p)


def upoly_eval(p: UPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def upoly_primitive(p: UPoly) -> UPoly:
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if not p:
        return ()
    den = math.lcm(*(x.denominator for x in p))
    ints = [int(x * den) for x in p]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def upoly_str(p: UPoly, var: str = "alpha") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        mag = abs(c)
        coef = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if k == 0:
            body = coef
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{coef}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(p: UPoly) -> list[Fraction]:
    """All rational roots of ``p`` (rational root test), ascending."""
    p = upoly_primitive(p)
    if len(p) <= 1:
        return []
    roots = set()
    if p[0] == 0:
        roots.add(Fraction(0))
        k = next(i for i, x in enumerate(p) if x)
        p = p[k:]
    if len(p) > 1:
        for a in _divisors(int(p[0])):
            for b in _divisors(int(p[-1])):
                for cand in (Fraction(a, b), Fraction(-a, b)):
                    if upoly_eval(p, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def split_linear_factors(p: UPoly) -> tuple[list[UPoly], UPoly]:
    """Factor out linear factors over Q (with multiplicity); return (factors, remainder)."""
    p = upoly_primitive(p)
    factors = []
    for r in rational_roots(p):
        lin = upoly_primitive(upoly([-r, 1]))
        while len(p) > 1 and upoly_eval(p, r) == 0:
            p, rem = _divmod(p, lin)
            assert not rem
            factors.append(lin)
        p = upoly_primitive(p)
    return factors, p


class RatFunc:
    """Element of Q(alpha): ``num/den`` with ``den`` monic and coprime to ``num``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)):
        num, den = upoly(num), upoly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (Fraction(1),)
            return
        if len(den) > 1:
            g = _gcd(num, den)
            if len(g) > 1:
                num, den = _divmod(num, g)[0], _divmod(den, g)[0]
        lead = den[-1]
        self.num = tuple(x / lead for x in num)
        self.den = tuple(x / lead for x in den)

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls((Fraction(c),))

    @classmethod
    def poly(cls, p) -> "RatFunc":
        return cls(p)

    def is_zero(self) -> bool:
        return not self.num

    def is_const(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.num[0] if self.num else Fraction(0)

    def __add__(self, o):
        o = _rf(o)
        return RatFunc(_add(_mul(self.num, o.den), _mul(o.num, self.den)), _mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_neg(self.num), self.den)

    def __sub__(self, o):
        return self + (-_rf(o))

    def __mul__(self, o):
        o = _rf(o)
        return RatFunc(_mul(self.num, o.num), _mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _rf(o)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(_mul(self.num, o.den), _mul(self.den, o.num))

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = RatFunc.const(o)
        if not isinstance(o, RatFunc):
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def at(self, x) -> Fraction:
        d = upoly_eval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"pole at alpha = {x}")
        return upoly_eval(self.num, x) / d

    def __str__(self):
        if len(self.den) == 1:
            return upoly_str(self.num)
        return f"({upoly_str(self.num)})/({upoly_str(self.den)})"

    __repr__ = __str__


def _rf(x) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc.const(x)


@dataclass
class RREF:
    rows: list[list[RatFunc]]
    pivots: list[int]
    # numerators divided by while pivoting; the result is valid where none vanishes
    conditions: list[UPoly]


def rref(matrix: Sequence[Sequence[RatFunc]], ncols: Optional[int] = None) -> RREF:
    """Reduced row echelon form; pivot search is restricted to the first ``ncols`` columns."""
    rows = [[_rf(x) for x in row] for row in matrix]
    width = len(rows[0]) if rows else 0
    ncols = width if ncols is None else ncols
    pivots: list[int] = []
    conditions: list[UPoly] = []
    r = 0
    for col in range(ncols):
        pr = next((k for k in range(r, len(rows)) if not rows[k][col].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][col]
        if len(piv.num) > 1:
            conditions.append(upoly_primitive(piv.num))
        rows[r] = [x / piv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and not rows[k][col].is_zero():
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return RREF(rows, pivots, conditions)
