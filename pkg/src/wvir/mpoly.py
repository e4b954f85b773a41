"""Small sparse multivariate polynomials over Q with named generators.

Used by the classification probe, where the index variables i, j, the
parameter alpha and the ansatz unknowns all appear as polynomial variables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import Rat, as_rat

__all__ = ["MPoly"]


class MPoly:
    __slots__ = ("gens", "terms")

    def __init__(self, gens: tuple[str, ...], terms: Mapping[tuple[int, ...], Rat] | None = None):
        self.gens = tuple(gens)
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                clean[tuple(e)] = as_rat(c)
        self.terms = clean

    @classmethod
    def var(cls, gens, name: str) -> "MPoly":
        gens = tuple(gens)
        e = [0] * len(gens)
        e[gens.index(name)] = 1
        return cls(gens, {tuple(e): 1})

    @classmethod
    def const(cls, gens, c) -> "MPoly":
        gens = tuple(gens)
        return cls(gens, {(0,) * len(gens): c})

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.gens != self.gens:
                raise ValueError("generator mismatch")
            return other
        return MPoly.const(self.gens, other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.gens, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out: dict[tuple[int, ...], Rat] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.gens, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = Fraction(as_rat(c))
        return MPoly(self.gens, {e: v / c for e, v in self.terms.items()})

    def __pow__(self, n: int):
        out = MPoly.const(self.gens, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.gens, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure -----------------------------------------------------------
    def degree(self, name: str) -> int:
        k = self.gens.index(name)
        return max((e[k] for e in self.terms), default=-1)

    def total_degree(self, names: Iterable[str]) -> int:
        idx = [self.gens.index(n) for n in names]
        return max((sum(e[k] for k in idx) for e in self.terms), default=-1)

    def coeff(self, name: str, power: int) -> "MPoly":
        """Coefficient of ``name**power``, as a polynomial free of ``name``."""
        k = self.gens.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[k] == power:
                out[e[:k] + (0,) + e[k + 1:]] = c
        return MPoly(self.gens, out)

    def coeff_monomial(self, powers: Mapping[str, int]) -> "MPoly":
        """Coefficient of the monomial in the named variables (others left free)."""
        out = self
        for name, p in powers.items():
            out = out.coeff(name, p)
        return out

    def divide_monomial(self, powers: Mapping[str, int]) -> "MPoly":
        """Exact division by a monomial; raises ValueError if it does not divide."""
        shift = [0] * len(self.gens)
        for name, p in powers.items():
            shift[self.gens.index(name)] = p
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a - b for a, b in zip(e, shift))
            if min(ne) < 0:
                raise ValueError(f"monomial {dict(powers)} does not divide the polynomial")
            out[ne] = c
        return MPoly(self.gens, out)

    def variables(self) -> set[str]:
        return {g for k, g in enumerate(self.gens) if any(e[k] for e in self.terms)}

    def subs(self, values: Mapping[str, object]) -> "MPoly":
        """Substitute rationals or MPolys (same generators) for variables."""
        idx = {self.gens.index(n): v for n, v in values.items()}
        out = MPoly(self.gens)
        pow_cache: dict[tuple[int, int], object] = {}
        for e, c in self.terms.items():
            rest = list(e)
            factor: object = c
            for k, v in idx.items():
                if e[k]:
                    key = (k, e[k])
                    if key not in pow_cache:
                        pow_cache[key] = v ** e[k]
                    factor = factor * pow_cache[key]
                rest[k] = 0
            out = out + MPoly(self.gens, {tuple(rest): 1}) * factor
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = [g if p == 1 else f"{g}^{p}" for g, p in zip(self.gens, e) if p]
            coef = f"{c.numerator}/{c.denominator}" if isinstance(c, Fraction) else str(c)
            if factors and c == 1:
                parts.append("*".join(factors))
            elif factors and c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([coef] + factors))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__
