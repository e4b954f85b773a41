"""The Lie algebras W(eps) with basis L[i,m] (i in Z, m >= 0).

Bracket on basis elements::

    [L[i,m], L[j,n]] = (j - i) L[i+j, m+n] + eps (m - n) L[i+j, m+n-eps]

Coefficients are plain rationals; the module parameters never enter here.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Union

from .algebra import Rat, as_rat

__all__ = [
    "Epsilon",
    "LieElt",
    "L",
    "bracket",
    "basis_bracket",
    "Gen",
    "Bracket",
    "Combo",
    "generator_decomposition",
    "evaluate_tree",
]


class Epsilon(IntEnum):
    PLUS = 1
    MINUS = -1

    @classmethod
    def coerce(cls, value) -> "Epsilon":
        try:
            return cls(int(value))
        except (ValueError, TypeError):
            raise ValueError(f"epsilon must be 1 or -1, got {value!r}") from None


class LieElt:
    """Finite rational combination of basis symbols ``L[i,m]``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[tuple[int, int], Rat] | None = None):
        clean = {}
        for (i, m), c in (terms or {}).items():
            if m < 0:
                raise ValueError(f"second index must be nonnegative: L[{i},{m}]")
            c = as_rat(c)
            if c:
                clean[(i, m)] = c
        self._terms = clean

    @property
    def terms(self) -> dict[tuple[int, int], Rat]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __add__(self, other: "LieElt") -> "LieElt":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LieElt(out)

    def __neg__(self):
        return LieElt({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return LieElt({k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LieElt):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (i, m), c in self.items():
            coef = f"{c.numerator}/{c.denominator}" if isinstance(c, Fraction) else str(c)
            parts.append(f"L[{i},{m}]" if c == 1 else f"{coef}*L[{i},{m}]")
        return " + ".join(parts)

    __repr__ = __str__


def L(i: int, m: int) -> LieElt:
    return LieElt({(i, m): 1})


def basis_bracket(eps: int, i: int, m: int, j: int, n: int) -> dict[tuple[int, int], int]:
    """Structure constants of ``[L[i,m], L[j,n]]`` as a dict (zero terms dropped)."""
    out: dict[tuple[int, int], int] = {}
    if j != i:
        out[(i + j, m + n)] = j - i
    if m != n:
        # the coefficient is tested before the index is formed: at eps=1, m=n=0
        # the index m+n-1 = -1 would be meaningless
        idx = m + n - eps
        assert idx >= 0, f"negative second index in [L[{i},{m}], L[{j},{n}]]"
        key = (i + j, idx)
        out[key] = out.get(key, 0) + eps * (m - n)
        if not out[key]:
            del out[key]
    return out


def bracket(eps: int, x: LieElt, y: LieElt) -> LieElt:
    """Bilinear bracket of W(eps)."""
    eps = Epsilon.coerce(eps)
    acc: dict[tuple[int, int], Rat] = {}
    for (i, m), a in x._terms.items():
        for (j, n), b in y._terms.items():
            for key, c in basis_bracket(eps, i, m, j, n).items():
                acc[key] = acc.get(key, 0) + a * b * c
    return LieElt(acc)


# -- generator decomposition -------------------------------------------------

@dataclass(frozen=True)
class Gen:
    i: int
    m: int

    def __str__(self):
        return f"L[{self.i},{self.m}]"


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"

    def __str__(self):
        return f"[{self.left}, {self.right}]"


@dataclass(frozen=True)
class Combo:
    """Rational linear combination of subtrees."""

    parts: tuple[tuple[Rat, "Node"], ...]

    def __str__(self):
        out = []
        for c, node in self.parts:
            out.append(str(node) if c == 1 else f"({c})*{node}")
        return "(" + " + ".join(out) + ")"


Node = Union[Gen, Bracket, Combo]


def evaluate_tree(eps: int, node: Node) -> LieElt:
    if isinstance(node, Gen):
        return L(node.i, node.m)
    if isinstance(node, Bracket):
        return bracket(eps, evaluate_tree(eps, node.left), evaluate_tree(eps, node.right))
    acc = LieElt()
    for c, sub in node.parts:
        acc = acc + evaluate_tree(eps, sub) * c
    return acc


def generator_decomposition(eps: int, i: int, m: int) -> Node:
    """Express ``L[i,m]`` through brackets of the generators ``L[j,0]``, ``L[j,1]``.

    Routes (fixed, so the output is deterministic):

    * eps = 1, i != 0:  L[i,m+1] = ([L[0,1], L[i,m]] - (1-m) L[i,m]) / i
    * eps = 1, i == 0:  L[0,m]   = ([L[-1,0], L[1,m]] + m L[0,m-1]) / 2
    * eps = -1, m == 2: L[i,2]   = i L[i,1] - [L[0,1], L[i,0]]
    * eps = -1, m >= 3: L[i,m]   = ([L[0,0], L[i,m-1]] - i L[i,m-1]) / (m-1)
    """
    eps = Epsilon.coerce(eps)
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m <= 1:
        return Gen(i, m)
    if eps == Epsilon.PLUS:
        if i != 0:
            prev = generator_decomposition(eps, i, m - 1)
            parts = [(Fraction(1, i), Bracket(Gen(0, 1), prev))]
            c = -(1 - (m - 1))
            if c:
                parts.append((Fraction(c, i), prev))
            return Combo(tuple((as_rat(a), b) for a, b in parts))
        return Combo(
            (
                (Fraction(1, 2), Bracket(Gen(-1, 0), generator_decomposition(eps, 1, m))),
                (Fraction(m, 2), generator_decomposition(eps, 0, m - 1)),
            )
        )
    if m == 2:
        parts = [(-1, Bracket(Gen(0, 1), Gen(i, 0)))]
        if i:
            parts.insert(0, (i, Gen(i, 1)))
        return Combo(tuple(parts))
    prev = generator_decomposition(eps, i, m - 1)
    parts = [(as_rat(Fraction(1, m - 1)), Bracket(Gen(0, 0), prev))]
    if i:
        parts.append((as_rat(Fraction(-i, m - 1)), prev))
    return Combo(tuple(parts))
