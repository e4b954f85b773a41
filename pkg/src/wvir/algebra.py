"""Exact coefficient arithmetic.

Scalars are rationals (``int`` or :class:`fractions.Fraction`, normalized so
that integral values are plain ``int``).  Two polynomial types are provided:

* :class:`CoefPoly` -- elements of Q[l, 1/l, a, b], where ``l``, ``a``, ``b``
  stand for the module parameters lambda, alpha, beta;
* :class:`TPoly` -- polynomials in ``t`` with :class:`CoefPoly` coefficients.

Both share one sparse representation keyed by a packed exponent integer, which
keeps multiplication to a single integer addition per term pair.  Packed keys
sort exactly like the exponent tuples ``(et, el, ea, eb)``, so the canonical
(descending lexicographic) term order is just descending key order.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "Rat",
    "as_rat",
    "parse_rat",
    "binom",
    "CoefPoly",
    "TPoly",
    "LAM",
    "ALPHA",
    "BETA",
    "T",
    "ONE",
    "poly_shift",
    "poly_derivative",
    "eval_params",
    "parse_poly",
    "parse_coefpoly",
    "parse_tpoly",
]

Rat = Rational

_W = 16
_MASK = (1 << _W) - 1
_LOFF = 1 << (_W - 1)
_A_SHIFT = _W
_L_SHIFT = 2 * _W
_T_SHIFT = 3 * _W
# key of the monomial 1; product keys are k1 + k2 - _UNIT
_UNIT = _LOFF << _L_SHIFT
_MAXEXP = _LOFF - 1


def as_rat(x) -> Rat:
    """Normalize an exact scalar: integral fractions become ``int``."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return as_rat(Fraction(x.numerator, x.denominator))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


_RAT_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


def parse_rat(text: str) -> Rat:
    """Parse ``"p/q"`` or an integer literal; anything else is rejected."""
    s = text.strip()
    if not _RAT_RE.match(s):
        raise ValueError(f"malformed rational {text!r}")
    num, _, den = s.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return as_rat(Fraction(int(num), int(den) if den else 1))


def binom(n: int, k: int) -> int:
    """Generalized binomial coefficient n(n-1)...(n-k+1)/k!.

    Valid for every integer ``n``; in particular ``binom(-1, 0) == 1`` and
    ``binom(n - 1, n) == 0`` for ``n > 0``.
    """
    if k < 0:
        raise ValueError(f"binom: k must be nonnegative, got {k}")
    num = 1
    for r in range(k):
        num *= n - r
    return num // math.factorial(k)


def _pack(et: int, el: int, ea: int, eb: int) -> int:
    if not (0 <= et <= _MAXEXP and 0 <= ea <= _MAXEXP and 0 <= eb <= _MAXEXP and -_MAXEXP <= el <= _MAXEXP):
        raise OverflowError(f"exponent out of range: {(et, el, ea, eb)}")
    return (et << _T_SHIFT) | ((el + _LOFF) << _L_SHIFT) | (ea << _A_SHIFT) | eb


def _unpack(key: int) -> tuple[int, int, int, int]:
    return (
        key >> _T_SHIFT,
        ((key >> _L_SHIFT) & _MASK) - _LOFF,
        (key >> _A_SHIFT) & _MASK,
        key & _MASK,
    )


class _Poly:
    __slots__ = ("_terms", "_hash", "_span")

    def __init__(self, terms: dict[int, Rat] | None = None):
        # trusted: no zero coefficients, normalized scalars
        self._terms = terms if terms is not None else {}
        self._hash = None
        self._span = None

    # -- construction helpers -------------------------------------------------
    @classmethod
    def _make(cls, terms: dict[int, Rat]) -> "_Poly":
        if cls is CoefPoly and any(k >> _T_SHIFT for k in terms):
            cls = TPoly
        return cls(terms)

    @staticmethod
    def _clean(raw: dict[int, Rat]) -> dict[int, Rat]:
        out = {}
        for k, c in raw.items():
            if c:
                out[k] = c.numerator if type(c) is Fraction and c.denominator == 1 else c
        return out

    def _coerce(self, other) -> "_Poly | None":
        if isinstance(other, _Poly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = as_rat(other)
            return CoefPoly({_UNIT: c} if c else {})
        return None

    def _bounds(self) -> tuple[int, int, int, int, int]:
        if self._span is None:
            et = ea = eb = 0
            lo = hi = 0
            for k in self._terms:
                a, b, c, d = _unpack(k)
                et, ea, eb = max(et, a), max(ea, c), max(eb, d)
                lo, hi = min(lo, b), max(hi, b)
            self._span = (et, lo, hi, ea, eb)
        return self._span

    # -- ring operations ------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(self, TPoly) or isinstance(o, TPoly):
            if not o._terms:
                return TPoly(self._terms)
            if not self._terms:
                return TPoly(o._terms)
        elif not o._terms:
            return self
        elif not self._terms:
            return o
        out = dict(self._terms)
        for k, c in o._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        cls = TPoly if isinstance(self, TPoly) or isinstance(o, TPoly) else CoefPoly
        return cls._make(self._clean(out) if any(type(v) is Fraction for v in out.values()) else out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = as_rat(other)
            if not c:
                return type(self)()
            return type(self)(self._clean({k: v * c for k, v in self._terms.items()}))
        if not isinstance(other, _Poly):
            return NotImplemented
        a, b = self._terms, other._terms
        cls = TPoly if isinstance(self, TPoly) or isinstance(other, TPoly) else CoefPoly
        if not a or not b:
            return cls()
        s1, s2 = self._bounds(), other._bounds()
        if (
            s1[0] + s2[0] > _MAXEXP
            or s1[3] + s2[3] > _MAXEXP
            or s1[4] + s2[4] > _MAXEXP
            or not -_MAXEXP <= s1[1] + s2[1] <= s1[2] + s2[2] <= _MAXEXP
        ):
            raise OverflowError("polynomial product exceeds the exponent range")
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Rat] = {}
        get = out.get
        unit = _UNIT
        for k2, c2 in b.items():
            off = k2 - unit
            for k1, c1 in a.items():
                k = k1 + off
                out[k] = get(k, 0) + c1 * c2
        return cls(self._clean(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = type(self)({_UNIT: 1})
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def exponent_items(self):
        """Yield ``((et, el, ea, eb), coef)`` in canonical (descending) order."""
        for k in sorted(self._terms, reverse=True):
            yield _unpack(k), self._terms[k]

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"{type(self).__name__}({format_poly(self)!r})"


class CoefPoly(_Poly):
    """Element of Q[l, 1/l, a, b]: Laurent in ``l``, polynomial in ``a`` and ``b``."""

    __slots__ = ()

    @classmethod
    def monomial(cls, coef=1, l: int = 0, a: int = 0, b: int = 0) -> "CoefPoly":
        c = as_rat(coef)
        return cls({_pack(0, l, a, b): c} if c else {})

    @classmethod
    def const(cls, c) -> "CoefPoly":
        return cls.monomial(c)

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, int, int], Rat]) -> "CoefPoly":
        raw: dict[int, Rat] = {}
        for (l, a, b), c in terms.items():
            k = _pack(0, l, a, b)
            raw[k] = raw.get(k, 0) + as_rat(c)
        return cls(cls._clean(raw))

    def terms(self) -> dict[tuple[int, int, int], Rat]:
        return {e[1:]: c for e, c in self.exponent_items()}

    def is_constant(self) -> bool:
        return all(k == _UNIT for k in self._terms)

    def constant_value(self) -> Rat:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get(_UNIT, 0)


class TPoly(_Poly):
    """Polynomial in ``t`` whose coefficients are :class:`CoefPoly` elements."""

    __slots__ = ()

    @classmethod
    def monomial(cls, coef=1, t: int = 0, l: int = 0, a: int = 0, b: int = 0) -> "TPoly":
        c = as_rat(coef)
        return cls({_pack(t, l, a, b): c} if c else {})

    @classmethod
    def from_coeffs(cls, coeffs: dict[int, CoefPoly]) -> "TPoly":
        out = cls()
        for k, p in coeffs.items():
            out = out + _times_t(p, k)
        return TPoly(out._terms)

    @classmethod
    def lift(cls, p) -> "TPoly":
        """View a scalar or :class:`CoefPoly` as a constant polynomial in ``t``."""
        if isinstance(p, _Poly):
            return cls(p._terms)
        return cls.monomial(p)

    @property
    def degree(self):
        """Degree in ``t``; ``-math.inf`` for the zero polynomial."""
        if not self._terms:
            return -math.inf
        return max(self._terms) >> _T_SHIFT

    def coeffs(self) -> dict[int, CoefPoly]:
        """Map each present power of ``t`` to its coefficient."""
        groups: dict[int, dict[int, Rat]] = {}
        for k, c in self._terms.items():
            et = k >> _T_SHIFT
            groups.setdefault(et, {})[k - (et << _T_SHIFT)] = c
        return {et: CoefPoly(g) for et, g in sorted(groups.items())}

    def coeff(self, k: int) -> CoefPoly:
        base = k << _T_SHIFT
        return CoefPoly({key - base: c for key, c in self._terms.items() if key >> _T_SHIFT == k})

    def constant_term(self) -> CoefPoly:
        return self.coeff(0)


def _times_t(p: _Poly, k: int) -> TPoly:
    if k < 0 or k > _MAXEXP:
        raise OverflowError(f"t-exponent out of range: {k}")
    shift = k << _T_SHIFT
    return TPoly({key + shift: c for key, c in p._terms.items()})


LAM = CoefPoly.monomial(1, l=1)
ALPHA = CoefPoly.monomial(1, a=1)
BETA = CoefPoly.monomial(1, b=1)
ONE = TPoly.monomial(1)
T = TPoly.monomial(1, t=1)


def _shift_base(c) -> TPoly:
    if isinstance(c, _Poly):
        if any(k >> _T_SHIFT for k in c._terms):
            raise ValueError("shift amount must not involve t")
        return T - TPoly(c._terms)
    return T - as_rat(c)


@lru_cache(maxsize=4096)
def _int_shift_power(c: int, k: int) -> TPoly:
    if k == 0:
        return ONE
    return _int_shift_power(c, k - 1) * (T - c)


def shifted_power(c, k: int) -> TPoly:
    """``(t - c)**k``; integer shifts are memoized."""
    if isinstance(c, int) and not isinstance(c, bool):
        return _int_shift_power(c, k)
    return _shift_base(c) ** k


def poly_shift(f: _Poly, c) -> TPoly:
    """Return ``f(t - c)`` for an integer, rational or t-free coefficient ``c``."""
    if not isinstance(f, TPoly):
        f = TPoly.lift(f)
    if isinstance(c, (int, Fraction)) and not c:
        return f
    result = TPoly()
    for k, p in f.coeffs().items():
        result = result + p * shifted_power(c, k)
    return TPoly(result._terms)


def poly_derivative(f: _Poly, s: int = 1) -> TPoly:
    """``s``-th derivative with respect to ``t``."""
    if s < 0:
        raise ValueError("derivative order must be nonnegative")
    if not isinstance(f, TPoly):
        f = TPoly.lift(f)
    if s == 0:
        return f
    out = {}
    for key, c in f._terms.items():
        et = key >> _T_SHIFT
        if et >= s:
            out[key - (s << _T_SHIFT)] = c * math.perm(et, s)
    return TPoly(out)


def eval_params(x: _Poly, lam, alpha, beta) -> _Poly:
    """Substitute numeric values for (l, a, b).  ``lam`` must be nonzero."""
    lam, alpha, beta = as_rat(lam), as_rat(alpha), as_rat(beta)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    lam_f = Fraction(lam)
    out: dict[int, Rat] = {}
    for key, c in x._terms.items():
        et, el, ea, eb = _unpack(key)
        v = c * lam_f**el * alpha**ea * beta**eb
        k = _pack(et, 0, 0, 0)
        out[k] = out.get(k, 0) + v
    return type(x)(_Poly._clean(out))


# -- canonical text form -----------------------------------------------------

def _fmt_rat(c: Rat) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _fmt_term(exps: tuple[int, int, int, int], c: Rat) -> str:
    et, el, ea, eb = exps
    factors = []
    for name, e in (("l", el), ("a", ea), ("b", eb)):
        if e:
            factors.append(name if e == 1 else f"{name}^{e}")
    if et:
        factors.append(f"t^{et}")
    if factors and c == 1:
        return "*".join(factors)
    return "*".join([_fmt_rat(c)] + factors)


def format_poly(p: _Poly) -> str:
    """Canonical serialization: terms in descending (t; l, a, b) order joined by ``" + "``.

    Scalar coefficient 1 is dropped when a factor is present; l/a/b exponents of
    1 are dropped; the t factor always carries its exponent (``t^1``).
    """
    if not p._terms:
        return "0"
    return " + ".join(_fmt_term(e, c) for e, c in p.exponent_items())


_ITEM = r"(?:\d+(?:/\d+)?|[labt](?:\^[+-]?\d+)?)"
_TERM_RE = re.compile(rf"([+-]*)({_ITEM}(?:\*{_ITEM})*)")


def parse_poly(text: str) -> _Poly:
    """Parse the canonical grammar (and harmless variations such as ``a^1``, ``-a``)."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return CoefPoly()
    pos = 0
    raw: dict[int, Rat] = {}
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or (pos > 0 and not m.group(1)):
            raise ValueError(f"malformed polynomial at offset {pos}: {text!r}")
        sign = -1 if m.group(1).count("-") % 2 else 1
        coef: Rat = sign
        exps = {"t": 0, "l": 0, "a": 0, "b": 0}
        for item in m.group(2).split("*"):
            if item[0] in exps:
                e = int(item[2:]) if len(item) > 1 else 1
                if item[0] != "l" and e < 0:
                    raise ValueError(f"negative exponent on {item[0]!r} in {text!r}")
                exps[item[0]] += e
            else:
                coef = coef * parse_rat(item)
        k = _pack(exps["t"], exps["l"], exps["a"], exps["b"])
        raw[k] = raw.get(k, 0) + coef
        pos = m.end()
    return CoefPoly._make(_Poly._clean(raw))


def parse_tpoly(text: str) -> TPoly:
    return TPoly.lift(parse_poly(text))


def parse_coefpoly(text: str) -> CoefPoly:
    p = parse_poly(text)
    if isinstance(p, TPoly):
        raise ValueError(f"coefficient polynomial must not contain t: {text!r}")
    return p
