"""Classification probe: the degree-obstruction linear systems, solved exactly.

Two families of systems are built.

* W(1): the ansatz F(t) = a_0 + ... + a_K t^K for ``L[0,1] . 1`` is pushed
  through the second-order recurrence obtained from ``[L01, Li0]`` and
  ``[L-i0, Li1]`` at i = 1.  The t^K row is (K^2 + K - 2) a_K = 0.
* W(-1): two ansatz polynomials Y0, Y1 (for ``L[0,1] . 1`` and ``L[1,1] . 1``
  with the lambda power stripped) share their leading coefficient.  The j = 1
  instance of the combined relation expresses every Y_i through Y0, Y1;
  substituting back and reading the t^(N-2) and t^0 coefficients as
  polynomials in (i, j) gives the rows.

Rows are linear in the unknown coefficients with coefficients in Q[alpha]; the
solver works over Q(alpha) and records every polynomial it divides by.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import ONE, TPoly, as_rat
from .lie import Epsilon
from .linalg import (
    RatFunc,
    rational_roots,
    rref,
    split_linear_factors,
    upoly,
    upoly_primitive,
    upoly_str,
)
from .modules import ModuleParams, act, closed_form_on_one
from .mpoly import MPoly
from .report import VerificationReport
from .verify import Window, sequence_residual

__all__ = [
    "AnsatzPoly",
    "Row",
    "LinearSystem",
    "Solution",
    "build_w1_base_system",
    "build_wm1_system",
    "solve_system",
    "row_space_equal",
    "scaling_witnesses",
    "example_rows",
    "SequenceStep",
    "derive_sequence_steps",
    "replay_sequence",
    "certify_sequence_acceptance",
    "verify_closed_forms",
    "format_system",
    "format_solution",
]

MODES = ("symbolic", "alpha-zero", "sampled")


# -- systems -----------------------------------------------------------------

@dataclass(frozen=True)
class AnsatzPoly:
    """Unknown-coefficient polynomial sum(symbols[r] * x^r); the last symbol leads."""

    name: str
    symbols: tuple[str, ...]

    @property
    def degree(self) -> int:
        return len(self.symbols) - 1

    @property
    def leading(self) -> str:
        return self.symbols[-1]

    def at(self, gens: tuple[str, ...], x: MPoly) -> MPoly:
        out = MPoly(gens)
        power = MPoly.const(gens, 1)
        for r, sym in enumerate(self.symbols):
            if r:
                power = power * x
            out = out + MPoly.var(gens, sym) * power
        return out

    def __str__(self):
        return f"{self.name}(t) = " + " + ".join(
            s if r == 0 else f"{s}*t" + (f"^{r}" if r > 1 else "") for r, s in enumerate(self.symbols)
        )


@dataclass(frozen=True)
class Row:
    """sum(coeffs[u] * u) + const = 0, coefficients in Q(alpha)."""

    coeffs: tuple[tuple[str, RatFunc], ...]
    const: RatFunc
    provenance: str

    def coeff(self, name: str) -> RatFunc:
        return dict(self.coeffs).get(name, RatFunc.const(0))

    def is_zero(self) -> bool:
        return not self.coeffs and self.const.is_zero()

    def at_alpha(self, value) -> "Row":
        def ev(r: RatFunc) -> RatFunc:
            return RatFunc.const(r.at(value))

        coeffs = tuple((u, ev(c)) for u, c in self.coeffs if ev(c))
        return Row(coeffs, ev(self.const), f"{self.provenance} @ alpha={_q(value)}")

    def equation(self) -> str:
        parts = []
        for u, c in self.coeffs:
            parts.append(_scaled(c, u))
        if self.const:
            parts.append(_scaled(self.const, ""))
        return (" + ".join(parts) or "0") + " = 0"


def _q(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _compound(c: RatFunc) -> bool:
    return sum(1 for x in c.num if x) > 1 or len(c.den) > 1


def _scaled(c: RatFunc, u: str) -> str:
    text = str(c)
    if not u:
        return f"({text})" if _compound(c) else text
    if c == 1:
        return u
    if c == -1:
        return f"-{u}"
    if _compound(c):
        return f"({text})*{u}"
    return f"{text}*{u}"


@dataclass
class LinearSystem:
    title: str
    mode: str
    unknowns: tuple[str, ...]
    rows: list[Row]
    leading: Optional[str] = None
    # polynomials in alpha assumed nonzero when the rows were derived
    assumptions: list[tuple] = field(default_factory=list)
    trace: list[str] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)
    extracted: dict[str, MPoly] = field(default_factory=dict)


def _row_from(expr: MPoly, unknowns: Sequence[str], provenance: str) -> Row:
    """Read a polynomial linear in ``unknowns`` with Q[alpha] coefficients as a row."""
    gens = expr.gens
    ai = gens.index("alpha") if "alpha" in gens else None
    upos = {gens.index(u): u for u in unknowns}
    acc: dict[Optional[str], dict[int, Fraction]] = {}
    for e, c in expr.terms.items():
        target = None
        for k, p in enumerate(e):
            if not p or k == ai:
                continue
            if k in upos and p == 1 and target is None:
                target = upos[k]
            else:
                raise ValueError(f"{provenance}: term is not linear in the unknowns: {expr}")
        ap = e[ai] if ai is not None else 0
        slot = acc.setdefault(target, {})
        slot[ap] = slot.get(ap, 0) + Fraction(c)

    def rf(d):
        top = max(d, default=-1)
        return RatFunc(upoly([d.get(k, 0) for k in range(top + 1)]))

    coeffs = tuple((u, rf(acc[u])) for u in unknowns if u in acc and rf(acc[u]))
    return Row(coeffs, rf(acc.get(None, {})), provenance)


def build_w1_base_system(K: int) -> LinearSystem:
    """Rows from the F(t) recurrence at i = 1 with F of degree ``K``, one per power of t."""
    if K < 0:
        raise ValueError(f"degree must be nonnegative, got {K}")
    ans = AnsatzPoly("F", tuple(f"a{r}" for r in range(K + 1)))
    gens = ("t", "alpha") + ans.symbols
    t, al = MPoly.var(gens, "t"), MPoly.var(gens, "alpha")
    i = 1
    ii = i * i
    f0, fp, fm = ans.at(gens, t), ans.at(gens, t + i), ans.at(gens, t - i)
    bracket = (
        2 * (t * t - ii * al * al + ii * al + ii) * f0
        - (t * t + i * t - ii * al * al + ii * al) * fp
        - (t * t - i * t - ii * al * al + ii * al) * fm
    )
    expr = 2 * ii * al - bracket
    rows = []
    for d in range(expr.degree("t"), -1, -1):
        c = expr.coeff("t", d)
        if c:
            rows.append(_row_from(c, ans.symbols[::-1], f"w1-recurrence i=1 t^{d}"))
    sysm = LinearSystem(
        f"W(1) degree-{K} ansatz",
        "symbolic",
        ans.symbols[::-1],
        rows,
        leading=ans.leading,
    )
    sysm.trace = [
        f"ansatz {ans}",
        "relation 2 i^2 alpha = 2(t^2 - i^2 alpha^2 + i^2 alpha + i^2) F(t)"
        " - (t^2 + i t - i^2 alpha^2 + i^2 alpha) F(t+i) - (t^2 - i t - i^2 alpha^2 + i^2 alpha) F(t-i)",
        "instantiated at i=1: " + str(expr) + " = 0",
    ]
    return sysm


def _wm1_expression(N: int):
    a0 = AnsatzPoly("Y0", tuple(f"a{r}^(0)" for r in range(N + 1)))
    # Y1 shares the leading coefficient with Y0
    a1 = AnsatzPoly("Y1", tuple(f"a{r}^(1)" for r in range(N)) + (a0.leading,))
    unknowns = (a0.leading,) + tuple(
        s for r in range(N - 1, -1, -1) for s in (a0.symbols[r], a1.symbols[r])
    )
    gens = ("t", "i", "j", "alpha") + unknowns
    t, i, j, al = (MPoly.var(gens, g) for g in ("t", "i", "j", "alpha"))

    def y0(x):
        return a0.at(gens, x)

    def y1(x):
        return a1.at(gens, x)

    def yi(ii, x):
        return (
            (x - ii * al + 2) * y0(x)
            - (x - ii * al) * y0(x - ii)
            - (x + al) * y1(x + 1)
            + ii * al * y1(x)
            + (x - (ii - 1) * al) * y1(x - ii + 1)
        ) / 2

    lhs = (t + j * al) * yi(j, t + j) - i * al * yi(j, t) - (t - (i - j) * al) * yi(j, t - i + j) + 2 * j * yi(i, t)
    rhs = (t - i * al + 2 * j) * y0(t) - (t - i * al) * y0(t - i)
    return a0, a1, unknowns, lhs - rhs


def _wm1_n2_system(mode: str) -> LinearSystem:
    """N = 2: compare t^2 coefficients of the [L01, Li0] relation at i = 1."""
    names = {
        "Y01": ("a0^(0)", "a1^(0)", "a2"),
        "Y11": ("a0^(1)", "a1^(1)", "a2"),
        "Y02": ("b0^(0)", "b1^(0)", "b2"),
        "Y12": ("b0^(1)", "b1^(1)", "b2"),
    }
    ans = {k: AnsatzPoly(k, v) for k, v in names.items()}
    unknowns = ("a2", "b2", "a1^(0)", "a1^(1)", "b1^(0)", "b1^(1)", "a0^(0)", "a0^(1)", "b0^(0)", "b0^(1)")
    gens = ("t", "alpha") + unknowns
    t, al = MPoly.var(gens, "t"), MPoly.var(gens, "alpha")
    if mode == "alpha-zero":
        al = MPoly(gens)
    i = 1
    lhs = (t - i * al) * ans["Y01"].at(gens, t) - (t - i * al) * ans["Y01"].at(gens, t - i) - ans["Y02"].at(gens, t)
    rhs = i * ans["Y11"].at(gens, t) - ans["Y12"].at(gens, t)
    expr = lhs - rhs
    row = _row_from(expr.coeff("t", 2), unknowns, "wm1-L01-Li0 i=1 t^2")
    sysm = LinearSystem("W(-1) degree-2 ansatz", mode, unknowns, [row], leading="a2")
    sysm.trace = [f"ansatz {a}" for a in ans.values()] + [
        "relation (t - i alpha) Y01(t) - (t - i alpha) Y01(t - i) - Y02(t) = i Y_i1(t) - Y_i2(t)",
        "instantiated at i=1, t^2 coefficient: " + str(expr.coeff("t", 2)) + " = 0",
    ]
    return sysm


def build_wm1_system(N: int, mode: str = "symbolic") -> LinearSystem:
    """Constraint rows for the degree-``N`` W(-1) ansatz.

    ``mode``: "symbolic" and "sampled" give the four alpha != 0 rows with
    alpha symbolic; "alpha-zero" gives the two rows surviving at alpha = 0.
    N = 2 uses the dedicated t^2 comparison.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    if N < 2:
        raise ValueError(f"degree must be at least 2, got {N} (lower degrees are not obstructed)")
    if N == 2:
        return _wm1_n2_system(mode)
    a0, a1, unknowns, diff = _wm1_expression(N)
    findings = []
    c_top = diff.coeff("t", N - 2)
    c_low = diff.coeff("t", 0)
    try:
        k_top = c_top.divide_monomial({"i": 1, "j": 1}) * 2
    except ValueError:
        findings.append(f"t^{N - 2} coefficient is not divisible by i*j")
        k_top = c_top * 2
    try:
        k_low = c_low.divide_monomial({"i": 1, "j": 1, "alpha": 1}) * 2
    except ValueError:
        findings.append("t^0 coefficient is not divisible by i*j*alpha")
        k_low = c_low * 2
    d_top = k_top.total_degree(["i", "j"])
    d_low = k_low.total_degree(["i", "j"])
    findings.append(f"deg K_{N - 2}(i,j) = {d_top} (bound 1): {'ok' if d_top <= 1 else 'VIOLATED'}")
    findings.append(f"deg K_0(i,j) = {d_low} (bound {N - 1}): {'ok' if d_low <= N - 1 else 'VIOLATED'}")

    picks = [
        (k_top, {"i": 1, "j": 0}, f"K_{N - 2} coeff i"),
        (k_top, {"i": 0, "j": 1}, f"K_{N - 2} coeff j"),
        (k_low, {"i": N - 1, "j": 0}, f"K_0 coeff i^{N - 1}"),
        (k_low, {"i": 0, "j": N - 1}, f"K_0 coeff j^{N - 1}"),
    ]
    if mode == "alpha-zero":
        picks = picks[:2]
    rows = []
    for poly, mono, tag in picks:
        c = poly.coeff_monomial(mono)
        if mode == "alpha-zero":
            c = c.subs({"alpha": 0})
            tag += " @ alpha=0"
        rows.append(_row_from(c, unknowns, f"wm1-add-relation j=1 eliminated; {tag}"))
    used = [u for u in unknowns if any(u in dict(r.coeffs) for r in rows)]
    sysm = LinearSystem(
        f"W(-1) degree-{N} ansatz",
        mode,
        tuple(used) if a0.leading in used else (a0.leading,) + tuple(used),
        rows,
        leading=a0.leading,
        assumptions=[] if mode == "alpha-zero" else [upoly([0, 1])],
        findings=findings,
        extracted={f"K_{N - 2}": k_top, "K_0": k_low},
    )
    sysm.trace = [
        f"ansatz {a0}",
        f"ansatz {a1}",
        "relation (t + j alpha) Y_j(t + j) - i alpha Y_j(t) - (t - (i - j) alpha) Y_j(t - i + j) + 2 j Y_i(t)"
        " = (t - i alpha + 2 j) Y0(t) - (t - i alpha) Y0(t - i)",
        "eliminate Y_i via its j=1 instance: 2 Y_i(t) = (t - i alpha + 2) Y0(t) - (t - i alpha) Y0(t - i)"
        " - (t + alpha) Y1(t + 1) + i alpha Y1(t) + (t - (i - 1) alpha) Y1(t - i + 1)",
        f"K_{N - 2}(i,j) = {k_top}",
        f"K_0(i,j) = {k_low}",
    ]
    return sysm


# -- solving -----------------------------------------------------------------

@dataclass
class Solution:
    consistent: bool
    unknowns: tuple[str, ...]
    pivots: list[str] = field(default_factory=list)
    free: list[str] = field(default_factory=list)
    forced_zero: list[str] = field(default_factory=list)
    relations: list[str] = field(default_factory=list)
    conditions: list[tuple] = field(default_factory=list)
    alpha: Optional[Fraction] = None
    exceptional: list["Solution"] = field(default_factory=list)
    samples: list["Solution"] = field(default_factory=list)
    agreement: Optional[bool] = None

    def shape(self) -> tuple:
        return (self.consistent, tuple(self.forced_zero), tuple(self.free))

    def forces(self, name: str) -> bool:
        return (not self.consistent) or name in self.forced_zero


def _solve_rows(rows: Sequence[Row], unknowns: Sequence[str], alpha=None) -> Solution:
    unknowns = tuple(unknowns)
    matrix = [[r.coeff(u) for u in unknowns] + [-r.const] for r in rows]
    if not matrix:
        return Solution(True, unknowns, free=list(unknowns), alpha=alpha)
    red = rref(matrix, ncols=len(unknowns))
    consistent = all(
        not row[-1] for row in red.rows[len(red.pivots):]
    )
    pivots = [unknowns[c] for c in red.pivots]
    free = [u for u in unknowns if u not in pivots]
    forced, relations = [], []
    for k, col in enumerate(red.pivots):
        row = red.rows[k]
        others = [(unknowns[c], row[c]) for c in range(len(unknowns)) if c != col and row[c]]
        rhs = row[-1]
        if not others and not rhs:
            forced.append(unknowns[col])
            continue
        terms = [_scaled(-c, u) for u, c in others]
        if rhs:
            terms.append(_scaled(rhs, ""))
        relations.append(f"{unknowns[col]} = " + " + ".join(terms))
    conds = []
    for c in red.conditions:
        factors, rest = split_linear_factors(c)
        for p in factors + ([rest] if len(rest) > 1 else []):
            if p not in conds:
                conds.append(p)
    return Solution(consistent, unknowns, pivots, free, forced, relations, conds, alpha)


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-60, 60), rng.randint(1, 25))


def solve_system(
    sysm: LinearSystem,
    mode: Optional[str] = None,
    samples: int = 5,
    seed: int = 0,
) -> Solution:
    """Exact solution space of ``sysm``.

    symbolic: elimination over Q(alpha); each rational root of a recorded
    condition is re-solved separately.  alpha-zero: alpha set to 0 first.
    sampled: the symbolic solve plus ``samples`` numeric re-solves at random
    rational alpha away from all recorded roots, cross-checked for agreement.
    """
    mode = mode or sysm.mode
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "alpha-zero":
        return _solve_rows([r.at_alpha(0) for r in sysm.rows], sysm.unknowns, alpha=Fraction(0))
    sol = _solve_rows(sysm.rows, sysm.unknowns)
    excluded = set()
    for c in sol.conditions + sysm.assumptions:
        excluded.update(rational_roots(c))
    for root in sorted(set().union(*[rational_roots(c) for c in sol.conditions]) if sol.conditions else set()):
        if any(len(a) > 1 and rational_roots(a).count(root) for a in sysm.assumptions):
            continue
        sol.exceptional.append(_solve_rows([r.at_alpha(root) for r in sysm.rows], sysm.unknowns, alpha=root))
    if mode == "sampled":
        if samples < 5:
            raise ValueError("sampled mode needs at least 5 samples")
        rng = random.Random(seed)
        seen = set()
        while len(sol.samples) < samples:
            x = _random_rational(rng)
            if x in excluded or x in seen:
                continue
            seen.add(x)
            try:
                rows = [r.at_alpha(x) for r in sysm.rows]
            except ZeroDivisionError:
                continue
            sol.samples.append(_solve_rows(rows, sysm.unknowns, alpha=x))
        sol.agreement = all(s.shape() == sol.shape() for s in sol.samples)
    return sol


# -- comparison with reference rows -----------------------------------------

def _matrix(rows: Sequence[Row], unknowns: Sequence[str]):
    return [[r.coeff(u) for u in unknowns] + [r.const] for r in rows]


def row_space_equal(a: Sequence[Row], b: Sequence[Row]) -> bool:
    """Exact row-space equality over Q(alpha) (constant column included)."""
    names = sorted({u for r in list(a) + list(b) for u, _ in r.coeffs})
    ra = len(rref(_matrix(a, names)).pivots) if a else 0
    rb = len(rref(_matrix(b, names)).pivots) if b else 0
    rab = len(rref(_matrix(list(a) + list(b), names)).pivots) if (a or b) else 0
    return ra == rb == rab


def _ratio(x: Row, y: Row) -> Optional[RatFunc]:
    """c with x == c * y, or None."""
    names = {u for u, _ in x.coeffs} | {u for u, _ in y.coeffs}
    c = None
    for u in sorted(names) + [None]:
        xv = x.const if u is None else x.coeff(u)
        yv = y.const if u is None else y.coeff(u)
        if not yv:
            if xv:
                return None
            continue
        q = xv / yv
        if c is None:
            c = q
        elif q != c:
            return None
    return c if c else None


def scaling_witnesses(ours: Sequence[Row], reference: Sequence[Row]) -> list[tuple[int, int, RatFunc]]:
    """(reference index, our index, c) with ours[k] == c * reference[r]."""
    out = []
    for r, ref in enumerate(reference):
        order = ([r] if r < len(ours) else []) + [k for k in range(len(ours)) if k != r]
        for k in order:
            c = _ratio(ours[k], ref)
            if c is not None:
                out.append((r, k, c))
                break
    return out


def example_rows(N: int = 3, alpha_zero: bool = False) -> list[Row]:
    """The reference N = 3 systems, transcribed as rows over Q[alpha]."""
    if N != 3:
        raise ValueError("reference rows are only available for N = 3")
    A0, A1, A3 = "a2^(0)", "a2^(1)", "a3^(0)"

    def row(d, c3, tag):
        # d*(a2^(0) - a2^(1)) + c3*a3 = 0
        d, c3 = RatFunc(upoly(d)), RatFunc(upoly(c3))
        return Row(((A3, c3), (A0, d), (A1, -d)), RatFunc.const(0), tag)

    if alpha_zero:
        return [row([2], [-3], "reference alpha=0 row 1"), row([1], [-1], "reference alpha=0 row 2")]
    one_2a = [1, 2]
    return [
        # (1+2a)(2D - 3(1+a)a3)
        row([2, 4], [-3, -9, -6], "reference row 1"),
        # (1+2a)D - (1+3a+8a^2)a3
        row(one_2a, [-1, -3, -8], "reference row 2"),
        row([2], [-3, -3], "reference row 3"),
        row([1, -1], [-1], "reference row 4"),
    ]


# -- sequence lemma ------------------------------------------------------------

@dataclass(frozen=True)
class SequenceStep:
    label: str
    pairs: tuple[tuple[int, int], ...]
    instantiated: tuple[str, ...]
    substitution: tuple[tuple[int, str], ...]
    combined: str
    target: int
    value: str

    def __str__(self):
        subs = ", ".join(f"b{k} = {v}" for k, v in self.substitution) or "none"
        return (
            f"step {self.label}: " + "; ".join(self.instantiated)
            + f" | substitute {subs} | combined {self.combined} = 0 | b{self.target} = {self.value}"
        )


def _seq_relation(gens, m: int, n: int) -> MPoly:
    def b(k):
        return MPoly.const(gens, 1) if k == 0 else MPoly.var(gens, f"b{k}")

    return b(m + n) + (n - m) * b(m + n + 1) - (b(n) * b(m) + n * b(m) * b(n + 1) - m * b(n) * b(m + 1))


def _solve_for(expr: MPoly, name: str) -> MPoly:
    if expr.degree(name) != 1:
        raise ValueError(f"{expr} is not linear in {name}")
    c = expr.coeff(name, 1)
    if c.variables() or c.is_zero():
        raise ValueError(f"coefficient of {name} in {expr} is not a nonzero constant")
    lead = next(iter(c.terms.values()))
    return -expr.coeff(name, 0) / lead


def derive_sequence_steps(max_m: int = 12) -> list[SequenceStep]:
    """Replay the induction for b_m = b_1^m symbolically up to ``max_m`` (>= 3)."""
    if max_m < 3:
        raise ValueError("max_m must be at least 3")
    top = max(max_m, 4)
    gens = tuple(f"b{k}" for k in range(1, top + 1))
    b1 = MPoly.var(gens, "b1")
    known: dict[str, MPoly] = {}
    steps = []

    def record(label, pairs, target, combined_raw):
        inst = tuple(f"({m},{n}): {_seq_relation(gens, m, n)} = 0" for m, n in pairs)
        subs = tuple((int(k[1:]), str(v)) for k, v in sorted(known.items(), key=lambda kv: int(kv[0][1:])))
        combined = combined_raw.subs(known) if known else combined_raw
        value = _solve_for(combined, f"b{target}")
        if value != b1**target:
            raise AssertionError(f"step {label} gives b{target} = {value}")
        steps.append(SequenceStep(label, pairs, inst, subs, str(combined), target, str(value)))
        known[f"b{target}"] = value

    record("(1,1)", ((1, 1),), 2, _seq_relation(gens, 1, 1))
    record("(1,2)+(2,1)", ((1, 2), (2, 1)), 3, _seq_relation(gens, 1, 2) + _seq_relation(gens, 2, 1))
    for m in range(4, max_m + 1):
        record(f"(m-2,1) m={m}", ((m - 2, 1),), m, _seq_relation(gens, m - 2, 1))
    return steps


def replay_sequence(steps: Sequence[SequenceStep], seq: Sequence) -> tuple[bool, Optional[int]]:
    """Apply the derivation to a concrete sequence b_0.. b_N.

    Returns (all usable step relations hold, first index where b_m != b_1^m or
    None).  A sequence with holding relations and a mismatch would refute the
    derivation.
    """
    vals = [as_rat(Fraction(x) if isinstance(x, str) else x) for x in seq]
    top = len(vals) - 1
    holds = True
    for st in steps:
        if any(m + n + 1 > top for m, n in st.pairs):
            break
        if any(sequence_residual(vals, m, n) != 0 for m, n in st.pairs):
            holds = False
            break
    mismatch = next((k for k, v in enumerate(vals) if len(vals) > 1 and v != vals[1] ** k), None)
    return holds, mismatch


def certify_sequence_acceptance(steps: Sequence[SequenceStep], N: int = 12) -> VerificationReport:
    """Certificate that sequences b_0..b_N passing the relation are exactly the geometric ones."""
    rep = VerificationReport(f"sequence acceptance N={N}")
    for st in steps:
        if st.target > N:
            continue
        inside = all(m + n + 1 <= N for m, n in st.pairs)
        rep.add("step-within-checked-pairs", None, (("target", st.target),), f"pairs {st.pairs} exceed N", passed=inside)
    covered = {st.target for st in steps if st.target <= N}
    want = set(range(2, N + 1)) if N >= 4 else set(range(2, min(N, 2) + 1))
    rep.add("steps-cover-indices", None, (("N", N),), f"covered {sorted(covered)}", passed=want <= covered)
    gens = ("b",)
    b = MPoly.var(gens, "b")
    for total in range(N):
        for m in range(total + 1):
            n = total - m
            expr = (
                b ** (m + n) + (n - m) * b ** (m + n + 1)
                - (b**n * b**m + n * b**m * b ** (n + 1) - m * b**n * b ** (m + 1))
            )
            rep.add("geometric-satisfies", None, (("m", m), ("n", n)), str(expr), passed=expr.is_zero())
    return rep


# -- closed forms --------------------------------------------------------------

def verify_closed_forms(eps, window: Window) -> VerificationReport:
    """``L[i,m] . 1`` against the classified closed forms, symbolic parameters."""
    eps = Epsilon.coerce(eps)
    params = ModuleParams.symbolic(eps)
    rep = VerificationReport(f"closed forms eps={int(eps)}")
    a, b = params.alpha, params.beta
    T = TPoly.monomial(1, 1)
    for i, m in window.indices():
        got = act(params, i, m, ONE)
        point = (("i", i), ("m", m))
        rep.add("closed-form", eps, point, got - closed_form_on_one(params, i, m))
        if eps == Epsilon.MINUS:
            beta_m = TPoly.lift(b**m)
            gamma_m = TPoly.lift(-m * a * b ** (m + 1))
            alt = TPoly((params.lam_power(i) * (beta_m * (T - TPoly.lift(i * a)) + gamma_m))._terms)
            rep.add("beta-gamma-form", eps, point, got - alt)
    return rep


# -- text output -----------------------------------------------------------------

def format_system(sysm: LinearSystem, trace: bool = False) -> str:
    lines = [f"system\t{sysm.title}", f"mode\t{sysm.mode}", "unknowns\t" + ",".join(sysm.unknowns)]
    if sysm.leading:
        lines.append(f"leading\t{sysm.leading}")
    for a in sysm.assumptions:
        lines.append(f"assumption\t{upoly_str(a)} != 0")
    if trace:
        lines += [f"trace\t{t}" for t in sysm.trace]
    for k, r in enumerate(sysm.rows, 1):
        lines.append(f"row\t{k}\t{r.provenance}\t{r.equation()}")
    lines += [f"finding\t{f}" for f in sysm.findings]
    return "\n".join(lines) + "\n"


def _solution_lines(sol: Solution, prefix: str = "") -> list[str]:
    head = prefix + ("" if sol.alpha is None else f"alpha={_q(sol.alpha)}\t")
    return [
        f"{head}consistent\t{'yes' if sol.consistent else 'no'}",
        f"{head}forced-zero\t" + ",".join(sol.forced_zero),
        f"{head}free\t" + ",".join(sol.free),
    ] + [f"{head}relation\t{r}" for r in sol.relations]


def format_solution(sol: Solution, status: Optional[bool] = None) -> str:
    lines = _solution_lines(sol)
    lines += [f"condition\t{upoly_str(upoly_primitive(c))} != 0" for c in sol.conditions]
    for ex in sol.exceptional:
        lines += _solution_lines(ex, "exceptional\t")
    for s in sol.samples:
        lines.append(
            f"sample\talpha={_q(s.alpha)}\tforced-zero=" + ",".join(s.forced_zero)
            + f"\tagree={'yes' if s.shape() == sol.shape() else 'no'}"
        )
    if sol.agreement is not None:
        lines.append(f"agreement\t{'yes' if sol.agreement else 'no'}")
    if status is not None:
        lines.append(f"summary\tstatus={'pass' if status else 'fail'}")
    return "\n".join(lines) + "\n"
