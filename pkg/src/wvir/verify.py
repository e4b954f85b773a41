"""Verification suites over finite windows of the infinite index sets."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import ONE, T, Rat, TPoly, as_rat, binom
from .lie import Epsilon, L, LieElt, bracket, evaluate_tree, generator_decomposition
from .modules import (
    ModuleParams,
    act,
    act_elt,
    extract_params,
    act_vir,
    act_wm1,
    act_wm1_deriv,
    expansion_rhs,
    family_oracle,
)
from .report import VerificationReport

__all__ = [
    "Window",
    "check_module_axiom",
    "check_submodule_and_quotient",
    "check_freeness",
    "check_oracle_equivalence",
    "check_vir_reduction",
    "check_expansion_identities",
    "check_lie_structure",
    "check_param_extraction",
    "SequenceResult",
    "check_sequence",
    "check_identities",
    "ProbeStatus",
    "ProbeResult",
    "simplicity_probe",
]


@dataclass(frozen=True)
class Window:
    """Grid bounds: |i|, |j| <= i_max; m, n <= m_max; k <= k_max."""

    i_max: int
    m_max: int
    k_max: int

    def __post_init__(self):
        if min(self.i_max, self.m_max, self.k_max) < 0:
            raise ValueError(f"window bounds must be nonnegative: {self}")

    def indices(self):
        """(i, m) pairs in grid order."""
        return [(i, m) for i in range(-self.i_max, self.i_max + 1) for m in range(self.m_max + 1)]

    def points(self):
        """(i, m, k) triples in grid order."""
        return [(i, m, k) for i, m in self.indices() for k in range(self.k_max + 1)]


def _mono(k: int) -> TPoly:
    return TPoly.monomial(1, t=k)


def check_module_axiom(eps, window: Window, params: Optional[ModuleParams] = None) -> VerificationReport:
    """Check ``[x, y] . t^k == x.(y.t^k) - y.(x.t^k)`` for every pair of grid basis elements.

    All pairs are checked, not only the generators L[i,0], L[i,1].
    """
    eps = Epsilon.coerce(eps)
    if params is None:
        params = ModuleParams.symbolic(eps)
    elif params.epsilon != eps:
        raise ValueError("params.epsilon does not match eps")
    rep = VerificationReport(f"module-axiom eps={int(eps)}")
    idx = window.indices()
    for (i, m), (j, n) in itertools.product(idx, idx):
        br = bracket(eps, L(i, m), L(j, n))
        for k in range(window.k_max + 1):
            f = _mono(k)
            lhs = act_elt(params, br, f)
            rhs = act(params, i, m, act(params, j, n, f)) - act(params, j, n, act(params, i, m, f))
            rep.add("module-axiom", eps, (("i", i), ("m", m), ("j", j), ("n", n), ("k", k)), lhs - rhs)
    return rep


def check_submodule_and_quotient(eps, window: Window) -> VerificationReport:
    """At alpha = 0 (lambda, beta symbolic): t*Omega is invariant and Omega/t*Omega is trivial.

    Invariance: ``L[i,m] . t^(k+1)`` has zero constant term.
    Trivial quotient: ``L[i,m] . 1`` has zero constant term.
    """
    eps = Epsilon.coerce(eps)
    params = ModuleParams.symbolic(eps, alpha=0)
    rep = VerificationReport(f"submodule eps={int(eps)}")
    for i, m, k in window.points():
        rep.add(
            "submodule-invariance",
            eps,
            (("i", i), ("m", m), ("k", k)),
            TPoly.lift(act(params, i, m, _mono(k + 1)).constant_term()),
        )
    for i, m in window.indices():
        rep.add("quotient-trivial", eps, (("i", i), ("m", m)), TPoly.lift(act(params, i, m, ONE).constant_term()))
    return rep


def check_freeness(eps, window: Window) -> VerificationReport:
    """``L[0,0]`` acts as multiplication by t."""
    params = ModuleParams.symbolic(eps)
    rep = VerificationReport(f"freeness eps={int(params.epsilon)}")
    for k in range(window.k_max + 1):
        rep.add("freeness", params.epsilon, (("k", k),), act(params, 0, 0, _mono(k)) - T * _mono(k))
    return rep


def check_oracle_equivalence(window: Window) -> VerificationReport:
    """Monomial and derivative forms of the W(-1) action agree."""
    params = ModuleParams.symbolic(-1)
    rep = VerificationReport("oracle-equivalence eps=-1")
    for i, m, k in window.points():
        f = _mono(k)
        rep.add("wm1-deriv", -1, (("i", i), ("m", m), ("k", k)), act_wm1(i, m, f, params) - act_wm1_deriv(i, m, f, params))
    return rep


def check_vir_reduction(eps, window: Window) -> VerificationReport:
    """``L[i,0]`` acts exactly as the Virasoro generator ``L_i``."""
    params = ModuleParams.symbolic(eps)
    rep = VerificationReport(f"vir-reduction eps={int(params.epsilon)}")
    for i in range(-window.i_max, window.i_max + 1):
        for k in range(window.k_max + 1):
            f = _mono(k)
            rep.add("m0-reduction", params.epsilon, (("i", i), ("k", k)), act(params, i, 0, f) - act_vir(i, f, params))
    return rep


def check_expansion_identities(eps, window: Window) -> VerificationReport:
    """``L[i,m] . t^k`` equals its rewriting through the values on 1."""
    params = ModuleParams.symbolic(eps)
    oracle = family_oracle(params)
    rep = VerificationReport(f"expansion eps={int(params.epsilon)}")
    for i, m, k in window.points():
        diff = act(params, i, m, _mono(k)) - expansion_rhs(params.epsilon, i, m, k, oracle)
        rep.add("expansion", params.epsilon, (("i", i), ("m", m), ("k", k)), diff)
    return rep


def check_lie_structure(eps, i_max: int = 4, m_max: int = 4, decomposition_window: tuple[int, int] = (3, 4)) -> VerificationReport:
    """Antisymmetry, Jacobi, the Virasoro slice, and generator decompositions."""
    eps = Epsilon.coerce(eps)
    rep = VerificationReport(f"lie eps={int(eps)}")
    basis = [(i, m) for i in range(-i_max, i_max + 1) for m in range(m_max + 1)]
    cache: dict[tuple, LieElt] = {}

    def br(x, y):
        key = (x, y)
        if key not in cache:
            cache[key] = bracket(eps, L(*x), L(*y))
        return cache[key]

    def br_elt(x: tuple[int, int], y: LieElt) -> LieElt:
        out = LieElt()
        for key, c in y.items():
            out = out + br(x, key) * c
        return out

    for x, y in itertools.product(basis, basis):
        s = br(x, y) + br(y, x)
        rep.add("antisymmetry", eps, (("i", x[0]), ("m", x[1]), ("j", y[0]), ("n", y[1])), None if not s else str(s), passed=not s)
    for x, y, z in itertools.product(basis, repeat=3):
        jac = br_elt(x, br(y, z)) + br_elt(y, br(z, x)) + br_elt(z, br(x, y))
        point = (("x", f"{x[0]}:{x[1]}"), ("y", f"{y[0]}:{y[1]}"), ("z", f"{z[0]}:{z[1]}"))
        rep.add("jacobi", eps, point, str(jac) if jac else None, passed=not jac)
    for i in range(-i_max, i_max + 1):
        for j in range(-i_max, i_max + 1):
            diff = br((i, 0), (j, 0)) - L(i + j, 0) * (j - i)
            rep.add("vir-slice", eps, (("i", i), ("j", j)), str(diff) if diff else None, passed=not diff)
    di, dm = decomposition_window
    for i in range(-di, di + 1):
        for m in range(dm + 1):
            diff = evaluate_tree(eps, generator_decomposition(eps, i, m)) - L(i, m)
            rep.add("decomposition", eps, (("i", i), ("m", m)), str(diff) if diff else None, passed=not diff)
    return rep


def _random_rat(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        if x or not nonzero:
            return x


def check_param_extraction(eps, samples: int = 20, seed: int = 0) -> VerificationReport:
    """Recover random admissible (lambda, alpha, beta) from their own action."""
    eps = Epsilon.coerce(eps)
    rng = random.Random(seed)
    rep = VerificationReport(f"parameter extraction eps={int(eps)}")
    for _ in range(samples):
        triple = (_random_rat(rng, nonzero=True), _random_rat(rng), _random_rat(rng))
        params = ModuleParams.numeric(eps, *triple)
        point = tuple(zip(("lambda", "alpha", "beta"), (str(x) for x in triple)))
        try:
            got = extract_params(family_oracle(params), eps)
        except ValueError as exc:
            rep.add("extract-roundtrip", eps, point, str(exc), passed=False)
            continue
        ok = tuple(Fraction(x) for x in got) == triple
        rep.add("extract-roundtrip", eps, point, f"recovered {got}", passed=ok)
    return rep


# -- sequence relation -------------------------------------------------------

@dataclass(frozen=True)
class SequenceResult:
    passed: bool
    violation: Optional[tuple[int, int]] = None
    geometric: bool = True

    def __bool__(self):
        return self.passed


def sequence_residual(seq: Sequence[Rat], m: int, n: int) -> Rat:
    """LHS - RHS of b_{m+n} + (n-m) b_{m+n+1} = b_n b_m + n b_m b_{n+1} - m b_n b_{m+1}."""
    b = seq
    lhs = b[m + n] + (n - m) * b[m + n + 1]
    rhs = b[n] * b[m] + n * b[m] * b[n + 1] - m * b[n] * b[m + 1]
    return lhs - rhs


def check_sequence(seq: Sequence) -> SequenceResult:
    """Test the sequence relation at every (m, n) with m + n + 1 < len(seq).

    Pairs are visited by increasing m + n, then increasing m; the first
    violation is reported.  On success, ``geometric`` records whether
    b_m == b_1**m for the whole sequence (which a passing sequence must satisfy).
    """
    vals = [as_rat(Fraction(x) if isinstance(x, str) else x) for x in seq]
    if not vals or vals[0] != 1:
        raise ValueError("sequence must start with b_0 = 1")
    top = len(vals) - 1
    for total in range(top):
        for m in range(total + 1):
            n = total - m
            if sequence_residual(vals, m, n) != 0:
                return SequenceResult(False, (m, n), _is_geometric(vals))
    return SequenceResult(True, None, _is_geometric(vals))


def _is_geometric(vals) -> bool:
    b1 = vals[1] if len(vals) > 1 else 0
    return all(v == b1**k for k, v in enumerate(vals))


# -- combinatorial identities ------------------------------------------------

def check_identities(k_max: int) -> VerificationReport:
    """Alternating-sum observations for k <= k_max and Pascal's rule for n <= k_max."""
    rep = VerificationReport(f"identities k_max={k_max}")
    for k in range(k_max + 1):
        pairs = [(s, k - s) for s in range(k + 1)]
        got = sum((-1) ** (s + r) for s, r in pairs)
        rep.add("alt-sum", None, (("k", k),), f"{got} != {(-1) ** k * (k + 1)}", passed=got == (-1) ** k * (k + 1))
        got = sum((-1) ** (s + r + 1) for s, r in pairs)
        rep.add("alt-sum-neg", None, (("k", k),), f"{got} != {(-1) ** (k + 1) * (k + 1)}", passed=got == (-1) ** (k + 1) * (k + 1))
        got = sum((-1) ** (s + r + 1) * (r + 1) for s, r in pairs)
        got += sum((-1) ** (s + r) * r for s, r in ((s, k + 1 - s) for s in range(k + 2)))
        want = (-1) ** (k + 1) * (k + 1) * (k + 2)
        rep.add("weighted-alt-sum", None, (("k", k),), f"{got} != {want}", passed=got == want)
    for n in range(2, k_max + 1):
        for m in range(1, n):
            ok = binom(n - 1, m) + binom(n - 1, m - 1) == binom(n, m)
            rep.add("pascal", None, (("n", n), ("m", m)), "pascal rule violated", passed=ok)
    return rep


# -- simplicity probe --------------------------------------------------------

class ProbeStatus(str, Enum):
    FOUND = "found"
    NOT_FOUND = "not-found-within-budget"
    CERTIFIED = "certified-contained-in-tSubmodule"


@dataclass
class ProbeResult:
    status: ProbeStatus
    span_dim: int
    layer_dims: list[int] = field(default_factory=list)
    certificate: Optional[VerificationReport] = None

    def __str__(self):
        return f"{self.status.value} (span dim {self.span_dim}, layers {self.layer_dims})"


class _Echelon:
    """Incremental exact row echelon form for vectors {degree: rational}."""

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    def reduce(self, v: dict[int, Fraction]) -> dict[int, Fraction]:
        v = dict(v)
        while v:
            d = max(v)
            row = self.rows.get(d)
            if row is None:
                return v
            c = v[d]
            for e, x in row.items():
                y = v.get(e, 0) - c * x
                if y:
                    v[e] = y
                else:
                    v.pop(e, None)
        return v

    def add(self, v) -> Optional[dict[int, Fraction]]:
        r = self.reduce(v)
        if not r:
            return None
        d = max(r)
        lead = r[d]
        self.rows[d] = {e: Fraction(x) / lead for e, x in r.items()}
        return r

    def __len__(self):
        return len(self.rows)


def _as_vector(p: TPoly) -> dict[int, Fraction]:
    out = {}
    for k, c in p.coeffs().items():
        out[k] = Fraction(c.constant_value())
    return out


def simplicity_probe(
    eps,
    lam,
    alpha,
    beta,
    start: TPoly,
    i_max: int = 2,
    m_max: int = 2,
    word_len: int = 2,
) -> ProbeResult:
    """Search the span of ``w . start`` (words w of length <= word_len) for the constant 1.

    Generators are L[i,m] with |i| <= i_max, m <= m_max.  A not-found result is
    inconclusive.  With alpha = 0 and ``start`` in t*Q[t], the result is instead
    certified: the symbolic submodule check covering every reachable degree
    must pass, and no explored vector may have a constant term.
    """
    if not isinstance(start, TPoly):
        start = TPoly.lift(start)
    if start.is_zero():
        raise ValueError("start vector must be nonzero")
    params = ModuleParams.numeric(eps, lam, alpha, beta)
    gens = [(i, m) for i in range(-i_max, i_max + 1) for m in range(m_max + 1)]
    v0 = _as_vector(start)

    ech = _Echelon()
    ech.add(v0)
    frontier = [start]
    dims = [len(ech)]
    stays_in_t = v0.get(0, 0) == 0
    for _ in range(word_len):
        new = []
        for vec in frontier:
            for i, m in gens:
                img = act(params, i, m, vec)
                w = _as_vector(img)
                if w.get(0, 0) != 0:
                    stays_in_t = False
                if ech.add(w) is not None:
                    new.append(img)
        dims.append(len(ech))
        frontier = new
        if not frontier:
            break
    found = not ech.reduce({0: Fraction(1)})

    if as_rat(alpha) == 0 and v0.get(0, 0) == 0:
        deg = int(start.degree) + word_len
        cert = check_submodule_and_quotient(eps, Window(i_max, m_max, max(deg - 1, 0)))
        if cert.passed and stays_in_t and not found:
            return ProbeResult(ProbeStatus.CERTIFIED, len(ech), dims, cert)
        raise AssertionError("submodule certification failed at alpha = 0")
    return ProbeResult(ProbeStatus.FOUND if found else ProbeStatus.NOT_FOUND, len(ech), dims)
