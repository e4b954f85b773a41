"""Exact verification toolkit for W(eps) Lie algebras and their rank-one modules.

W(eps), eps in {1, -1}, has basis L[i,m] (i in Z, m >= 0) with bracket

    [L[i,m], L[j,n]] = (j - i) L[i+j, m+n] + eps (m - n) L[i+j, m+n-eps].

The modules Omega(lambda, alpha, beta) are Q[t] with L[0,0] acting as t.
Everything is exact: rational coefficients, symbolic parameters l, a, b.
"""

from .algebra import (
    ALPHA,
    BETA,
    LAM,
    ONE,
    T,
    CoefPoly,
    TPoly,
    binom,
    format_poly,
    parse_poly,
    parse_rat,
    parse_tpoly,
)
from .classify import (
    build_w1_base_system,
    build_wm1_system,
    derive_sequence_steps,
    solve_system,
    verify_closed_forms,
)
from .lie import Epsilon, L, LieElt, bracket, evaluate_tree, generator_decomposition
from .modules import (
    ModuleParams,
    act,
    act_vir,
    act_w1,
    act_wm1,
    act_wm1_deriv,
    check_shift_iso,
    closed_form_on_one,
    extract_params,
)
from .report import VerificationReport
from .verify import (
    Window,
    check_module_axiom,
    check_sequence,
    simplicity_probe,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA",
    "BETA",
    "LAM",
    "ONE",
    "T",
    "CoefPoly",
    "TPoly",
    "binom",
    "format_poly",
    "parse_poly",
    "parse_rat",
    "parse_tpoly",
    "build_w1_base_system",
    "build_wm1_system",
    "derive_sequence_steps",
    "solve_system",
    "verify_closed_forms",
    "Epsilon",
    "L",
    "LieElt",
    "bracket",
    "evaluate_tree",
    "generator_decomposition",
    "ModuleParams",
    "act",
    "act_vir",
    "act_w1",
    "act_wm1",
    "act_wm1_deriv",
    "check_shift_iso",
    "closed_form_on_one",
    "extract_params",
    "VerificationReport",
    "Window",
    "check_module_axiom",
    "check_sequence",
    "simplicity_probe",
]
