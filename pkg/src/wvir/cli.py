"""Batch command-line front end.

Exit status: 0 when everything passes, 1 on a failed check or a probe that
does not find its target, 2 on a usage error (one-line diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .algebra import format_poly, parse_rat, parse_tpoly
from .classify import (
    MODES,
    build_w1_base_system,
    build_wm1_system,
    certify_sequence_acceptance,
    derive_sequence_steps,
    format_solution,
    format_system,
    solve_system,
    verify_closed_forms,
)
from .lie import Epsilon
from .modules import ModuleParams, act, check_shift_iso
from .verify import (
    ProbeStatus,
    Window,
    check_expansion_identities,
    check_freeness,
    check_identities,
    check_lie_structure,
    check_module_axiom,
    check_oracle_equivalence,
    check_param_extraction,
    check_sequence,
    check_submodule_and_quotient,
    check_vir_reduction,
    simplicity_probe,
)

SUITES = (
    "axioms",
    "submodule",
    "shift-iso",
    "freeness",
    "oracle",
    "vir-reduction",
    "expansion",
    "closed-forms",
    "lie",
    "extraction",
    "identities",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str):
    try:
        return parse_rat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed rational {text!r} (expected p/q or an integer)")


def _epsilon(text: str) -> Epsilon:
    try:
        return Epsilon.coerce(int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"epsilon must be 1 or -1, got {text!r}")


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _add_params(p: argparse.ArgumentParser, *, allow_symbolic: bool = True) -> None:
    if allow_symbolic:
        p.add_argument("--symbolic", action="store_true", help="keep lambda, alpha, beta symbolic (default)")
    p.add_argument("--lambda", dest="lam", type=_rational, help="numeric lambda (nonzero)")
    p.add_argument("--alpha", type=_rational, help="numeric alpha")
    p.add_argument("--beta", type=_rational, help="numeric beta")


def _add_window(p: argparse.ArgumentParser, i=3, m=3, k=5) -> None:
    p.add_argument("--i-max", type=_nonneg, default=i)
    p.add_argument("--m-max", type=_nonneg, default=m)
    p.add_argument("--k-max", type=_nonneg, default=k)


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", "-o", help="write the report to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wvir", description="Verify W(eps) Lie algebra modules Omega(lambda, alpha, beta).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("act", help="evaluate L[i,m] . f")
    p.add_argument("--epsilon", type=_epsilon, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--poly", required=True, help="polynomial in t (core grammar)")
    _add_params(p)
    _add_output(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--epsilon", type=_epsilon, default=None, help="1 or -1 (default: both)")
    _add_window(p)
    _add_params(p)
    p.add_argument("--samples", type=_nonneg, default=20, help="extraction: random triples per epsilon")
    p.add_argument("--seed", type=int, default=0)
    _add_output(p)

    p = sub.add_parser("classify", help="build and solve a degree-obstruction system")
    p.add_argument("--epsilon", type=_epsilon, required=True)
    p.add_argument("--degree", type=_nonneg, required=True, help="ansatz degree (K for eps=1, N for eps=-1)")
    p.add_argument("--mode", choices=MODES, default="symbolic")
    p.add_argument("--samples", type=_nonneg, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", action="store_true", help="print the instantiated relations")
    _add_output(p)

    p = sub.add_parser("sequence", help="check the sequence relation or print its derivation")
    p.add_argument("--values", help="comma-separated b_0, b_1, ... (rationals)")
    p.add_argument("--derive", action="store_true", help="print the derivation steps and certificate")
    p.add_argument("--max-m", type=_nonneg, default=12)
    _add_output(p)

    p = sub.add_parser("probe", help="simplicity probe: search the generated span for 1")
    p.add_argument("--epsilon", type=_epsilon, required=True)
    _add_params(p, allow_symbolic=False)
    p.add_argument("--start", default="t^1", help="start vector (polynomial in t)")
    p.add_argument("--i-max", type=_nonneg, default=2)
    p.add_argument("--m-max", type=_nonneg, default=2)
    p.add_argument("--word-len", type=_nonneg, default=2)
    _add_output(p)
    return parser


def _params(args, eps) -> ModuleParams:
    given = [v is not None for v in (args.lam, args.alpha, args.beta)]
    symbolic = getattr(args, "symbolic", False)
    if symbolic and any(given):
        raise UsageError("--symbolic cannot be combined with --lambda/--alpha/--beta")
    if args.lam is not None and args.lam == 0:
        raise UsageError("lambda must be nonzero")
    if symbolic or not any(given):
        return ModuleParams.symbolic(eps)
    if not all(given):
        return ModuleParams.symbolic(eps, lam=args.lam, alpha=args.alpha, beta=args.beta)
    return ModuleParams.numeric(eps, args.lam, args.alpha, args.beta)


def _epsilons(args):
    return [args.epsilon] if args.epsilon is not None else [Epsilon.PLUS, Epsilon.MINUS]


def _run_act(args):
    if args.m < 0:
        raise UsageError(f"m must be nonnegative, got {args.m}")
    params = _params(args, args.epsilon)
    try:
        f = parse_tpoly(args.poly)
    except ValueError as exc:
        raise UsageError(f"bad --poly: {exc}")
    return format_poly(act(params, args.i, args.m, f)) + "\n", True


def _run_verify(args):
    win = Window(args.i_max, args.m_max, args.k_max)
    numeric = any(v is not None for v in (args.lam, args.alpha, args.beta))
    if numeric and args.suite != "axioms":
        raise UsageError("numeric parameters are only accepted by the axioms suite")
    if args.suite == "oracle" and args.epsilon == Epsilon.PLUS:
        raise UsageError("the derivative-form oracle exists only for epsilon -1")
    out, ok = [], True
    for eps in _epsilons(args):
        if args.suite == "axioms":
            rep = check_module_axiom(eps, win, _params(args, eps))
        elif args.suite == "submodule":
            rep = check_submodule_and_quotient(eps, win)
        elif args.suite == "shift-iso":
            rep = check_shift_iso(eps, args.i_max, args.m_max, args.k_max)
        elif args.suite == "freeness":
            rep = check_freeness(eps, win)
        elif args.suite == "oracle":
            if eps != Epsilon.MINUS:
                continue
            rep = check_oracle_equivalence(win)
        elif args.suite == "vir-reduction":
            rep = check_vir_reduction(eps, win)
        elif args.suite == "expansion":
            rep = check_expansion_identities(eps, win)
        elif args.suite == "closed-forms":
            rep = verify_closed_forms(eps, win)
        elif args.suite == "lie":
            rep = check_lie_structure(eps, args.i_max, args.m_max, (min(args.i_max, 3), args.m_max))
        elif args.suite == "extraction":
            rep = check_param_extraction(eps, args.samples, args.seed)
        else:
            rep = check_identities(args.k_max)
            out.append(rep.to_text())
            ok = rep.passed
            break
        out.append(rep.to_text())
        ok = ok and rep.passed
    return "".join(out), ok


def _run_classify(args):
    try:
        if args.epsilon == Epsilon.PLUS:
            if args.mode != "symbolic":
                raise UsageError("eps=1 systems are alpha-symbolic only; use --mode symbolic")
            sysm = build_w1_base_system(args.degree)
        else:
            sysm = build_wm1_system(args.degree, args.mode)
    except ValueError as exc:
        raise UsageError(str(exc))
    sol = solve_system(sysm, args.mode, samples=max(args.samples, 5), seed=args.seed)
    if args.epsilon == Epsilon.PLUS and args.degree <= 1:
        ok = sol.consistent and not sol.forced_zero
    else:
        ok = sol.forces(sysm.leading) and all(s.forces(sysm.leading) for s in sol.exceptional + sol.samples)
    if sol.agreement is False:
        ok = False
    return format_system(sysm, trace=args.trace) + format_solution(sol, ok), ok


def _run_sequence(args):
    if args.values is None and not args.derive:
        raise UsageError("sequence needs --values or --derive")
    out, ok = [], True
    if args.values is not None:
        try:
            vals = [parse_rat(v) for v in args.values.split(",")]
            res = check_sequence(vals)
        except ValueError as exc:
            raise UsageError(str(exc))
        where = "" if res.passed else f"\tviolation=m={res.violation[0]},n={res.violation[1]}"
        out.append(f"sequence\tstatus={'pass' if res.passed else 'fail'}\tgeometric={'yes' if res.geometric else 'no'}{where}\n")
        ok = res.passed
    if args.derive:
        try:
            steps = derive_sequence_steps(args.max_m)
        except ValueError as exc:
            raise UsageError(str(exc))
        out += [f"step\t{s}\n" for s in steps]
        cert = certify_sequence_acceptance(steps, args.max_m)
        out.append(cert.to_text())
        ok = ok and cert.passed
    return "".join(out), ok


def _run_probe(args):
    if any(v is None for v in (args.lam, args.alpha, args.beta)):
        raise UsageError("probe needs --lambda, --alpha and --beta")
    if args.lam == 0:
        raise UsageError("lambda must be nonzero")
    try:
        start = parse_tpoly(args.start)
        res = simplicity_probe(
            args.epsilon, args.lam, args.alpha, args.beta, start, args.i_max, args.m_max, args.word_len
        )
    except ValueError as exc:
        raise UsageError(str(exc))
    lines = [
        f"probe\tepsilon={int(args.epsilon)}\tstart={format_poly(start)}",
        f"status\t{res.status.value}",
        f"span-dim\t{res.span_dim}",
        "layers\t" + ",".join(map(str, res.layer_dims)),
    ]
    text = "\n".join(lines) + "\n"
    if res.certificate is not None:
        text += res.certificate.to_text()
    return text, res.status != ProbeStatus.NOT_FOUND


_HANDLERS = {
    "act": _run_act,
    "verify": _run_verify,
    "classify": _run_classify,
    "sequence": _run_sequence,
    "probe": _run_probe,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text, ok = _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"wvir: error: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the exit-time flush too
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
