"""Command line front end.

Subcommands: eval, fit, trajectory, regime, calibrate-xi, reduce, verify.

Exit codes are a stable contract: 0 on success (or a passing
verification), 1 on a failed verification, 2 on usage or input errors.
Numeric output prints with 12 significant digits; all commands are
deterministic for identical flags and input bytes.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Sequence

from .errors import VesprodError
from .families import (
    CESParams,
    CobbDouglasParams,
    FamilySpec,
    LiuHildebrandParams,
    LogLinearParams,
    LuFletcherParams,
    SatoHoffmanParams,
    VESParams,
    eval_extensive,
    eval_intensive,
    reduce_special_case,
    ves_from_loglinear,
)
from .substitution import (
    RegimeCase,
    classify_regime,
    mrs_closed,
    mrs_derivative_closed,
    sigma_closed,
    sigma_derivative_closed,
    validity_range,
)
from .estimation import (
    Relation,
    calibrate_xi,
    diagnose_fit,
    fit_loglinear,
    load_dataset,
)
from .oracles import (
    VerificationReport,
    ode_integrate_theorem,
    verify_equivalence_lh_lf,
    verify_family,
    verify_reduction,
    verify_sato_hoffman,
)

TRAJECTORY_HEADER = "k,y,R,R_prime,sigma,sigma_prime"

_REGIME_TEXT = {
    RegimeCase.VES_CASE_I: "case i",
    RegimeCase.VES_CASE_II: "case ii",
    RegimeCase.VES_CASE_III: "case iii",
    RegimeCase.LH_CES_LIMIT: "LH CES limit",
    RegimeCase.LH_CD_LIMIT: "LH CD limit",
    RegimeCase.CONSTANT_SIGMA: "constant sigma",
    RegimeCase.UNIT_SIGMA: "unit sigma",
}


class _UsageError(Exception):
    pass


def _fmt(value: float) -> str:
    return format(value, "#.12g")


# --------------------------------------------------------------------------
# Flag groups and spec assembly
# --------------------------------------------------------------------------

_STRUCTURAL = ("lam", "mu", "theta", "psi")
_REGRESSION = ("a", "ln_a", "b", "c")


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("family parameters")
    g.add_argument("--family", choices=["ves", "ces", "cd", "lh", "lf", "sh"],
                   help="production-function family")
    g.add_argument("--a", type=float, help="scale constant of the log-linear relation")
    g.add_argument("--ln-a", dest="ln_a", type=float,
                   help="intercept ln(a) (alternative to --a)")
    g.add_argument("--b", type=float, help="slope on the log price term")
    g.add_argument("--c", type=float, help="slope on ln k")
    g.add_argument("--xi", type=float, help="integration constant xi")
    g.add_argument("--zeta", type=float, help="integration constant zeta (lf)")
    g.add_argument("--lambda", dest="lam", type=float, help="structural lambda (ves)")
    g.add_argument("--mu", type=float, help="structural mu (ves)")
    g.add_argument("--theta", type=float, help="structural theta (ves)")
    g.add_argument("--psi", type=float, help="structural scale psi (ves)")
    g.add_argument("--A", type=float, help="scale A (cd)")
    g.add_argument("--beta", type=float, help="capital share beta (cd)")
    g.add_argument("--gamma", type=float, help="scale gamma (ces, sh)")
    g.add_argument("--delta", type=float, help="distribution parameter delta (ces, sh)")
    g.add_argument("--sigma", type=float, help="elasticity sigma (ces)")
    g.add_argument("--rho", type=float, help="rho (sh)")
    g.add_argument("--alpha", type=float, help="degree alpha (sh, default 1)")


def _given(args: argparse.Namespace, names: Sequence[str]) -> list[str]:
    return [n for n in names if getattr(args, n, None) is not None]


def _need(args: argparse.Namespace, names: Sequence[str], family: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-").replace("lam", "lambda")
                          for n in missing)
        raise _UsageError(f"family '{family}' needs {flags}")


def _scale_a(args: argparse.Namespace) -> float:
    if args.a is not None and args.ln_a is not None:
        raise _UsageError("give either --a or --ln-a, not both")
    if args.a is not None:
        return args.a
    if args.ln_a is not None:
        return math.exp(args.ln_a)
    raise _UsageError("missing --a (or --ln-a)")


def _loglinear_from_args(args: argparse.Namespace,
                         xi_required: bool = True) -> LogLinearParams:
    a = _scale_a(args)
    if args.b is None or args.c is None:
        raise _UsageError("missing --b or --c")
    if xi_required and args.xi is None:
        raise _UsageError("missing --xi")
    return LogLinearParams(a=a, b=args.b, c=args.c, xi=args.xi)


def _spec_from_args(args: argparse.Namespace) -> FamilySpec:
    family = args.family
    if family is None:
        raise _UsageError("missing --family")
    if family == "ves":
        structural = _given(args, _STRUCTURAL)
        regression = _given(args, _REGRESSION + ("xi",))
        if structural and regression:
            raise _UsageError("do not mix structural (--lambda/--mu/--theta/--psi) "
                              "and regression (--a/--b/--c/--xi) parameters")
        if structural:
            _need(args, _STRUCTURAL, "ves")
            return VESParams(lam=args.lam, mu=args.mu, theta=args.theta, psi=args.psi)
        if regression:
            return ves_from_loglinear(_loglinear_from_args(args))
        raise _UsageError("family 'ves' needs --lambda/--mu/--theta/--psi "
                          "or --a/--b/--c/--xi")
    if family == "ces":
        _need(args, ("gamma", "delta", "sigma"), "ces")
        return CESParams(gamma=args.gamma, delta=args.delta, sigma=args.sigma)
    if family == "cd":
        _need(args, ("A", "beta"), "cd")
        return CobbDouglasParams(A=args.A, beta=args.beta)
    if family == "lh":
        p = _loglinear_from_args(args)
        return LiuHildebrandParams(a=p.a, b=p.b, c=p.c, xi=p.xi)
    if family == "lf":
        a = _scale_a(args)
        _need(args, ("b", "c", "zeta"), "lf")
        return LuFletcherParams(a=a, b=args.b, c=args.c, zeta=args.zeta)
    if family == "sh":
        _need(args, ("gamma", "delta", "rho"), "sh")
        alpha = 1.0 if args.alpha is None else args.alpha
        return SatoHoffmanParams(gamma=args.gamma, delta=args.delta,
                                 rho=args.rho, alpha=alpha)
    raise _UsageError(f"unknown family {family!r}")


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def _cmd_eval(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    have_k = args.k is not None
    have_KL = args.K is not None or args.L is not None
    if have_k == have_KL or (have_KL and (args.K is None or args.L is None)):
        raise _UsageError("give exactly one of --k or the pair --K and --L")
    if have_k:
        value = eval_intensive(spec, args.k)
    else:
        value = eval_extensive(spec, args.K, args.L)
    print(_fmt(value))
    return 0


def _fit_lines(report) -> list[str]:
    price = "r" if report.relation is Relation.RENTAL else "w"
    vals = [_fmt(report.intercept_ln_a.value), _fmt(report.b_hat.value),
            _fmt(report.c_hat.value)]
    ses = [f"({_fmt(report.intercept_ln_a.stderr)})",
           f"({_fmt(report.b_hat.stderr)})",
           f"({_fmt(report.c_hat.stderr)})"]
    prefix = "ln(y) = "
    seps = [" + ", f" ln({price}) + ", " ln(k)"]
    line1 = prefix + vals[0] + seps[0] + vals[1] + seps[1] + vals[2] + seps[2]
    columns = [len(prefix),
               len(prefix) + len(vals[0]) + len(seps[0]),
               len(prefix) + len(vals[0]) + len(seps[0]) + len(vals[1]) + len(seps[1])]
    line2 = ""
    for col, se in zip(columns, ses):
        if len(line2) < col:
            line2 += " " * (col - len(line2))
        elif line2:
            line2 += " "
        line2 += se
    return [f"relation: {report.relation.value}",
            f"n_obs: {report.n_obs}",
            line1,
            line2,
            f"residual_variance = {_fmt(report.residual_variance)}",
            f"r_squared = {_fmt(report.r_squared)}"]


def _cmd_fit(args: argparse.Namespace) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        source = fh.read()
    dataset = load_dataset(source)
    report = fit_loglinear(dataset, args.relation)
    for line in _fit_lines(report):
        print(line)
    if args.diagnose:
        diag = diagnose_fit(dataset, report)
        print("diagnostics:")
        print(f"  b_plus_c = {_fmt(diag.b_plus_c)}")
        print(f"  dist_to_unity = {_fmt(diag.dist_to_unity)}")
        print(f"  c_significance = {_fmt(diag.c_significance)}")
        if diag.capital_share_range is None:
            print("  capital_share_range = (no rental column)")
            print("  share_restriction_violated = (no rental column)")
        else:
            lo, hi = diag.capital_share_range
            print(f"  capital_share_range = [{_fmt(lo)}, {_fmt(hi)}]")
            print(f"  share_restriction_violated = "
                  f"{'true' if diag.share_restriction_violated else 'false'}")
        if diag.dist_to_unity < 1e-6:
            print("b+c within 1e-6 of unity: marginal rate of substitution degenerates")
    return 0


def _cmd_trajectory(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    if args.points < 2:
        raise _UsageError("--points must be at least 2")
    if not 0.0 < args.k_from < args.k_to:
        raise _UsageError("need 0 < --k-from < --k-to")
    interval = validity_range(spec, args.k_from, args.k_to)
    lo, hi = interval.clip(args.k_from, args.k_to)
    # keep strictly inside a binding boundary
    if not interval.is_empty:
        if lo == interval.k_low and interval.k_low > args.k_from:
            lo *= 1.0 + 1e-9
        if hi == interval.k_high and interval.k_high < args.k_to:
            hi *= 1.0 - 1e-9
    print(TRAJECTORY_HEADER)
    ratio = hi / lo
    n = args.points
    for i in range(n):
        k = lo * ratio ** (i / (n - 1))
        row = (k, eval_intensive(spec, k), mrs_closed(spec, k),
               mrs_derivative_closed(spec, k), sigma_closed(spec, k),
               sigma_derivative_closed(spec, k))
        print(",".join(_fmt(v) for v in row))
    return 0


def _cmd_regime(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    report = classify_regime(spec)
    print(f"{_REGIME_TEXT[report.case_label]}, limit {_fmt(report.sigma_limit)}, "
          f"{report.monotonicity.value}")
    return 0


def _cmd_calibrate_xi(args: argparse.Namespace) -> int:
    p = _loglinear_from_args(args, xi_required=False)
    xi = calibrate_xi(p, args.k0)
    print(f"xi = {_fmt(xi)}")
    print(f"criterion: R(k0) = 0 at k0 = {_fmt(args.k0)}; "
          "pass --xi explicitly to use a different rule")
    return 0


def _cmd_reduce(args: argparse.Namespace) -> int:
    p = _loglinear_from_args(args, xi_required=False)
    reduced = reduce_special_case(p, tol=args.tol)
    if isinstance(reduced, CobbDouglasParams):
        print(f"cobb-douglas: A = {_fmt(reduced.A)}, beta = {_fmt(reduced.beta)}")
    elif isinstance(reduced, CESParams):
        print(f"ces: gamma = {_fmt(reduced.gamma)}, delta = {_fmt(reduced.delta)}, "
              f"sigma = {_fmt(reduced.sigma)}")
    else:
        xi_text = "unset" if reduced.xi is None else _fmt(reduced.xi)
        print(f"ves (no special case within tol): a = {_fmt(reduced.a)}, "
              f"b = {_fmt(reduced.b)}, c = {_fmt(reduced.c)}, xi = {xi_text}")
    return 0


_SUITE_TOL = {
    "family": 1e-6,
    "equivalence": 1e-10,
    "ode": 1e-9,
    "sato-hoffman": 1e-6,
    "reduction": 1e-10,
}


def _print_report(report: VerificationReport) -> int:
    status = "PASS" if report.passed else "FAIL"
    print(f"{report.check_name}: {report.points_checked} points, "
          f"max_rel_error = {report.max_rel_error:.6e}, "
          f"tolerance = {report.tolerance:g}: {status}")
    if report.worst_k is not None:
        print(f"worst: k = {_fmt(report.worst_k)}, quantity = {report.worst_quantity}")
    return 0 if report.passed else 1


def _log_grid(lo: float, hi: float, n: int) -> list[float]:
    if not 0.0 < lo < hi:
        raise _UsageError("need 0 < --k-from < --k-to")
    if n < 2:
        raise _UsageError("--points must be at least 2")
    ratio = hi / lo
    return [lo * ratio ** (i / (n - 1)) for i in range(n)]


def _cmd_verify(args: argparse.Namespace) -> int:
    tol = args.tolerance if args.tolerance is not None else _SUITE_TOL[args.suite]

    if args.suite == "family":
        if args.family is None:
            spec: FamilySpec = VESParams(lam=0.0, mu=1.0, theta=2.0, psi=1.0)
        else:
            spec = _spec_from_args(args)
        lo = args.k_from if args.k_from is not None else 0.5
        hi = args.k_to if args.k_to is not None else 20.0
        n = args.points if args.points is not None else 64
        report = verify_family(spec, _log_grid(lo, hi, n), tolerance=tol)
        return _print_report(report)

    if args.suite == "equivalence":
        if _given(args, ("a", "ln_a", "b", "c", "xi")):
            p = _loglinear_from_args(args)
        else:
            p = LogLinearParams(a=1.0, b=0.5, c=0.2, xi=-1.0)
        lo = args.k_from if args.k_from is not None else 0.1
        hi = args.k_to if args.k_to is not None else 10.0
        n = args.points if args.points is not None else 50
        report = verify_equivalence_lh_lf(p, _log_grid(lo, hi, n), tolerance=tol)
        return _print_report(report)

    if args.suite == "ode":
        if _given(args, _STRUCTURAL) or _given(args, _REGRESSION + ("xi",)):
            args.family = "ves"
            v = _spec_from_args(args)
            if not isinstance(v, VESParams):
                raise _UsageError("the ode suite needs ves parameters")
        else:
            v = VESParams(lam=0.0, mu=1.0, theta=2.0, psi=1.0)
        k_start = args.k_from if args.k_from is not None else 1.0
        k_end = args.k_to if args.k_to is not None else 2.0
        steps = args.steps if args.steps is not None else 10000
        y_start = eval_intensive(v, k_start)
        y_end = ode_integrate_theorem(v, k_start, y_start, k_end, steps)
        y_ref = eval_intensive(v, k_end)
        rel = abs(y_end - y_ref) / abs(y_ref)
        report = VerificationReport(
            check_name="ode", max_abs_error=abs(y_end - y_ref), max_rel_error=rel,
            points_checked=steps, tolerance=tol, passed=rel <= tol,
            worst_k=k_end, worst_quantity="y")
        return _print_report(report)

    if args.suite == "sato-hoffman":
        gamma = args.gamma if args.gamma is not None else 1.0
        delta = args.delta if args.delta is not None else 0.5
        rho = args.rho if args.rho is not None else 0.5
        s = SatoHoffmanParams(gamma=gamma, delta=delta, rho=rho)
        bound = s.k_upper_bound()
        default_hi = 10.0 if math.isinf(bound) else 0.93 * bound
        lo = args.k_from if args.k_from is not None else default_hi / 30.0
        hi = args.k_to if args.k_to is not None else default_hi
        n = args.points if args.points is not None else 32
        report = verify_sato_hoffman(s, _log_grid(lo, hi, n), tolerance=tol)
        return _print_report(report)

    if args.suite == "reduction":
        if _given(args, ("a", "ln_a", "b", "c", "xi")):
            p = _loglinear_from_args(args)
        else:
            p = LogLinearParams(a=1.0, b=0.6, c=1.0, xi=-1.0)
        target = reduce_special_case(p)
        if isinstance(target, LogLinearParams):
            raise _UsageError("parameters do not reduce to a special case; "
                              "nothing to verify")
        if isinstance(target, CobbDouglasParams):
            raise _UsageError("b = 0 is unreachable through the general closed "
                              "form; only the c = 1 (ces) reduction can be "
                              "verified pointwise")
        spec = ves_from_loglinear(p)
        lo = args.k_from if args.k_from is not None else 0.1
        hi = args.k_to if args.k_to is not None else 10.0
        n = args.points if args.points is not None else 50
        report = verify_reduction(spec, target, _log_grid(lo, hi, n), tolerance=tol)
        return _print_report(report)

    raise _UsageError(f"unknown suite {args.suite!r}")


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vesprod",
        description="Evaluate, estimate, and verify production functions with "
                    "variable elasticity of factor substitution.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate y(k) or F(K, L)")
    _add_param_flags(p_eval)
    p_eval.add_argument("--k", type=float, help="capital-labor ratio")
    p_eval.add_argument("--K", type=float, help="capital input")
    p_eval.add_argument("--L", type=float, help="labor input")
    p_eval.set_defaults(func=_cmd_eval)

    p_fit = sub.add_parser("fit", help="ordinary least squares fit of a "
                                       "log-linear relation")
    p_fit.add_argument("input", help="delimited-text file (period,y,k[,r][,w])")
    p_fit.add_argument("--relation", choices=["rental", "wage"], required=True)
    p_fit.add_argument("--diagnose", action="store_true",
                       help="print degeneracy diagnostics")
    p_fit.set_defaults(func=_cmd_fit)

    p_traj = sub.add_parser("trajectory",
                            help="emit k,y,R,R_prime,sigma,sigma_prime rows")
    _add_param_flags(p_traj)
    p_traj.add_argument("--k-from", dest="k_from", type=float, required=True)
    p_traj.add_argument("--k-to", dest="k_to", type=float, required=True)
    p_traj.add_argument("--points", type=int, default=200)
    p_traj.set_defaults(func=_cmd_trajectory)

    p_regime = sub.add_parser("regime", help="classify the elasticity regime")
    _add_param_flags(p_regime)
    p_regime.set_defaults(func=_cmd_regime)

    p_cal = sub.add_parser("calibrate-xi",
                           help="solve R(k0) = 0 for the integration constant")
    _add_param_flags(p_cal)
    p_cal.add_argument("--k0", type=float, required=True,
                       help="starting capital-labor ratio")
    p_cal.set_defaults(func=_cmd_calibrate_xi)

    p_red = sub.add_parser("reduce", help="collapse parameters onto a special case")
    _add_param_flags(p_red)
    p_red.add_argument("--tol", type=float, default=1e-9)
    p_red.set_defaults(func=_cmd_reduce)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    _add_param_flags(p_verify)
    p_verify.add_argument("--suite", required=True,
                          choices=["family", "equivalence", "ode",
                                   "sato-hoffman", "reduction"])
    p_verify.add_argument("--k-from", dest="k_from", type=float)
    p_verify.add_argument("--k-to", dest="k_to", type=float)
    p_verify.add_argument("--points", type=int)
    p_verify.add_argument("--steps", type=int, help="integration steps (ode suite)")
    p_verify.add_argument("--tolerance", type=float,
                          help="override the suite's default tolerance")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints its own message
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except VesprodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
