"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 numerical failure.
"""

import argparse
import math
import sys

from . import bounds, exponents, tables
from .errors import DomainError, NumericalError
from .exponents import ClosedForm, ProblemParams
from .formatting import dumps, fmt_float

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_NUMERICAL = 4


class UsageError(Exception):
    pass


def _n_value(args):
    n = args.n
    if not args.allow_real_n and n != math.floor(n):
        raise UsageError(f"--n must be an integer (got {n}); pass --allow-real-n for real values")
    return int(n) if n == math.floor(n) and not args.allow_real_n else n


def _params(args):
    return ProblemParams(_n_value(args), args.s)


def _optional(x):
    return None if x is None or not math.isfinite(x) else x


# --- subcommand handlers: each returns a dict for JSON and lines for text ---


def cmd_exponents(args):
    rep = exponents.exponent_report(_params(args))
    data = {
        "n": rep.n,
        "s": rep.s,
        "a": rep.a_ns,
        "k1": rep.k1,
        "k2": rep.k2,
        "p1": rep.p1,
        "p2": rep.p2,
        "p2_infinite": rep.p2 is None,
        "p_sobolev": rep.p_sobolev,
        "hardy": rep.hardy,
        "regime": rep.regime.value,
    }
    return data, None


def cmd_root(args):
    params = _params(args)
    br = exponents.bracket_a(params)
    data = {
        "n": params.n,
        "s": params.s,
        "a": br.root,
        "lo": br.lo,
        "hi": br.hi,
        "width": br.width,
        "f": br.f_root,
        "a_max": exponents.a_domain(params).a_max,
        "evaluations": br.evaluations,
    }
    return data, [fmt_float(br.root)]


def cmd_critical_dim(args):
    n0 = exponents.critical_dimension(args.s)
    return {"s": float(args.s), "n0": n0}, [str(n0)]


def cmd_classify(args):
    params = _params(args)
    verdict = exponents.stability_gap(params, args.p)
    data = {
        "n": params.n,
        "s": params.s,
        "p": float(args.p),
        "state": verdict.state.value,
        "log_margin": verdict.log_margin,
    }
    return data, [f"{verdict.state.value} log_margin={fmt_float(verdict.log_margin)}"]


def cmd_verify(args):
    params = _params(args)
    rep = exponents.exponent_report(params)
    data = {
        "n": params.n,
        "s": params.s,
        "a": rep.a_ns,
        "f_at_a": exponents.f_eval(params, rep.a_ns),
        "residual_p1": exponents.log_margin(params, rep.p1),
        "residual_p2": None if rep.p2 is None else exponents.log_margin(params, rep.p2),
        "closed_form_a": None,
        "closed_form_a_uncorrected": None,
        "jl_reference": None,
        "jl_reference_infinite": None,
    }
    if params.s in (1.0, 2.0):
        variant = ClosedForm.S1 if params.s == 1.0 else ClosedForm.S2_CORRECTED
        data["closed_form_a"] = exponents.closed_form_a(params, variant)
        if params.s == 2.0:
            data["closed_form_a_uncorrected"] = exponents.closed_form_a(params, ClosedForm.S2_PAPER)
        if params.n == math.floor(params.n):
            jl = exponents.jl_reference(params)
            data["jl_reference"] = _optional(jl)
            data["jl_reference_infinite"] = math.isinf(jl)
    return data, None


def _pair(bp):
    return {"lower": bp.lower, "upper": bp.upper, "encloses": bp.encloses}


def cmd_bounds(args):
    params = _params(args)
    v1 = bounds.bound_v1(params, args.a)
    v2 = bounds.bound_v2(params, args.a)
    data = {"n": params.n, "s": params.s, "a": float(args.a), "f": v1.f_value, "v1": _pair(v1), "v2": _pair(v2)}
    return data, None


def _threshold_dict(rep):
    return {
        "eps": rep.eps,
        "a_star": rep.a_star,
        "direction": rep.direction.value,
        "domain_term": rep.domain_term,
        "poly_term": rep.poly_term,
        "nbar": rep.nbar,
        "numerator_root": rep.numerator_root,
        "reference_root": rep.reference_root,
        "spot_checks": [{"n": n, "a": a, "ok": ok} for n, a, ok in rep.spot_checks],
    }


def cmd_thresholds(args):
    if args.eps1 is None and args.eps2 is None:
        raise UsageError("thresholds needs --eps1 and/or --eps2")
    data = {"s": float(args.s), "upper": None, "lower": None}
    if args.eps1 is not None:
        data["upper"] = _threshold_dict(bounds.threshold_upper(args.s, args.eps1))
    if args.eps2 is not None:
        data["lower"] = _threshold_dict(bounds.threshold_lower(args.s, args.eps2))
    return data, None


def cmd_table1(args):
    rows = tables.table1_check()
    out = []
    lines = []
    for row in rows:
        claims = []
        for c in row.claims:
            claims.append(
                {
                    "label": c.label,
                    "direction": c.direction.value,
                    "a_star": c.a_star,
                    "n_star": c.n_star,
                    "verified": c.verified,
                    "bound_nbar": c.bound_nbar,
                    "bound_implied": c.bound_implied,
                }
            )
            lo, hi = row.s_interval
            mark = "ok  " if c.verified else "FAIL"
            lines.append(f"{mark} s in ({lo:g},{hi:g}]  {c.label}  bound nbar={c.bound_nbar:.2f}")
        out.append({"s_interval": list(row.s_interval), "s_samples": list(row.s_samples), "claims": claims})
    all_ok = all(c.verified for row in rows for c in row.claims)
    lines.append(f"all verified: {all_ok}")
    return {"rows": out, "all_verified": all_ok}, lines


def cmd_table2(args):
    rows = tables.table2_compute()
    out = []
    lines = []
    for r in rows:
        out.append(
            {
                "s_interval": list(r.s_interval),
                "s": r.s,
                "n1_table": r.n1_table,
                "n1_computed": r.n1_computed,
                "n1_ok": r.n1_ok,
                "middle_table": r.middle_table,
                "middle_computed": r.middle_computed,
                "n0_table": r.n0_table,
                "n0_computed": r.n0_computed,
                "n0_estimate": r.n0_estimate,
                "n0_ok": r.n0_ok,
            }
        )
        lines.append(
            f"s={r.s:g}  n1={r.n1_computed:.4f} (<{r.n1_table})  "
            f"n0={r.n0_computed} (<={r.n0_table})  estimate={r.n0_estimate:.4f}"
        )
    all_ok = all(r.n1_ok and r.n0_ok for r in rows)
    lines.append(f"all consistent: {all_ok}")
    return {"rows": out, "all_ok": all_ok}, lines


def cmd_sweep(args):
    records = tables.sweep(args.s, args.n_min, args.n_max, args.step)
    if args.csv:
        return None, tables.sweep_csv(records)
    data = {
        "records": [
            {
                "n": r.n,
                "s": r.s,
                "a": r.a_ns,
                "k1": r.k1,
                "k2": r.k2,
                "p1": r.p1,
                "p2": r.p2,
                "p_sobolev": r.p_sobolev,
                "hardy": r.hardy,
            }
            for r in records
        ]
    }
    return data, None


# --- parser ------------------------------------------------------------------


def _add_ns(p, need_n=True):
    if need_n:
        p.add_argument("--n", type=float, required=True, help="ambient dimension")
        p.add_argument("--allow-real-n", action="store_true", help="accept non-integer --n")
    p.add_argument("--s", type=float, required=True, help="fractional order")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON object")

    parser = argparse.ArgumentParser(
        prog="jlexp", description="Exponents of the fractional Lane-Emden stability equation."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exponents", parents=[common], help="a_ns, k1, k2, p1, p2")
    _add_ns(p)
    p.set_defaults(handler=cmd_exponents)

    p = sub.add_parser("root", parents=[common], help="root a_ns with its bracket")
    _add_ns(p)
    p.set_defaults(handler=cmd_root)

    p = sub.add_parser("critical-dim", parents=[common], help="critical dimension n0(s)")
    _add_ns(p, need_n=False)
    p.set_defaults(handler=cmd_critical_dim)

    p = sub.add_parser("classify", parents=[common], help="stability of the singular solution")
    _add_ns(p)
    p.add_argument("--p", type=float, required=True, help="nonlinearity exponent")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="residuals and closed-form comparisons")
    _add_ns(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("bounds", parents=[common], help="rational bounds on f(a)")
    _add_ns(p)
    p.add_argument("--a", type=float, required=True)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("thresholds", parents=[common], help="dimension thresholds for a_ns")
    _add_ns(p, need_n=False)
    p.add_argument("--eps1", type=float)
    p.add_argument("--eps2", type=float)
    p.set_defaults(handler=cmd_thresholds)

    p = sub.add_parser("table1", parents=[common], help="verify the location table")
    p.set_defaults(handler=cmd_table1)

    p = sub.add_parser("table2", parents=[common], help="critical dimension estimates")
    p.set_defaults(handler=cmd_table2)

    p = sub.add_parser("sweep", parents=[common], help="exponents over a grid of n")
    _add_ns(p, need_n=False)
    p.add_argument("--n-min", type=float, required=True)
    p.add_argument("--n-max", type=float, required=True)
    p.add_argument("--step", type=float, default=1.0)
    p.add_argument("--csv", action="store_true", help="emit CSV")
    p.add_argument("--out", help="write output to PATH instead of stdout")
    p.set_defaults(handler=cmd_sweep)
    return parser


def _render_text(data):
    lines = []
    for key, value in data.items():
        if isinstance(value, bool):
            value = str(value).lower()
        elif isinstance(value, float):
            value = fmt_float(value) if math.isfinite(value) else "inf"
        elif isinstance(value, (dict, list)):
            value = dumps(value)
        lines.append(f"{key}: {value}")
    return lines


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        data, text = args.handler(args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    if getattr(args, "csv", False):
        output = text
    elif args.json:
        output = dumps(data) + "\n"
    else:
        output = "\n".join(text if text is not None else _render_text(data)) + "\n"

    out_path = getattr(args, "out", None)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return EXIT_OK


def main():
    sys.exit(run())
