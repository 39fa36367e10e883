"""Command line front end: sum, lct, jets, sweep, report.

Exit codes: 0 success, 1 bad input, 2 budget refusal, 3 catalog error,
4 a theorem-backed check reported a defect.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

import sympy as sp

from .engine import (
    LocalFieldSpec,
    exp_sum,
    exp_sum_local,
    finite_field_character_sum,
    local_field_exp_sum,
)
from .enumeration import DEFAULT_CAP, BudgetExceeded
from .harness import (
    CatalogError,
    SweepConfig,
    check_katz_m1,
    check_theorem_rplus1,
    emit_plot_data,
    emit_report,
    load_catalog,
    load_report,
    render_report,
    run_sweep,
)
from .jets import codim_estimate, contact_count, lct_upper_from_jets
from .lct import (
    check_c0k,
    check_geomc,
    check_geomcfe,
    check_geomcfr,
    check_trivial_bounds,
    compute_a,
    compute_r,
    find_critical_points,
    format_rational,
    lct_at_origin,
    stratify_critical_points,
)
from .poly import ParseError, Polynomial, format_polynomial

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_CATALOG, EXIT_DEFECT = 0, 1, 2, 3, 4
_ALIASES = {"x": 1, "y": 2, "z": 3, "w": 4}


def infer_nvars(text: str) -> int:
    n = 1
    for name, idx in re.findall(r"([a-z])(\d*)", text):
        if idx:
            n = max(n, int(idx))
        elif name in _ALIASES:
            n = max(n, _ALIASES[name])
    return n


def parse_range(text: str, primes_only: bool = False) -> tuple[int, ...]:
    """'A..B' (inclusive) or a comma list."""
    if ".." in text:
        a, b = text.split("..", 1)
        vals = range(int(a), int(b) + 1)
    else:
        vals = [int(v) for v in text.split(",") if v.strip()]
    vals = tuple(v for v in vals if not primes_only or sp.isprime(v))
    if not vals:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return vals


def parse_point_arg(text: str | None):
    if text is None:
        return None
    return tuple(int(v) for v in text.split(","))


def _poly(args) -> Polynomial:
    n = args.nvars or infer_nvars(args.expr)
    return Polynomial.parse(args.expr, n)


def _print(obj):
    print(json.dumps(obj, indent=1, sort_keys=True))


def _value_dict(v) -> dict:
    return {"re": v.re, "im": v.im, "modulus": v.modulus, "abs_error_bound": v.abs_error_bound,
            "normalization": v.normalization, "method": v.method}


def cmd_sum(args) -> int:
    F = _poly(args)
    y = parse_point_arg(args.y)
    out = {"poly": format_polynomial(F)}
    if args.q is not None:
        v = finite_field_character_sum(F, args.q, args.cap)
        out.update({"kind": "finite-field", "q": args.q, **_value_dict(v)})
    elif args.field == "tseries":
        K = LocalFieldSpec("t-series", args.p, args.m, args.s)
        v = local_field_exp_sum(F, K, y, args.cap)
        out.update({"kind": "t-series", "q": K.q, "m": args.m, "y": y, **_value_dict(v)})
    elif y is None:
        v = exp_sum(F, args.p, args.m, args.cap, args.method)
        out.update({"kind": "global", "p": args.p, "m": args.m, **_value_dict(v)})
    else:
        v = exp_sum_local(F, args.p, args.m, y, args.cap, args.method)
        out.update({"kind": "local", "p": args.p, "m": args.m, "y": y, **_value_dict(v)})
    _print(out)
    return EXIT_OK


def cmd_lct(args) -> int:
    F = _poly(args)
    declared = Fraction(args.declared_lct) if args.declared_lct else None
    search = find_critical_points(F, args.box)
    out = {"poly": format_polynomial(F), "search": search.tag, "critical_points":
           [[format_rational(c) for c in pt] for pt in search.points]}
    r = compute_r(F, search)
    out["r"] = format_rational(r)
    out["a"] = compute_a(F, search, declared).to_dict()
    out["strata"] = [{"point": [format_rational(c) for c in rec.point], "order": rec.order,
                      "stratum": format_rational(rec.stratum), "lct": rec.lct_at_point.to_dict()}
                     for rec in stratify_critical_points(F, search, declared_lct=declared)]
    defect = False
    if F.coefficient((0,) * F.nvars) == 0 and not F.is_zero():
        out["lct_at_origin"] = lct_at_origin(F, declared).to_dict()
        if args.checks:
            reports = [check_trivial_bounds(F, declared), check_geomcfr(F, declared), check_geomc(F, declared)]
            reports += [check_geomcfe(F, e, declared) for e in range(1, 4)]
            reports += [check_c0k(F, k, declared) for k in range(1, 4)]
            out["checks"] = [rep.to_dict() for rep in reports]
            defect = any(rep.verdict == "fail" for rep in reports)
    _print(out)
    return EXIT_DEFECT if defect else EXIT_OK


def cmd_jets(args) -> int:
    h = _poly(args)
    out = {"poly": format_polynomial(h), "based_at_origin": args.based}
    if args.k_max:
        est = lct_upper_from_jets(h, args.k_max, args.based, args.q, args.cap)
        out["lct_upper"] = None if est is None else est.to_dict()
    if args.k:
        m = args.m if args.m is not None else args.k
        out["counts"] = {str(q): contact_count(h, args.k, m, q, args.based, args.cap).count for q in args.q}
        est = codim_estimate(h, args.k, args.q, args.based, args.cap)
        out["codim"] = {"k": est.k, "status": est.status, "lower": est.lower, "upper": est.upper,
                        "per_q": {str(q): v for q, v in est.per_q.items()}, "excluded": est.excluded,
                        "m_check": est.m_check}
    _print(out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.mode == "katz":
        entries = load_catalog(args.catalog)
        rep = check_katz_m1(entries, args.primes, args.cap)
        payload = json.dumps({"rows": rep.rows, "skipped": rep.skipped, "verdicts": rep.verdicts},
                             indent=1, sort_keys=True) + "\n"
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(payload)
        else:
            sys.stdout.write(payload)
        return EXIT_OK
    cfg = SweepConfig(catalog=args.catalog, primes=args.primes, m_range=(min(args.m_range), max(args.m_range)),
                      y_mode=args.y_mode, field_kind=args.field, t_degrees=tuple(args.s), cap=args.cap,
                      theorem_window=args.theorem_window, workers=args.workers, out=args.out,
                      format=args.format)
    report = run_sweep(cfg)
    if args.out:
        emit_report(report, args.out, args.format)
    else:
        sys.stdout.write(render_report(report, args.format))
    if args.plot:
        emit_plot_data(report, args.plot)
    status = EXIT_OK
    if args.theorem_window:
        for name in sorted({r["poly"] for r in report.rows}):
            v = check_theorem_rplus1(report, name)
            print(f"{name}: {v.verdict} (L={v.max_ratio}, growth={v.growth})", file=sys.stderr)
            if v.verdict == "violation":
                status = EXIT_DEFECT
    return status


def cmd_report(args) -> int:
    report = load_report(args.path)
    text = render_report(report, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        emit_plot_data(report, args.plot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="expsum", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def poly_args(p):
        p.add_argument("expr", help="polynomial, e.g. 'x^2+y^3'")
        p.add_argument("--nvars", type=int, default=None, help="number of variables (inferred by default)")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration budget")

    s = sub.add_parser("sum", help="one exponential or character sum")
    poly_args(s)
    s.add_argument("--p", type=int, help="prime")
    s.add_argument("--m", type=int, help="exponent of the modulus")
    s.add_argument("--y", help="coset representative, comma separated")
    s.add_argument("--q", type=int, help="finite field size: evaluate the character sum over F_q^n")
    s.add_argument("--field", choices=("padic", "tseries"), default="padic")
    s.add_argument("--s", type=int, default=1, help="extension degree for t-series sums")
    s.add_argument("--method", choices=("auto", "enumerate", "recursive"), default="auto")
    s.set_defaults(func=cmd_sum)

    l = sub.add_parser("lct", help="lct estimates and inequality checks")
    poly_args(l)
    l.add_argument("--declared-lct", help="declared lct at the origin, e.g. 1/2")
    l.add_argument("--box", type=int, default=10, help="critical point search box")
    l.add_argument("--checks", action="store_true", help="run every inequality checker")
    l.set_defaults(func=cmd_lct)

    j = sub.add_parser("jets", help="contact locus counts")
    poly_args(j)
    j.add_argument("--k", type=int, help="contact order")
    j.add_argument("--m", type=int, help="jet length (default k)")
    j.add_argument("--q", type=lambda t: parse_range(t), default=(2, 3), help="field sizes, e.g. 2,3")
    j.add_argument("--based", action="store_true", help="jets based at the origin")
    j.add_argument("--k-max", type=int, help="report the lct upper bound over k <= K")
    j.set_defaults(func=cmd_jets)

    w = sub.add_parser("sweep", help="run the harness over a catalog")
    w.add_argument("--catalog", help="catalog JSON (bundled default if omitted)")
    w.add_argument("--primes", type=lambda t: parse_range(t, True), default=(3, 5, 7), help="A..B or list")
    w.add_argument("--m-range", type=parse_range, default=(2, 4), help="A..B")
    w.add_argument("--y-mode", choices=("global", "origin", "all-residues", "declared"), default="global")
    w.add_argument("--field", choices=("padic", "tseries", "both"), default="padic")
    w.add_argument("--s", type=lambda t: parse_range(t), default=(1,), help="t-series extension degrees")
    w.add_argument("--cap", type=int, default=DEFAULT_CAP)
    w.add_argument("--out", help="report path (stdout if omitted)")
    w.add_argument("--format", choices=("json", "csv"), default="json")
    w.add_argument("--plot", help="also write plot data here")
    w.add_argument("--mode", choices=("conjecture", "katz"), default="conjecture")
    w.add_argument("--theorem-window", action="store_true", help="clip m to 2..r+2 and check uniformity")
    w.add_argument("--workers", type=int, default=1)
    w.set_defaults(func=cmd_sweep)

    r = sub.add_parser("report", help="re-render a saved JSON report")
    r.add_argument("path")
    r.add_argument("--format", choices=("json", "csv"), default="csv")
    r.add_argument("--out")
    r.add_argument("--plot")
    r.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sum" and args.q is None and (args.p is None or args.m is None):
        print("error: give --p and --m, or --q", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CatalogError as exc:
        print(f"catalog error: {exc}", file=sys.stderr)
        return EXIT_CATALOG
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
