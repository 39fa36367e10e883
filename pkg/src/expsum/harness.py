"""Sweeps of exponential sums against the decay bound p^(-m a), with fitted constants.

A sweep walks a catalog of polynomials over a grid of primes, exponents m and
base points y, computes |S| (or |S_y|), and records the ratio |S| p^(m a)
where a is the best sound exponent available.  Cells that exceed the budget
are recorded as skipped, never silently dropped.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np
import sympy as sp

from .engine import (
    LocalFieldSpec,
    all_residues,
    exp_sum,
    exp_sum_local,
    finite_field_character_sum,
    local_field_exp_sum,
)
from .enumeration import DEFAULT_CAP, BudgetExceeded
from .lct import (
    CriticalPointSearch,
    LctEstimate,
    compute_a,
    compute_a_y_p,
    compute_r,
    compute_r_y_p,
    find_critical_points,
    format_rational,
    reduce_point_mod,
    stratify_critical_points,
)
from .poly import ParseError, Polynomial, format_polynomial, is_reduced_mod

DISCLAIMER = ("Finite sweeps are evidence only: a bounded computation cannot establish that a "
              "constant is uniform in p. Growth diagnostics are indicative, not proofs.")
Y_MODES = ("global", "origin", "all-residues", "declared")
FIELD_KINDS = ("padic", "tseries", "both")
SMOOTH_WINDOW = 4


class CatalogError(ValueError):
    pass


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    expr: str
    nvars: int
    poly: Polynomial
    declared_points: tuple[tuple, ...] = ()
    declared_lct: Fraction | None = None
    declared_complete: bool = False


def _entry(raw: dict) -> CatalogEntry:
    if not isinstance(raw, dict):
        raise CatalogError(f"catalog entry {raw!r} is not an object")
    try:
        expr, nvars = raw["expr"], int(raw["nvars"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"catalog entry {raw!r} lacks expr/nvars") from exc
    try:
        poly = Polynomial.parse(expr, nvars)
    except ParseError as exc:
        raise CatalogError(f"cannot parse {expr!r}: {exc}") from exc
    try:
        pts = tuple(tuple(Fraction(str(c)) for c in pt) for pt in raw.get("declared_critical_points", []))
        lct = raw.get("declared_lct")
        lct = Fraction(str(lct)) if lct is not None else None
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise CatalogError(f"bad declared data in {raw!r}: {exc}") from exc
    if any(len(pt) != nvars for pt in pts):
        raise CatalogError(f"declared point of wrong dimension in {raw!r}")
    pts = tuple(tuple(int(c) if c.denominator == 1 else c for c in pt) for pt in pts)
    return CatalogEntry(raw.get("name", expr), expr, nvars, poly, pts,
                        lct, bool(raw.get("declared_complete", False)))


def load_catalog(path: str | Path | None = None) -> list[CatalogEntry]:
    """Read a catalog file; None means the bundled default catalog."""
    try:
        if path is None:
            text = resources.files("expsum.data").joinpath("catalog.json").read_text()
        else:
            text = Path(path).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    items = data.get("polynomials") if isinstance(data, dict) else data
    if not isinstance(items, list) or not items:
        raise CatalogError("catalog is empty")
    entries = [_entry(raw) for raw in items]
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise CatalogError("duplicate catalog names")
    return entries


def catalog_entry(expr: str, nvars: int, name: str | None = None, **extra) -> CatalogEntry:
    return _entry({"expr": expr, "nvars": nvars, "name": name or expr, **extra})


@dataclass(frozen=True)
class Invariants:
    search: CriticalPointSearch
    r: int | float
    a: LctEstimate
    strata: dict


@lru_cache(maxsize=256)
def invariants(entry: CatalogEntry, box: int = 10) -> Invariants:
    search = find_critical_points(entry.poly, box, entry.declared_points, entry.declared_complete)
    r = compute_r(entry.poly, search)
    a = compute_a(entry.poly, search, entry.declared_lct)
    strata = {}
    if search.points:
        for rec in stratify_critical_points(entry.poly, search, declared_lct=entry.declared_lct):
            strata[rec.point] = rec.stratum
    return Invariants(search, r, a, strata)


def sound_exponent(est: LctEstimate) -> tuple[Fraction, str]:
    """The exponent used in bounds, with its provenance."""
    if est.is_exact:
        return est.value, "declared" if est.method == "declared" else "exact"
    return est.lower, "bracket-lower"


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepConfig:
    catalog: str | None = None
    primes: tuple[int, ...] = (3, 5, 7)
    m_range: tuple[int, int] = (2, 4)
    y_mode: str = "global"
    field_kind: str = "padic"
    t_degrees: tuple[int, ...] = (1,)
    cap: int = DEFAULT_CAP
    enumeration_limit: int = 10 ** 6
    theorem_window: bool = False
    box: int = 10
    workers: int = 1
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        self.primes = tuple(int(p) for p in self.primes)
        self.m_range = tuple(int(m) for m in self.m_range)
        self.t_degrees = tuple(int(s) for s in self.t_degrees)
        if self.y_mode not in Y_MODES:
            raise ValueError(f"y_mode must be one of {Y_MODES}")
        if self.field_kind not in FIELD_KINDS:
            raise ValueError(f"field_kind must be one of {FIELD_KINDS}")
        if len(self.m_range) != 2 or self.m_range[0] > self.m_range[1]:
            raise ValueError("m_range is an inclusive pair (lo, hi)")
        if self.m_range[0] < 2:
            raise ValueError("conjecture sweeps need m >= 2; m = 1 belongs to the Katz check")
        if not self.primes or any(not sp.isprime(p) for p in self.primes):
            raise ValueError("primes must be a nonempty list of primes")
        if self.format not in ("json", "csv"):
            raise ValueError("format is json or csv")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["primes"] = list(self.primes)
        d["m_range"] = list(self.m_range)
        d["t_degrees"] = list(self.t_degrees)
        return d


@dataclass
class ConjectureReport:
    rows: list[dict]
    skipped: list[dict] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    partial: bool = False
    disclaimer: str = DISCLAIMER

    def to_dict(self) -> dict:
        return {"config": self.config, "rows": sort_rows(self.rows), "skipped": sort_rows(self.skipped),
                "constants": self.constants, "partial": self.partial, "disclaimer": self.disclaimer}

    @classmethod
    def from_dict(cls, d: dict) -> "ConjectureReport":
        return cls(d["rows"], d.get("skipped", []), d.get("config", {}), d.get("constants", {}),
                   d.get("partial", False), d.get("disclaimer", DISCLAIMER))

    def rows_for(self, poly: str) -> list[dict]:
        return [r for r in self.rows if r["poly"] == poly]


def _row_key(r: dict):
    return (r["poly"], r.get("field", ""), r.get("q", 0), r.get("m", 0), str(r.get("y", "")))


def sort_rows(rows: Sequence[dict]) -> list[dict]:
    return sorted(rows, key=_row_key)


def _fmt_point(y) -> str:
    return ",".join(str(c) for c in y)


def _cells(entry: CatalogEntry, inv: Invariants, cfg: SweepConfig):
    """Yield (field, p, s, m, y) for the grid of one polynomial."""
    lo, hi = cfg.m_range
    if cfg.theorem_window:
        hi = min(hi, inv.r + 2) if math.isfinite(inv.r) else min(hi, SMOOTH_WINDOW)
    fields = []
    if cfg.field_kind in ("padic", "both"):
        fields.append(("Q_p", 1))
    if cfg.field_kind in ("tseries", "both"):
        fields.extend(("F_q((t))", s) for s in cfg.t_degrees)
    n = entry.nvars
    for fld, s in fields:
        for p in cfg.primes:
            if cfg.y_mode == "global":
                ys = [None]
            elif cfg.y_mode == "origin":
                ys = [(0,) * n]
            elif cfg.y_mode == "all-residues":
                ys = all_residues(n, p ** s if fld != "Q_p" else p)
            else:
                found = {reduce_point_mod(pt, p) for pt in inv.search.points}
                ys = sorted(y for y in found if y is not None)
            for m in range(lo, hi + 1):
                for y in ys:
                    yield fld, p, s, m, y


def _local_exponent(entry: CatalogEntry, inv: Invariants, p: int, y) -> tuple[LctEstimate, int | float, str]:
    if y is None:
        strata = sorted({format_rational(s) for s in inv.strata.values()})
        return inv.a, inv.r, ";".join(strata)
    a = compute_a_y_p(entry.poly, y, p, inv.search, entry.declared_lct)
    r = compute_r_y_p(entry.poly, y, p, inv.search, entry.declared_lct)
    strata = sorted({format_rational(s) for pt, s in inv.strata.items() if reduce_point_mod(pt, p) == tuple(y)})
    return a, r, ";".join(strata) or "none"


def _evaluate_cell(entry: CatalogEntry, inv: Invariants, cfg: SweepConfig, cell) -> dict:
    fld, p, s, m, y = cell
    n = entry.nvars
    base = {"poly": entry.name, "expr": entry.expr, "field": fld, "p": p, "q": p ** s, "m": m,
            "y": "global" if y is None else _fmt_point(y)}
    try:
        if fld == "Q_p":
            if y is None:
                method = "enumerate" if p ** (m * n) <= cfg.enumeration_limit else "recursive"
                val = exp_sum(entry.poly, p, m, cfg.cap, method)
            else:
                method = "enumerate" if p ** ((m - 1) * n) <= cfg.enumeration_limit else "recursive"
                val = exp_sum_local(entry.poly, p, m, y, cfg.cap, method, keep_source=False)
        else:
            K = LocalFieldSpec("t-series", p, m, s)
            val = local_field_exp_sum(entry.poly, K, y, cfg.cap)
    except BudgetExceeded as exc:
        return {**base, "status": "skipped", "reason": str(exc)}
    if y is None:
        est, r, strata = _local_exponent(entry, inv, p, None)
    elif fld == "Q_p" or all(c < p for c in y):
        est, r, strata = _local_exponent(entry, inv, p, tuple(y))
    else:
        # residues outside the prime field carry no known critical point; fall back to a(F)
        est, r, strata = inv.a, inv.r, "outside prime field"
    a, how = sound_exponent(est)
    q = p ** s
    rhs = float(q) ** (-m * float(a))
    # a modulus inside its own error bound is indistinguishable from an exact zero
    modulus = 0.0 if val.modulus <= val.abs_error_bound else val.modulus
    ratio = modulus * float(q) ** (m * float(a))
    row = {**base, "status": "ok", "modulus": modulus, "error_bound": val.abs_error_bound,
           "method": val.method, "exponent": format_rational(a), "exponent_method": how,
           "exponent_source": est.method, "tags": ";".join(est.notes), "rhs": rhs, "ratio": ratio,
           "r": r if math.isfinite(r) else "inf", "stratum": strata,
           "heuristic_exponent": None if est.is_exact else format_rational(est.upper)}
    return row


def run_sweep(cfg: SweepConfig, entries: Sequence[CatalogEntry] | None = None) -> ConjectureReport:
    """One row per grid cell; budget overruns become skipped entries."""
    entries = load_catalog(cfg.catalog) if entries is None else list(entries)
    if not entries:
        raise CatalogError("catalog is empty")
    jobs = []
    for entry in entries:
        inv = invariants(entry, cfg.box)
        jobs.extend((entry, inv, cell) for cell in _cells(entry, inv, cfg))
    rows, skipped, partial = [], [], False

    def run(job):
        return _evaluate_cell(job[0], job[1], cfg, job[2])

    try:
        if cfg.workers > 1:
            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                results = list(pool.map(run, jobs))
        else:
            results = []
            for job in jobs:
                results.append(run(job))
    except KeyboardInterrupt:
        partial = True
        results = results if "results" in locals() else []
    for res in results:
        (rows if res["status"] == "ok" else skipped).append(res)
    report = ConjectureReport(rows, skipped, cfg.to_dict(), partial=partial)
    for entry in entries:
        report.constants[entry.name] = fit_constants(report, entry.name, entry.nvars)
    return report


# ---------------------------------------------------------------------------
# fitting and verdicts


def fit_constants(report: ConjectureReport, poly: str | None = None, nvars: int | None = None) -> dict:
    """L_global, L_per_m, L_per_p and the slope of log L_per_m against log m."""
    rows = [r for r in report.rows if r["status"] == "ok" and (poly is None or r["poly"] == poly)]
    if not rows:
        return {"L_global": None, "L_per_m": {}, "L_per_p": {}, "growth_diagnostic": None}
    L_per_m: dict[int, float] = {}
    L_per_p: dict[int, float] = {}
    for r in rows:
        L_per_m[r["m"]] = max(L_per_m.get(r["m"], 0.0), r["ratio"])
        L_per_p[r["q"]] = max(L_per_p.get(r["q"], 0.0), r["ratio"])
    pts = [(math.log(m), math.log(v)) for m, v in sorted(L_per_m.items()) if v > 0]
    slope = None
    if len(pts) >= 2:
        xs, ys = np.array(pts).T
        slope = float(np.polyfit(xs, ys, 1)[0])
    diag = {"slope": slope}
    if nvars is not None:
        diag["n_minus_1"] = nvars - 1
        diag["consistent"] = None if slope is None else bool(slope <= nvars - 1 + 1e-9)
    return {"L_global": max(r["ratio"] for r in rows),
            "L_per_m": {str(m): v for m, v in sorted(L_per_m.items())},
            "L_per_p": {str(p): v for p, v in sorted(L_per_p.items())},
            "growth_diagnostic": diag}


@dataclass(frozen=True)
class TheoremVerdict:
    poly: str
    verdict: str  # consistent, violation or insufficient
    max_ratio: float | None
    L_small: float | None
    L_all: float | None
    growth: float | None
    nonincreasing: bool | None
    rows_used: int
    primes: tuple[int, ...]


def check_theorem_rplus1(report: ConjectureReport, poly: str, split_prime: int = 23,
                         growth_limit: float = 2.0) -> TheoremVerdict:
    """Window 2 <= m <= r+2 (r_{y,p}+2 for local rows): bounded ratios, no growth in p."""
    rows = []
    for r in report.rows_for(poly):
        if r["status"] != "ok" or r["field"] != "Q_p":
            continue
        rr = r["r"]
        hi = SMOOTH_WINDOW if rr == "inf" else rr + 2
        if 2 <= r["m"] <= hi:
            rows.append(r)
    primes = tuple(sorted({r["p"] for r in rows}))
    if len(primes) < 3:
        return TheoremVerdict(poly, "insufficient", None, None, None, None, None, len(rows), primes)
    ratios = [r["ratio"] for r in rows]
    if not all(math.isfinite(x) for x in ratios):
        return TheoremVerdict(poly, "violation", None, None, None, None, None, len(rows), primes)
    L_all = max(ratios)
    small = [r["ratio"] for r in rows if r["p"] <= split_prime]
    L_small = max(small) if small else 0.0
    if L_small > 0:
        growth = L_all / L_small
    else:
        growth = 1.0 if L_all == 0 else math.inf
    half = primes[len(primes) // 2]
    lo_half = max((r["ratio"] for r in rows if r["p"] < half), default=0.0)
    hi_half = max((r["ratio"] for r in rows if r["p"] >= half), default=0.0)
    verdict = "consistent" if growth <= growth_limit else "violation"
    return TheoremVerdict(poly, verdict, L_all, L_small, L_all, growth, bool(hi_half <= lo_half + 1e-12),
                          len(rows), primes)


@dataclass(frozen=True)
class KatzReport:
    rows: list[dict]
    skipped: list[dict]
    verdicts: dict


def check_katz_m1(entries: Sequence[CatalogEntry], primes: Sequence[int], cap: int | None = None) -> KatzReport:
    """|sum over F_p^n of psi(h)| / p^(n-1) for homogeneous h reduced mod p.

    A polynomial is "bounded" when the larger half of the primes does not push
    the maximum above twice the smaller half's and the log-log slope is small.
    """
    rows, skipped, verdicts = [], [], {}
    for e in entries:
        h, n = e.poly, e.nvars
        if not h.is_homogeneous():
            skipped.append({"poly": e.name, "p": None, "reason": "not homogeneous"})
            continue
        mine = []
        for p in primes:
            red = is_reduced_mod(h, p)
            if red is None:
                skipped.append({"poly": e.name, "p": p, "reason": "indeterminate (p <= deg)"})
                continue
            if not red:
                skipped.append({"poly": e.name, "p": p, "reason": "non-reduced"})
                continue
            val = finite_field_character_sum(h, p, cap)
            ratio = val.modulus / float(p) ** (n - 1)
            row = {"poly": e.name, "p": p, "modulus": val.modulus, "error_bound": val.abs_error_bound,
                   "ratio": ratio}
            rows.append(row)
            mine.append(row)
        if len(mine) >= 2:
            ps = [r["p"] for r in mine]
            half = len(mine) // 2
            small = max(r["ratio"] for r in mine[:half])
            large = max(r["ratio"] for r in mine[half:])
            pos = [(math.log(r["p"]), math.log(r["ratio"])) for r in mine if r["ratio"] > 1e-12]
            slope = float(np.polyfit(*np.array(pos).T, 1)[0]) if len(pos) >= 2 else 0.0
            bounded = large <= 2 * max(small, 1e-12) and slope < 0.25 or max(r["ratio"] for r in mine) < 1e-9
            verdicts[e.name] = {"D": max(r["ratio"] for r in mine), "slope": slope,
                                "primes": ps, "verdict": "bounded" if bounded else "growth"}
    return KatzReport(rows, skipped, verdicts)


# ---------------------------------------------------------------------------
# output


CSV_COLUMNS = ("poly", "expr", "field", "p", "q", "m", "y", "status", "modulus", "error_bound", "method",
               "exponent", "exponent_method", "exponent_source", "tags", "rhs", "ratio", "r", "stratum",
               "heuristic_exponent", "reason")


def render_report(report: ConjectureReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=1) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in sort_rows(report.rows + report.skipped):
            w.writerow({k: ("" if r.get(k) is None else r.get(k, "")) for k in CSV_COLUMNS})
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(report: ConjectureReport, path: str | Path, fmt: str = "json") -> Path:
    path = Path(path)
    path.write_text(render_report(report, fmt))
    return path


def plot_series(report: ConjectureReport, zero_tol: float = 1e-12) -> list[dict]:
    """Observed exponent alpha = -log_q |S| / m per row, or "exact-zero"."""
    out = []
    for r in sort_rows(report.rows):
        if r["status"] != "ok":
            continue
        if r["modulus"] < zero_tol:
            alpha = "exact-zero"
        else:
            alpha = -math.log(r["modulus"]) / (r["m"] * math.log(r["q"]))
        out.append({"poly": r["poly"], "field": r["field"], "q": r["q"], "m": r["m"], "y": r["y"],
                    "alpha_obs": alpha, "reference": r["exponent"]})
    return out


def emit_plot_data(report: ConjectureReport, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(plot_series(report), sort_keys=True, indent=1) + "\n")
    return path


def load_report(path: str | Path) -> ConjectureReport:
    return ConjectureReport.from_dict(json.loads(Path(path).read_text()))
