"""Log-canonical thresholds through computable surrogates.

Exact values come from two closed formulas: the Newton-polyhedron formula
lct_0(f) = min(1, 1/t0) for f nondegenerate with respect to the compact faces
of its Newton polyhedron, and Howald's formula for monomial ideals.  Anything
else becomes a bracket [lower, upper] or a user declaration, and every
estimate carries a method tag so downstream verdicts can tell proved values
from heuristic ones.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .enumeration import DEFAULT_CAP, grid_values
from .lp import feasible, solve_lp
from .poly import (
    Polynomial,
    format_polynomial,
    gradient,
    homogeneous_parts,
    is_reduced,
    is_reduced_mod,
    polynomial_gcd,
    repeated_part,
    shifted_germ,
    from_sympy,
    to_sympy,
)

Exponent = tuple[int, ...]
DEFAULT_PRIMES = (101, 103, 107)
DEFAULT_BOX = 10


def as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def format_rational(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    v = as_fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# ---------------------------------------------------------------------------
# Newton polyhedra


@dataclass(frozen=True)
class NewtonPolyhedron:
    """conv(support) + R_{>=0}^n, stored through its generating support."""

    support: tuple[Exponent, ...]

    def __post_init__(self):
        pts = tuple(sorted(set(tuple(int(c) for c in e) for e in self.support)))
        if not pts:
            raise ValueError("empty support")
        if len({len(e) for e in pts}) != 1:
            raise ValueError("support vectors of different lengths")
        if any(c < 0 for e in pts for c in e):
            raise ValueError("negative exponent")
        object.__setattr__(self, "support", pts)

    @classmethod
    def of(cls, f: Polynomial) -> "NewtonPolyhedron":
        if f.is_zero():
            raise ValueError("zero polynomial has no Newton polyhedron")
        return cls(tuple(f.support))

    @property
    def nvars(self) -> int:
        return len(self.support[0])

    def contains(self, point: Sequence) -> bool:
        """Whether point lies in conv(support) + R_{>=0}^n."""
        k, n = len(self.support), self.nvars
        # columns: lambda_1..k, slack_1..n
        A = [[self.support[j][i] for j in range(k)] + [int(i == s) for s in range(n)] for i in range(n)]
        A.append([1] * k + [0] * n)
        return feasible(A, [as_fraction(c) for c in point] + [1])


def newton_diagonal_t0(P: NewtonPolyhedron) -> Fraction:
    """Smallest t with t(1,...,1) in the polyhedron."""
    if any(all(c == 0 for c in e) for e in P.support):
        raise ValueError("origin lies in the support: the polynomial does not vanish at 0")
    k, n = len(P.support), P.nvars
    # columns: lambda_1..k, slack_1..n, t;  sum_j lambda_j s_j + slack - t 1 = 0
    A = [[P.support[j][i] for j in range(k)] + [int(i == s) for s in range(n)] + [-1] for i in range(n)]
    A.append([1] * k + [0] * n + [0])
    b = [0] * n + [1]
    c = [0] * (k + n) + [1]
    res = solve_lp(c, A, b)
    if res.status != "optimal":
        raise RuntimeError(f"diagonal LP ended {res.status}")
    return res.value


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _affine_hull_members(points: Sequence[Exponent], base: Sequence[Exponent]) -> tuple[Exponent, ...]:
    b0 = base[0]
    dirs = [[Fraction(a - c) for a, c in zip(b, b0)] for b in base[1:]]
    r = _rank(dirs) if dirs else 0
    out = []
    for s in points:
        v = [Fraction(a - c) for a, c in zip(s, b0)]
        if all(c == 0 for c in v) or (dirs and _rank(dirs + [v]) == r):
            out.append(s)
    return tuple(out)


def _is_compact_face(P: NewtonPolyhedron, T: tuple[Exponent, ...]) -> bool:
    """Is there w > 0 with w.s constant on T and strictly larger off T?

    Scaled form: w_i >= 1, w.s = c on T, w.s >= c + 1 off T.  Variables are
    w' = w - 1 >= 0, c >= 0, and one slack per point off T.
    """
    n = P.nvars
    others = [s for s in P.support if s not in T]
    ncols = n + 1 + len(others)
    A, b = [], []
    for s in T:
        A.append([s[i] for i in range(n)] + [-1] + [0] * len(others))
        b.append(-sum(s))
    for j, s in enumerate(others):
        row = [s[i] for i in range(n)] + [-1] + [0] * len(others)
        row[n + 1 + j] = -1
        A.append(row)
        b.append(1 - sum(s))
    if not A:
        return False
    return feasible(A, b) if ncols else False


def compact_faces(P: NewtonPolyhedron) -> list[tuple[Exponent, ...]]:
    """Support points of every compact face, as sorted tuples."""
    n = P.nvars
    found: set[tuple[Exponent, ...]] = set()
    seen: set[tuple[Exponent, ...]] = set()
    for size in range(1, min(n, len(P.support)) + 1):
        for base in itertools.combinations(P.support, size):
            T = _affine_hull_members(P.support, base)
            if T in seen:
                continue
            seen.add(T)
            if _is_compact_face(P, T):
                found.add(T)
    return sorted(found, key=lambda t: (len(t), t))


def face_polynomial(f: Polynomial, face: Iterable[Exponent]) -> Polynomial:
    keep = set(face)
    return Polynomial(f.nvars, tuple((e, c) for e, c in f.terms if e in keep))


@dataclass(frozen=True)
class NondegeneracyResult:
    verdict: str  # "pass", "fail" or "indeterminate"
    witness: tuple | None = None
    primes: tuple[int, ...] = DEFAULT_PRIMES
    heuristic: bool = True


def nondegeneracy_check(f: Polynomial, primes: Sequence[int] = DEFAULT_PRIMES,
                        cap: int | None = None) -> NondegeneracyResult:
    """Search the torus over F_p for common zeros of the partials of every face polynomial.

    A witness for any face and any prime gives "fail"; no witness at all gives
    "pass".  The test is heuristic: it only samples finitely many primes.
    """
    cap = DEFAULT_CAP if cap is None else cap
    n = f.nvars
    primes = tuple(primes)
    if any(p ** n > cap for p in primes):
        return NondegeneracyResult("indeterminate", None, primes)
    faces = compact_faces(NewtonPolyhedron.of(f))
    for face in faces:
        ft = face_polynomial(f, face)
        for p in primes:
            mask = np.ones((p,) * n, dtype=bool)
            for g in gradient(ft):
                if not g.is_zero():
                    mask &= grid_values(g, p) == 0
            torus = mask[(slice(1, None),) * n]
            if torus.any():
                pt = tuple(int(c) + 1 for c in np.argwhere(torus)[0])
                return NondegeneracyResult("fail", (face, p, pt), primes)
    return NondegeneracyResult("pass", None, primes)


# ---------------------------------------------------------------------------
# estimates


@dataclass(frozen=True)
class LctEstimate:
    kind: str  # "exact" or "bracket"
    method: str
    value: Fraction | None = None
    lower: Fraction | None = None
    upper: Fraction | None = None
    at: tuple = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == "exact":
            if self.value is None:
                raise ValueError("exact estimate needs a value")
        elif self.kind == "bracket":
            if self.lower is None or self.upper is None or self.lower > self.upper:
                raise ValueError("bracket needs lower <= upper")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def exact(cls, value, method: str, at=(), notes=()) -> "LctEstimate":
        return cls("exact", method, value=as_fraction(value), at=tuple(at), notes=tuple(notes))

    @classmethod
    def bracket(cls, lower, upper, method: str, at=(), notes=()) -> "LctEstimate":
        lower, upper = as_fraction(lower), as_fraction(upper)
        if lower == upper:
            return cls.exact(lower, method, at, notes)
        return cls("bracket", method, lower=lower, upper=upper, at=tuple(at), notes=tuple(notes))

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    def lower_value(self) -> Fraction:
        return self.value if self.is_exact else self.lower

    def upper_value(self) -> Fraction:
        return self.value if self.is_exact else self.upper

    def with_notes(self, *notes: str) -> "LctEstimate":
        extra = tuple(n for n in notes if n not in self.notes)
        return LctEstimate(self.kind, self.method, self.value, self.lower, self.upper, self.at,
                           self.notes + extra)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "method": self.method}
        if self.is_exact:
            d["value"] = format_rational(self.value)
        else:
            d["lower"] = format_rational(self.lower)
            d["upper"] = format_rational(self.upper)
        if self.at:
            d["at"] = [format_rational(c) for c in self.at]
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def __str__(self):
        body = format_rational(self.value) if self.is_exact else \
            f"[{format_rational(self.lower)}, {format_rational(self.upper)}]"
        return f"{body} ({self.method})"


def lct_min(estimates: Sequence[LctEstimate]) -> LctEstimate:
    """Sound minimum of several estimates."""
    if not estimates:
        raise ValueError("no estimates")
    lo = min(e.lower_value() for e in estimates)
    best = min(estimates, key=lambda e: (e.upper_value(), not e.is_exact))
    notes = tuple(dict.fromkeys(n for e in estimates for n in e.notes))
    return LctEstimate.bracket(lo, best.upper_value(), best.method, best.at, notes)


def lct_nondegenerate(f: Polynomial, primes: Sequence[int] = DEFAULT_PRIMES) -> LctEstimate:
    """min(1, 1/t0) when the nondegeneracy check passes; otherwise a bracket.

    The bracket is [1/ord_0 f, min(1, 1/t0)]: the upper end holds because f lies
    in the ideal of its own terms, the lower end is the multiplicity bound.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    t0 = newton_diagonal_t0(NewtonPolyhedron.of(f))
    upper = min(Fraction(1), 1 / t0)
    check = nondegeneracy_check(f, primes)
    if check.verdict == "pass":
        return LctEstimate.exact(upper, "newton-nondegenerate", notes=("nondegeneracy heuristic",))
    lower = Fraction(1, f.lowest_degree())
    return LctEstimate.bracket(lower, upper, "newton-nondegenerate", notes=(f"nondegeneracy {check.verdict}",))


def lct_monomial_ideal(gens: Sequence[Sequence[int]]) -> Fraction | float:
    """Howald: the lct of a monomial ideal is 1/t0 for the ideal's Newton polyhedron.

    The unit ideal (a zero exponent vector among the generators) returns +inf.
    """
    gens = [tuple(int(c) for c in g) for g in gens]
    if not gens:
        raise ValueError("no generators")
    if any(all(c == 0 for c in g) for g in gens):
        return math.inf
    return 1 / newton_diagonal_t0(NewtonPolyhedron(tuple(gens)))


def _perfect_power(f: Polynomial) -> tuple[Polynomial, int] | None:
    """(g, k) with f = c * g^k for a constant c and k >= 2, if f has that shape."""
    _, factors = to_sympy(f).sqf_list()
    if len(factors) != 1 or factors[0][1] < 2:
        return None
    g, k = factors[0]
    return from_sympy(g, f.nvars), int(k)


def lct_at_origin(f: Polynomial, declared=None) -> LctEstimate:
    """Best available estimate of c_0(f) for f vanishing at the origin."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.coefficient((0,) * f.nvars) != 0:
        raise ValueError("f does not vanish at the origin")
    if f.lowest_degree() == 1:
        return LctEstimate.exact(1, "smooth")
    root = _perfect_power(f)
    if f.is_monomial():
        est = LctEstimate.exact(min(Fraction(1), 1 / newton_diagonal_t0(NewtonPolyhedron.of(f))),
                                "monomial-single")
    elif root is not None:
        # lct(g^k) = lct(g)/k
        g, k = root
        inner = lct_at_origin(g)
        est = LctEstimate.bracket(inner.lower_value() / k, inner.upper_value() / k, inner.method,
                                  notes=inner.notes + (f"power {k} of {format_polynomial(g)}",))
    else:
        est = lct_nondegenerate(f)
    if declared is not None:
        d = as_fraction(declared)
        if not est.lower_value() <= d <= est.upper_value():
            raise ValueError(f"declared lct {d} outside the computed bracket {est}")
        if not est.is_exact:
            est = LctEstimate.exact(d, "declared", notes=("user declaration",))
    return est


# ---------------------------------------------------------------------------
# critical points and the invariants a, r


@dataclass(frozen=True)
class CriticalPointSearch:
    points: tuple[tuple, ...]
    box: int
    complete: bool = False

    @property
    def tag(self) -> str:
        return "declared-complete" if self.complete else "search-limited"


def _is_critical(F: Polynomial, pt: Sequence) -> bool:
    return all(g.evaluate(list(pt)) == 0 for g in gradient(F))


def find_critical_points(F: Polynomial, box: int = DEFAULT_BOX, declared: Iterable = (),
                         declared_complete: bool = False) -> CriticalPointSearch:
    """Integer zeros of grad F in [-box, box]^n, plus verified declared rational points."""
    grads = gradient(F)
    pts = []
    for pt in itertools.product(range(-box, box + 1), repeat=F.nvars):
        if all(g.evaluate(pt) == 0 for g in grads):
            pts.append(tuple(pt))
    for d in declared:
        d = tuple(int(c) if as_fraction(c).denominator == 1 else as_fraction(c) for c in d)
        if len(d) != F.nvars:
            raise ValueError(f"declared point {d} has the wrong length")
        if not _is_critical(F, d):
            raise ValueError(f"declared point {d} is not a critical point")
        if d not in pts:
            pts.append(d)
    return CriticalPointSearch(tuple(pts), box, declared_complete)


def _points_and_tag(critical_points) -> tuple[tuple, str]:
    if isinstance(critical_points, CriticalPointSearch):
        return critical_points.points, critical_points.tag
    return tuple(tuple(p) for p in critical_points), "search-limited"


def _is_origin(pt) -> bool:
    return all(c == 0 for c in pt)


def point_order(F: Polynomial, pt) -> int:
    return shifted_germ(F, pt).lowest_degree()


def point_estimate(F: Polynomial, pt, declared_lct=None) -> LctEstimate:
    """lct of F - F(pt) at pt; a declared value applies only at the origin."""
    germ = shifted_germ(F, pt)
    est = lct_at_origin(germ, declared_lct if _is_origin(pt) else None)
    return LctEstimate(est.kind, est.method, est.value, est.lower, est.upper, tuple(pt), est.notes)


def compute_r(F: Polynomial, critical_points) -> int | float:
    pts, _ = _points_and_tag(critical_points)
    return min((point_order(F, pt) for pt in pts), default=math.inf)


def compute_a(F: Polynomial, critical_points, declared_lct=None) -> LctEstimate:
    pts, tag = _points_and_tag(critical_points)
    if not pts:
        return LctEstimate.exact(1, "smooth", notes=(tag, "no critical point found"))
    ests = [point_estimate(F, pt, declared_lct) for pt in pts]
    one = LctEstimate.exact(1, "smooth")
    return lct_min(ests + [one]).with_notes(tag)


def reduce_point_mod(pt, p: int) -> tuple[int, ...] | None:
    """The residue of a p-integral rational point mod p, or None if not p-integral."""
    out = []
    for c in pt:
        c = as_fraction(c)
        if c.denominator % p == 0:
            return None
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return tuple(out)


def local_candidates(F: Polynomial, y: Sequence[int], p: int, critical_points, declared_lct=None):
    """(point, order, estimate) for the known critical points congruent to y mod p."""
    pts, _ = _points_and_tag(critical_points)
    target = tuple(int(c) % p for c in y)
    for pt in pts:
        if reduce_point_mod(pt, p) == target:
            yield pt, point_order(F, pt), point_estimate(F, pt, declared_lct)


def compute_a_y_p(F: Polynomial, y: Sequence[int], p: int, critical_points, declared_lct=None) -> LctEstimate:
    _, tag = _points_and_tag(critical_points)
    ests = [est for _, _, est in local_candidates(F, y, p, critical_points, declared_lct)]
    if not ests:
        return LctEstimate.exact(1, "smooth", notes=(tag, "no singular point found; bound trivial"))
    return lct_min(ests).with_notes(tag)


def compute_r_y_p(F: Polynomial, y: Sequence[int], p: int, critical_points, declared_lct=None) -> int | float:
    a = compute_a_y_p(F, y, p, critical_points, declared_lct)
    orders = [order for _, order, est in local_candidates(F, y, p, critical_points, declared_lct)
              if est.lower_value() == a.lower_value() and est.upper_value() == a.upper_value()]
    return min(orders, default=math.inf)


@dataclass(frozen=True)
class CriticalPointRecord:
    point: tuple
    value: Fraction
    order: int
    stratum: Fraction
    lct_at_point: LctEstimate
    lowest_form: str = ""
    reduced_mod_p: bool | None = None


def stratify_critical_points(F: Polynomial, critical_points, p: int | None = None,
                             declared_lct=None) -> list[CriticalPointRecord]:
    """Sort the known critical points into the strata V_0, V_{1/2}, V_1."""
    pts, _ = _points_and_tag(critical_points)
    r = compute_r(F, pts)
    out = []
    for pt in pts:
        germ = shifted_germ(F, pt)
        order = germ.lowest_degree()
        low = homogeneous_parts(germ).part(order)
        if order > r:
            stratum = Fraction(0)
        else:
            stratum = Fraction(1) if is_reduced(low) else Fraction(1, 2)
        red_p = None
        if p is not None and all(isinstance(c, int) for c in pt):
            red_p = is_reduced_mod(low, p)
        value = as_fraction(F.evaluate([as_fraction(c) for c in pt]))
        out.append(CriticalPointRecord(tuple(pt), value, order, stratum,
                                       point_estimate(F, pt, declared_lct), format_polynomial(low), red_p))
    return out


# ---------------------------------------------------------------------------
# interval verdicts


@dataclass(frozen=True)
class Interval:
    lower: Fraction
    upper: Fraction

    @classmethod
    def point(cls, v) -> "Interval":
        v = as_fraction(v)
        return cls(v, v)

    @classmethod
    def of(cls, est: LctEstimate) -> "Interval":
        return cls(est.lower_value(), est.upper_value())

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    def __add__(self, other) -> "Interval":
        other = other if isinstance(other, Interval) else Interval.point(other)
        return Interval(self.lower + other.lower, self.upper + other.upper)

    __radd__ = __add__

    def scale(self, c) -> "Interval":
        c = as_fraction(c)
        if c < 0:
            raise ValueError("only nonnegative scaling")
        return Interval(self.lower * c, self.upper * c)

    def __str__(self):
        if self.is_exact:
            return format_rational(self.lower)
        return f"[{format_rational(self.lower)}, {format_rational(self.upper)}]"


def compare(lhs: Interval, rhs: Interval) -> str:
    """Verdict for lhs <= rhs: sound pass, sound fail, or inconclusive."""
    if lhs.upper <= rhs.lower:
        return "pass"
    if lhs.lower > rhs.upper:
        return "fail"
    return "inconclusive"


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    applicable: bool
    verdict: str  # pass, fail, inconclusive, not-applicable
    lhs: Interval | None = None
    rhs: Interval | None = None
    detail: str = ""

    @property
    def equality(self) -> bool:
        return (self.lhs is not None and self.rhs is not None and self.lhs.is_exact
                and self.rhs.is_exact and self.lhs.lower == self.rhs.lower)

    def to_dict(self) -> dict:
        d = {"name": self.name, "applicable": self.applicable, "verdict": self.verdict, "detail": self.detail}
        if self.lhs is not None:
            d["lhs"] = str(self.lhs)
            d["rhs"] = str(self.rhs)
            d["equality"] = self.equality
        return d


def _check(name: str, lhs: Interval, rhs: Interval, detail: str = "") -> InequalityCheck:
    return InequalityCheck(name, True, compare(lhs, rhs), lhs, rhs, detail)


def _skip(name: str, detail: str) -> InequalityCheck:
    return InequalityCheck(name, False, "not-applicable", detail=detail)


@dataclass(frozen=True)
class CheckReport:
    function: str
    poly: str
    checks: tuple[InequalityCheck, ...]
    c0: LctEstimate | None = None
    extra: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        vs = [c.verdict for c in self.checks if c.applicable]
        if "fail" in vs:
            return "fail"
        if "inconclusive" in vs:
            return "inconclusive"
        return "pass" if vs else "not-applicable"

    def to_dict(self) -> dict:
        d = {"function": self.function, "poly": self.poly, "verdict": self.verdict,
             "checks": [c.to_dict() for c in self.checks]}
        if self.c0 is not None:
            d["c0"] = self.c0.to_dict()
        d.update(self.extra)
        return d


def _setup(f: Polynomial, declared_lct=None):
    if f.is_zero():
        raise ValueError("zero polynomial")
    parts = homogeneous_parts(f)
    return parts, parts.lowest, lct_at_origin(f, declared_lct)


def _c_of_homogeneous(g: Polynomial, declared=None) -> LctEstimate:
    """Global lct of a homogeneous polynomial: it is attained at the origin."""
    return lct_at_origin(g, declared)


def check_trivial_bounds(f: Polynomial, declared_lct=None) -> CheckReport:
    parts, r, c0 = _setup(f, declared_lct)
    n = f.nvars
    lhs = Interval.of(c0)
    R = repeated_part(f)
    nonreduced = not R.is_constant() and R.coefficient((0,) * n) == 0
    checks = []
    if nonreduced:
        checks.append(_check("trivial0", lhs, Interval.point(Fraction(1, 2)), "c_0(f) <= 1/2 (non-reduced at 0)"))
    else:
        checks.append(_skip("trivial0", "f is reduced at 0"))
    checks.append(_check("trivial", lhs, Interval.point(Fraction(n, r)), f"c_0(f) <= n/r = {n}/{r}"))
    return CheckReport("check_trivial_bounds", format_polynomial(f), tuple(checks), c0)


def check_geomcfr(f: Polynomial, declared_lct=None) -> CheckReport:
    parts, r, c0 = _setup(f, declared_lct)
    n = f.nvars
    fr = parts.part(r)
    cfr = _c_of_homogeneous(fr, declared_lct if fr == f else None)
    lhs = Interval.of(c0).scale(r + 1)
    rhs = n + Interval.of(cfr)
    return CheckReport("check_geomcfr", format_polynomial(f),
                       (_check("c_0", lhs, rhs, f"(r+1)c_0(f) <= n + c(f_r), r={r}"),), c0,
                       {"c_fr": cfr.to_dict()})


def check_geomc(f: Polynomial, declared_lct=None) -> CheckReport:
    parts, r, c0 = _setup(f, declared_lct)
    n = f.nvars
    fr, fr1 = parts.part(r), parts.part(r + 1)
    R = repeated_part(fr)
    c = Interval.of(c0)
    checks = []
    if R.is_constant():
        checks.append(_skip("c_0-1", "f_r has no repeated factor"))
        checks.append(_skip("c_0-2", "f_r has no repeated factor"))
    else:
        checks.append(_check("c_0-1", c.scale(r + 1), Interval.point(n + Fraction(1, 2)),
                             f"g = {format_polynomial(R)}, g^2 | f_r"))
        g = R if fr1.is_zero() else polynomial_gcd(R, fr1)
        if g.is_constant():
            checks.append(_skip("c_0-2", "no repeated factor of f_r divides f_{r+1}"))
        else:
            checks.append(_check("c_0-2", c.scale(r + 2), Interval.point(n + 1),
                                 f"g = {format_polynomial(g)} divides f_(r+1)"))
    return CheckReport("check_geomc", format_polynomial(f), tuple(checks), c0)


def d_e(e: int) -> int:
    if e < 1:
        raise ValueError("e must be positive")
    return reduce(lambda a, b: a * b // math.gcd(a, b), range(1, e + 1), 1)


def _powered_I_e(f: Polynomial, e: int) -> list[tuple[Polynomial, int]]:
    d = d_e(e)
    parts = homogeneous_parts(f)
    return [(parts.part(i), d // (e - i + 1)) for i in range(1, e + 1) if not parts.part(i).is_zero()]


def _powered_J_k(f: Polynomial, k: int) -> list[tuple[Polynomial, int]]:
    d = d_e(k)
    parts = homogeneous_parts(f)
    r = parts.lowest
    return [(parts.part(r + i), d // (k - i)) for i in range(k) if not parts.part(r + i).is_zero()]


def ideal_I_e(f: Polynomial, e: int) -> list[Polynomial]:
    return [g ** a for g, a in _powered_I_e(f, e)]


def ideal_J_k(f: Polynomial, k: int) -> list[Polynomial]:
    return [g ** a for g, a in _powered_J_k(f, k)]


def ideal_lct(powered: Sequence[tuple[Polynomial, int]]) -> LctEstimate:
    """c(I) for I generated by homogeneous g_i^{a_i}; the zero ideal gives 0.

    Monomial generators go through Howald's formula.  Otherwise the bracket is
    max_i c(g_i)/a_i from below (I contains each generator) and the Howald
    value of all monomials present from above (I sits inside that monomial
    ideal).  A single generator is exact whenever c(g) is.
    """
    powered = [(g, a) for g, a in powered if not g.is_zero()]
    if not powered:
        return LctEstimate.exact(0, "zero-ideal")
    gens = [g ** a for g, a in powered]
    if all(g.is_monomial() for g in gens):
        return LctEstimate.exact(lct_monomial_ideal([g.support[0] for g in gens]), "howald-monomial")
    per = []
    for g, a in powered:
        est = lct_at_origin(g)
        per.append(Interval.of(est).scale(Fraction(1, a)))
    if len(per) == 1 and per[0].is_exact:
        return LctEstimate.exact(per[0].lower, "single-generator")
    lower = max(iv.lower for iv in per)
    monos = sorted({e for g in gens for e in g.support})
    upper = lct_monomial_ideal(monos)
    if len(per) == 1:
        upper = min(upper, per[0].upper)
    return LctEstimate.bracket(lower, upper, "howald-bracket")


def check_geomcfe(f: Polynomial, e: int, declared_lct=None) -> CheckReport:
    _, _, c0 = _setup(f, declared_lct)
    n = f.nvars
    cI = ideal_lct(_powered_I_e(f, e))
    lhs = Interval.of(c0).scale(e + 1)
    rhs = n + Interval.of(cI).scale(d_e(e))
    return CheckReport("check_geomcfe", format_polynomial(f),
                       (_check("c_0e", lhs, rhs, f"e={e}, d_e={d_e(e)}"),), c0, {"c_I": cI.to_dict()})


def check_c0k(f: Polynomial, k: int, declared_lct=None) -> CheckReport:
    _, r, c0 = _setup(f, declared_lct)
    n = f.nvars
    cJ = ideal_lct(_powered_J_k(f, k))
    lhs = Interval.of(c0).scale(r + k)
    rhs = n + Interval.of(cJ).scale(d_e(k))
    return CheckReport("check_c0k", format_polynomial(f),
                       (_check("c_0k", lhs, rhs, f"k={k}, r={r}, d_k={d_e(k)}"),), c0, {"c_J": cJ.to_dict()})
