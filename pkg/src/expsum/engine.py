"""Exact exponential sums modulo prime powers, over finite fields and over F_q((t)).

Every value is assembled from exact integer data (a fiber histogram or a sparse
set of integer weights) paired with roots of unity in floating point at the
very end, so each returned value carries a rigorous absolute error bound.

Two evaluation strategies are offered for S(F, p, m):

* ``enumerate``: full histogram of F over (Z/p^m)^n.
* ``recursive``: descends only through critical residues.  Cosets on which the
  gradient is nonzero mod p contribute exactly zero for m >= 2, and on a
  critical coset y + pZ^n one has F(y + pz) = F(y) + p^2 G(z) with G integral,
  so the coset sum is a phase times p^n S(G, p, m - 2).  The output is a sparse
  map {a mod p^m: w} with sum_x e(F(x)/p^m) = sum_a w_a e(a/p^m).
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
import sympy as sp

from .enumeration import (
    DEFAULT_CAP,
    BudgetExceeded,
    check_budget,
    grid_values,
    progression_histogram,
    worker_count,
)
from .fields import get_field
from .poly import (
    Polynomial,
    format_polynomial,
    gradient,
    homogeneous_parts,
    prime_power,
    taylor_shift,
)
from .truncated import all_jets, evaluate_on_jets

EPS = np.finfo(float).eps
ZERO_TOL = 1e-12


def _require_prime(p: int):
    if not sp.isprime(p):
        raise ValueError(f"{p} is not prime")


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True, eq=False)
class FiberCounts:
    """counts[a] = #{x : F(x) = a mod p^m} over the whole grid or over one coset."""

    p: int
    m: int
    nvars: int
    counts: np.ndarray
    coset: tuple[int, ...] | None = None

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        if len(counts) != self.p ** self.m:
            raise ValueError("histogram length must be p^m")
        if (counts < 0).any():
            raise ValueError("negative fiber count")

    @property
    def modulus(self) -> int:
        return self.p ** self.m

    @property
    def domain_size(self) -> int:
        free = self.m if self.coset is None else self.m - 1
        return self.p ** (free * self.nvars)

    def is_conserved(self) -> bool:
        return int(self.counts.sum()) == self.domain_size

    def to_json(self) -> str:
        data = {"p": self.p, "m": self.m, "nvars": self.nvars, "counts": self.counts.tolist()}
        if self.coset is not None:
            data["coset"] = list(self.coset)
        return json.dumps(data, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "FiberCounts":
        d = json.loads(text)
        coset = tuple(d["coset"]) if d.get("coset") is not None else None
        return cls(d["p"], d["m"], d["nvars"], np.array(d["counts"], dtype=np.int64), coset)


@dataclass(frozen=True)
class ReducedWeights:
    """Sparse exact weights: sum over the domain of e(F(x)/p^m) = sum_a w[a] e(a/p^m).

    Produced by the coset recursion.  Nonsingular cosets are omitted since they
    contribute zero, so the weights are not fiber counts.
    """

    p: int
    m: int
    nvars: int
    weights: dict[int, int]
    work: int = 0


@dataclass(frozen=True)
class ExpSumValue:
    re: float
    im: float
    modulus: float
    abs_error_bound: float
    normalization: float
    method: str = "enumerate"
    source: FiberCounts | None = field(default=None, repr=False, compare=False)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def is_zero(self, tol: float = ZERO_TOL) -> bool:
        return self.modulus <= max(tol, self.abs_error_bound)


@dataclass(frozen=True)
class LocalFieldSpec:
    """The local field Q_p (kind 'p-adic') or F_q((t)), q = p^s (kind 't-series')."""

    kind: str
    p: int
    m: int
    s: int = 1

    def __post_init__(self):
        if self.kind not in ("p-adic", "t-series"):
            raise ValueError(f"unknown local field kind {self.kind!r}")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.kind == "p-adic" and self.s != 1:
            raise ValueError("p-adic fields here are Q_p, so s must be 1")
        if not 1 <= self.s <= 3:
            raise ValueError("extension degree must be 1, 2 or 3")
        _require_prime(self.p)

    @property
    def q(self) -> int:
        return self.p ** self.s


# ---------------------------------------------------------------------------
# pairing with roots of unity


def pair(residues, weights, modulus: int, scale: float, method: str = "enumerate",
         source: FiberCounts | None = None) -> ExpSumValue:
    """scale * sum_a w_a e(a / modulus) with an absolute error bound.

    Each summand w e(a/M) is formed with a relative error of a few ulps; the
    bound charges 2 eps per summand of the pairwise float summation plus 6 eps
    per term for the cos/sin evaluation, all relative to scale * sum |w|.
    """
    residues = np.asarray(residues, dtype=np.int64)
    weights = np.asarray(weights)
    nz = weights != 0
    a = residues[nz] % modulus
    w = weights[nz].astype(float)
    k = len(w)
    if k == 0:
        return ExpSumValue(0.0, 0.0, 0.0, 0.0, scale, method, source)
    theta = (2.0 * np.pi) * (a / float(modulus))
    re = float(np.sum(w * np.cos(theta))) * scale
    im = float(np.sum(w * np.sin(theta))) * scale
    mass = float(np.sum(np.abs(w))) * scale
    bound = float(EPS * (2 * k + 8) * mass)
    return ExpSumValue(re, im, math.hypot(re, im), bound, scale, method, source)


def _pair_weights(rw: ReducedWeights, scale: float, method: str) -> ExpSumValue:
    if not rw.weights:
        return ExpSumValue(0.0, 0.0, 0.0, 0.0, scale, method)
    keys = np.fromiter(rw.weights.keys(), dtype=np.int64, count=len(rw.weights))
    vals = np.array([float(v) for v in rw.weights.values()])
    return pair(keys, vals, rw.p ** rw.m, scale, method)


# ---------------------------------------------------------------------------
# enumeration


def fiber_counts(F: Polynomial, p: int, m: int, cap: int | None = None) -> FiberCounts:
    """Exact histogram of F over (Z/p^m)^n."""
    _require_prime(p)
    if m < 1:
        raise ValueError("m must be at least 1")
    check_budget(p ** (m * F.nvars), cap)
    M = p ** m
    hist = progression_histogram(F, M, [0] * F.nvars, 1, M, cap=cap)
    return FiberCounts(p, m, F.nvars, hist)


def coset_fiber_counts(F: Polynomial, p: int, m: int, y: Sequence[int], cap: int | None = None,
                       workers: int | None = None) -> FiberCounts:
    """Histogram of F over the coset y + (pZ/p^m)^n."""
    _require_prime(p)
    if len(y) != F.nvars:
        raise ValueError(f"point has length {len(y)}, expected {F.nvars}")
    y0 = tuple(int(v) % p for v in y)
    check_budget(p ** ((m - 1) * F.nvars), cap)
    hist = progression_histogram(F, p ** m, y0, p, p ** (m - 1), cap=cap, workers=workers)
    return FiberCounts(p, m, F.nvars, hist, coset=y0)


class FiberCache:
    """On-disk JSON cache of fiber histograms keyed by (canonical print, p, m)."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, F: Polynomial, p: int, m: int) -> Path:
        key = f"{F.nvars}|{format_polynomial(F)}|{p}|{m}"
        return self.directory / (hashlib.sha256(key.encode()).hexdigest()[:24] + ".json")

    def get(self, F: Polynomial, p: int, m: int) -> FiberCounts | None:
        path = self._path(F, p, m)
        if not path.exists():
            return None
        return FiberCounts.from_json(path.read_text())

    def fiber_counts(self, F: Polynomial, p: int, m: int, cap: int | None = None) -> FiberCounts:
        hit = self.get(F, p, m)
        if hit is not None:
            return hit
        fc = fiber_counts(F, p, m, cap)
        self._path(F, p, m).write_text(fc.to_json())
        return fc


# ---------------------------------------------------------------------------
# the coset recursion


def critical_residues(F: Polynomial, p: int) -> list[tuple[int, ...]]:
    """Residues v in F_p^n with grad F(v) = 0 mod p, in lexicographic order."""
    n = F.nvars
    mask = np.ones((p,) * n, dtype=bool)
    for g in gradient(F):
        if g.is_zero():
            continue
        mask &= grid_values(g, p) == 0
        if not mask.any():
            return []
    return [tuple(int(c) for c in v) for v in np.argwhere(mask)]


def _valuation(c: int, p: int) -> int:
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


def _reduce_coeffs(F: Polynomial, modulus: int) -> Polynomial:
    return Polynomial.from_dict(F.nvars, {e: c % modulus for e, c in F.terms})


def critical_step(F: Polynomial, p: int, y: Sequence[int], k: int) -> tuple[int, Polynomial]:
    """(F(y), G) with F(y + p z) = F(y) + p^2 G(z), G reduced mod p^(k-2)."""
    T = taylor_shift(F, list(y)).scale_variables(p)
    G = T.exact_div(p * p)
    return F.evaluate(list(y)), _reduce_coeffs(G, p ** max(k - 2, 0))


class _Budget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def spend(self, amount: int):
        self.used += amount
        if self.used > self.cap:
            raise BudgetExceeded(self.used, self.cap, "recursion evaluation points")


def _merge(out: dict, key: int, w: int):
    out[key] = out.get(key, 0) + w


def _full_weights(F: Polynomial, p: int, k: int, budget: _Budget) -> dict[int, int]:
    """Weights of sum_{x mod p^k} e(F(x)/p^k) as {a mod p^k: w}."""
    n = F.nvars
    M = p ** k
    if k == 0:
        return {0: 1}
    zero = (0,) * n
    c = F.coefficient(zero)
    H = F.without_constant()
    H = _reduce_coeffs(H, M)
    if H.is_zero():
        return {c % M: p ** (k * n)}
    j = min(_valuation(coef, p) for _, coef in H.terms)
    if j > 0:
        inner = _full_weights(H.exact_div(p ** j), p, k - j, budget)
        out: dict[int, int] = {}
        for a, w in inner.items():
            _merge(out, (c + p ** j * a) % M, w * p ** (j * n))
        return out
    if k == 1:
        budget.spend(p ** n)
        hist = progression_histogram(H, p, zero, 1, p, workers=1)
        return {(c + int(a)) % p: int(w) for a, w in enumerate(hist) if w}
    budget.spend(p ** n)
    out = {}
    for y in critical_residues(H, p):
        hy, G = critical_step(H, p, y, k)
        inner = _full_weights(G, p, k - 2, budget)
        for a, w in inner.items():
            _merge(out, (c + hy + p * p * a) % M, w * p ** n)
    return out


def reduced_weights(F: Polynomial, p: int, m: int, cap: int | None = None) -> ReducedWeights:
    _require_prime(p)
    budget = _Budget(DEFAULT_CAP if cap is None else cap)
    w = _full_weights(F, p, m, budget)
    return ReducedWeights(p, m, F.nvars, {a: v for a, v in sorted(w.items()) if v}, budget.used)


def local_reduced_weights(F: Polynomial, p: int, m: int, y: Sequence[int],
                          cap: int | None = None) -> ReducedWeights:
    """Weights of the coset sum over x = y mod p (empty when grad F(y) != 0 mod p, m >= 2)."""
    _require_prime(p)
    n = F.nvars
    y0 = [int(v) % p for v in y]
    M = p ** m
    fy = F.evaluate(y0)
    if m == 1:
        return ReducedWeights(p, m, n, {fy % M: 1})
    if any(g.evaluate(y0, p) != 0 for g in gradient(F)):
        return ReducedWeights(p, m, n, {})
    budget = _Budget(DEFAULT_CAP if cap is None else cap)
    _, G = critical_step(F, p, y0, m)
    inner = _full_weights(G, p, m - 2, budget)
    out: dict[int, int] = {}
    for a, w in inner.items():
        _merge(out, (fy + p * p * a) % M, w * p ** n)
    return ReducedWeights(p, m, n, {a: v for a, v in sorted(out.items()) if v}, budget.used)


# ---------------------------------------------------------------------------
# S(F, p, m) and S_y(F, p, m)


def _choose(method: str, points: int, cap: int | None) -> str:
    if method not in ("auto", "enumerate", "recursive"):
        raise ValueError(f"unknown method {method!r}")
    if method != "auto":
        return method
    return "enumerate" if points <= (DEFAULT_CAP if cap is None else cap) else "recursive"


def exp_sum(F: Polynomial, p: int, m: int, cap: int | None = None, method: str = "auto") -> ExpSumValue:
    """Normalized S(F, p, m) = p^(-mn) sum_{x mod p^m} e(F(x)/p^m)."""
    _require_prime(p)
    if m < 1:
        raise ValueError("m must be at least 1")
    n = F.nvars
    scale = float(p) ** (-m * n)
    how = _choose(method, p ** (m * n), cap)
    if how == "enumerate":
        fc = fiber_counts(F, p, m, cap)
        return pair(np.arange(fc.modulus), fc.counts, fc.modulus, scale, "enumerate", fc)
    return _pair_weights(reduced_weights(F, p, m, cap), scale, "recursive")


def exp_sum_local(F: Polynomial, p: int, m: int, y: Sequence[int], cap: int | None = None,
                  method: str = "enumerate", keep_source: bool = True,
                  workers: int | None = None) -> ExpSumValue:
    """Normalized S_y(F, p, m): the sum restricted to x = y mod p, still scaled by p^(-mn)."""
    _require_prime(p)
    if m < 1:
        raise ValueError("m must be at least 1")
    n = F.nvars
    scale = float(p) ** (-m * n)
    how = _choose(method, p ** ((m - 1) * n), cap)
    if how == "enumerate":
        fc = coset_fiber_counts(F, p, m, y, cap, workers=workers)
        return pair(np.arange(fc.modulus), fc.counts, fc.modulus, scale, "enumerate",
                    fc if keep_source else None)
    return _pair_weights(local_reduced_weights(F, p, m, y, cap), scale, "recursive")


def local_sums(F: Polynomial, p: int, m: int, ys: Sequence[Sequence[int]], cap: int | None = None,
               method: str = "enumerate", workers: int | None = None) -> list[ExpSumValue]:
    """S_y for many cosets, run concurrently; histograms are not retained."""
    ys = [tuple(y) for y in ys]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(ys) < 2:
        return [exp_sum_local(F, p, m, y, cap, method, keep_source=False) for y in ys]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(
            lambda y: exp_sum_local(F, p, m, y, cap, method, keep_source=False, workers=1), ys))


def all_residues(n: int, p: int) -> list[tuple[int, ...]]:
    return [tuple(int(c) for c in v) for v in np.indices((p,) * n).reshape(n, -1).T]


@dataclass(frozen=True)
class PartitionReport:
    passed: bool
    residual: float
    tolerance: float
    total: ExpSumValue
    local_total: complex


def partition_check(F: Polynomial, p: int, m: int, cap: int | None = None) -> PartitionReport:
    """Check sum_{y mod p} S_y = S with both sides computed by enumeration."""
    total = exp_sum(F, p, m, cap, method="enumerate")
    parts = local_sums(F, p, m, all_residues(F.nvars, p), cap)
    acc = complex(math.fsum(v.re for v in parts), math.fsum(v.im for v in parts))
    tol = total.abs_error_bound + sum(v.abs_error_bound for v in parts) + 4 * EPS * len(parts)
    residual = abs(acc - total.value)
    return PartitionReport(bool(residual <= tol), float(residual), float(tol), total, acc)


@dataclass(frozen=True)
class CriticalDecomposition:
    p: int
    m: int
    points: dict[tuple[int, ...], ExpSumValue]
    total: complex
    global_sum: ExpSumValue
    residual: float
    tolerance: float
    max_offcritical: float | None
    passed: bool
    status: str


def critical_decomposition(F: Polynomial, p: int, m: int, cap: int | None = None,
                           check_vanishing: bool = True) -> CriticalDecomposition:
    """Split S(F, p, m) over the critical residues V(F_p) and compare with the global sum.

    With ``check_vanishing`` every noncritical coset is also enumerated and the
    largest |S_y| found there is reported.  Both statements are identities for
    m >= 2, so a mismatch is flagged as an engine defect.
    """
    if m < 2:
        raise ValueError("the decomposition is stated for m >= 2")
    crit = critical_residues(F, p)
    vals = local_sums(F, p, m, crit, cap)
    points = dict(zip(crit, vals))
    acc = complex(math.fsum(v.re for v in vals), math.fsum(v.im for v in vals))
    glob = exp_sum(F, p, m, cap, method="enumerate")
    tol = glob.abs_error_bound + sum(v.abs_error_bound for v in vals) + 4 * EPS * (len(vals) + 1)
    residual = abs(acc - glob.value)
    max_off = None
    ok = bool(residual <= tol)
    if check_vanishing:
        critset = set(crit)
        others = [y for y in all_residues(F.nvars, p) if y not in critset]
        off = local_sums(F, p, m, others, cap)
        max_off = float(max((v.modulus for v in off), default=0.0))
        ok = ok and all(v.modulus <= v.abs_error_bound + ZERO_TOL for v in off)
    return CriticalDecomposition(p, m, points, acc, glob, float(residual), float(tol), max_off, ok,
                                 "ok" if ok else "engine-defect")


# ---------------------------------------------------------------------------
# finite fields


def _field_values(polys: Sequence[Polynomial], q: int, cap: int | None):
    """Yield per-chunk arrays of polynomial values at every point of F_q^n."""
    fld = get_field(q)
    n = polys[0].nvars
    check_budget(q ** n, cap)
    jets = [all_jets(fld, 1) for _ in range(n)]
    streams = [evaluate_on_jets(P, fld, jets, 1) for P in polys]
    for chunk in zip(*streams):
        yield [c[:, 0] for c in chunk]


def _pair_over_field(counts: np.ndarray, q: int, scale: float, method: str) -> ExpSumValue:
    fld = get_field(q)
    by_trace = np.bincount(fld.trace_table, weights=counts, minlength=fld.p)
    by_trace = np.rint(by_trace).astype(np.int64)
    return pair(np.arange(fld.p), by_trace, fld.p, scale, method)


def finite_field_character_sum(h: Polynomial, q: int, cap: int | None = None) -> ExpSumValue:
    """Unnormalized sum over F_q^n of psi(h(y)), psi = e(Tr(.)/p)."""
    p, s = prime_power(q)
    n = h.nvars
    if s == 1:
        hist = progression_histogram(h, p, [0] * n, 1, p, cap=cap)
        return pair(np.arange(p), hist, p, 1.0, "finite-field")
    counts = np.zeros(q, dtype=np.int64)
    for (vals,) in _field_values([h], q, cap):
        counts += np.bincount(vals, minlength=q)
    return _pair_over_field(counts, q, 1.0, "finite-field")


@dataclass(frozen=True)
class SchemeSum:
    value: ExpSumValue
    points: int


def scheme_character_sum(gens: Sequence[Polynomial], h: Polynomial, q: int,
                         cap: int | None = None) -> SchemeSum:
    """Sum of psi(h(y)) over the common zeros y in F_q^n of ``gens``, and their number."""
    prime_power(q)
    polys = list(gens) + [h]
    counts = np.zeros(q, dtype=np.int64)
    for chunk in _field_values(polys, q, cap):
        mask = np.ones(len(chunk[-1]), dtype=bool)
        for g in chunk[:-1]:
            mask &= g == 0
        counts += np.bincount(chunk[-1][mask], minlength=q)
    return SchemeSum(_pair_over_field(counts, q, 1.0, "finite-field"), int(counts.sum()))


# ---------------------------------------------------------------------------
# local fields


def local_field_counts(F: Polynomial, K: LocalFieldSpec, y: Sequence[int] | None = None,
                       cap: int | None = None) -> np.ndarray:
    """Histogram over F_q of the t^(m-1) coefficient of F(x) mod t^m."""
    fld = get_field(K.q)
    n, m = F.nvars, K.m
    free = m if y is None else m - 1
    check_budget(K.q ** (free * n), cap)
    if y is None:
        jets = [all_jets(fld, m) for _ in range(n)]
    else:
        if len(y) != n:
            raise ValueError(f"point has length {len(y)}, expected {n}")
        jets = [all_jets(fld, m, constant=int(v) % K.q) for v in y]
    counts = np.zeros(K.q, dtype=np.int64)
    for vals in evaluate_on_jets(F, fld, jets, m):
        counts += np.bincount(vals[:, m - 1], minlength=K.q)
    return counts


def local_field_exp_sum(F: Polynomial, K: LocalFieldSpec, y: Sequence[int] | None = None,
                        cap: int | None = None) -> ExpSumValue:
    """q^(-mn) times the sum over x in O_K/(pi^m) of psi_K(F(x)/pi^m).

    For F_q((t)) the character reads off the t^(m-1) coefficient of F(x) and
    applies psi_q.  A point y (field encodings per coordinate) restricts to
    x = y mod t.  The p-adic kind delegates to the Z/p^m engine.
    """
    if K.kind == "p-adic":
        if y is None:
            return exp_sum(F, K.p, K.m, cap)
        return exp_sum_local(F, K.p, K.m, y, cap)
    counts = local_field_counts(F, K, y, cap)
    scale = float(K.q) ** (-K.m * F.nvars)
    return _pair_over_field(counts, K.q, scale, "t-series")


# ---------------------------------------------------------------------------
# identities from the m = r+1 and m = r+2 analyses


@dataclass(frozen=True)
class IdentityReport:
    status: str  # "pass", "fail" or "inapplicable"
    lhs: float | None = None
    rhs: float | None = None
    difference: float | None = None
    tolerance: float | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def select_base_point(F: Polynomial, p: int, y: Sequence[int], critical_points=None):
    """An integer critical point y' = y mod p realizing a_{y,p} with order r_{y,p}.

    Returns (y', r, a_estimate) or None when no admissible integer point is known.
    """
    from .lct import compute_a_y_p, find_critical_points, local_candidates

    if critical_points is None:
        critical_points = find_critical_points(F).points
    a = compute_a_y_p(F, y, p, critical_points)
    best = None
    for pt, order, est in local_candidates(F, y, p, critical_points):
        if not all(isinstance(c, int) for c in pt):
            continue
        if est.lower_value() != a.lower_value() or est.upper_value() != a.upper_value():
            continue
        if best is None or order < best[1]:
            best = (pt, order, est)
    return best


def reduction_identity(F: Polynomial, p: int, y: Sequence[int], critical_points=None,
                       cap: int | None = None) -> IdentityReport:
    """Compare |S_y(F, p, r+1)| with p^(-2n) |sum over F_p^n of psi(f_r)|.

    Here f_r is the lowest homogeneous part of F(x + y') - F(y') at an integer
    critical point y' = y mod p of order r.
    """
    chosen = select_base_point(F, p, y, critical_points)
    if chosen is None:
        return IdentityReport("inapplicable", details={"reason": "no integer critical point in the coset"})
    yp, r, _ = chosen
    if not math.isfinite(r):
        return IdentityReport("inapplicable", details={"reason": "infinite order"})
    n = F.nvars
    m = r + 1
    lhs = exp_sum_local(F, p, m, yp, cap)
    fr = homogeneous_parts(taylor_shift(F, list(yp))).part(r)
    char = finite_field_character_sum(fr, p, cap)
    scale = float(p) ** (-2 * n)
    rhs = char.modulus * scale
    tol = lhs.abs_error_bound + char.abs_error_bound * scale + 1e-15
    diff = abs(lhs.modulus - rhs)
    return IdentityReport("pass" if diff <= tol else "fail", lhs.modulus, rhs, diff, tol,
                          {"base_point": tuple(yp), "r": r, "m": m, "lowest_form": format_polynomial(fr)})


def split_I1_I2(F: Polynomial, p: int, y: Sequence[int], critical_points=None,
                cap: int | None = None) -> IdentityReport:
    """Split the m = r+2 coset sum along X = {grad f_r = 0 mod p}.

    With G = f_r + p f_{r+1}, I_j = p^(-2n) sum e(G(u)/p^2) over u mod p^2 with
    u mod p in X (j = 1) or outside X (j = 2).  The report compares |S_y| with
    p^(-n) |I_1| and records |I_2|, which must vanish.
    """
    chosen = select_base_point(F, p, y, critical_points)
    if chosen is None:
        return IdentityReport("inapplicable", details={"reason": "no integer critical point in the coset"})
    yp, r, est = chosen
    if not math.isfinite(r):
        return IdentityReport("inapplicable", details={"reason": "infinite order"})
    n = F.nvars
    m = r + 2
    lhs = exp_sum_local(F, p, m, yp, cap)
    parts = homogeneous_parts(taylor_shift(F, list(yp)))
    fr, fr1 = parts.part(r), parts.part(r + 1)
    G = fr + fr1.scale(p)
    check_budget(p ** (2 * n), cap)
    P2 = p * p
    vals = grid_values(G, P2, P2)
    mask = np.ones((P2,) * n, dtype=bool)
    for g in gradient(fr):
        if not g.is_zero():
            mask &= grid_values(g, p, P2) == 0
    scale = float(p) ** (-2 * n)
    I1 = pair(np.arange(P2), np.bincount(vals[mask], minlength=P2), P2, scale, "split")
    I2 = pair(np.arange(P2), np.bincount(vals[~mask], minlength=P2), P2, scale, "split")
    rhs = I1.modulus * float(p) ** (-n)
    tol = lhs.abs_error_bound + I1.abs_error_bound * float(p) ** (-n) + 1e-15
    diff = abs(lhs.modulus - rhs)
    i2_ok = I2.modulus <= I2.abs_error_bound + ZERO_TOL
    a_low = est.lower_value()
    bound = float(p) ** (-m * float(a_low)) if a_low is not None else None
    ok = diff <= tol and i2_ok
    return IdentityReport("pass" if ok else "fail", lhs.modulus, rhs, diff, tol,
                          {"base_point": tuple(yp), "r": r, "m": m, "I1": I1.modulus,
                           "I2": I2.modulus, "I2_bound": I2.abs_error_bound,
                           "exponent": str(a_low) if a_low is not None else None,
                           "decay_bound": bound})
