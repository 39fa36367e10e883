"""Exact value histograms of integer polynomials over residue grids.

The grid is a product of arithmetic progressions x_i = base_i + stride * z_i,
0 <= z_i < count, taken modulo M.  The innermost variable is stepped with a
forward-difference table so each grid point costs a handful of modular
additions; the outer variables are walked as an odometer.  Work is split over
the range of the outermost variable and the partial histograms are summed.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numba import njit

from .poly import Polynomial

DEFAULT_CAP = 10 ** 8
MAX_MODULUS = 2 ** 31
_MIN_SPLIT = 1 << 20


class BudgetExceeded(RuntimeError):
    """Raised instead of silently truncating an enumeration."""

    def __init__(self, required: int, cap: int, what: str = "evaluation points"):
        super().__init__(f"needs {required} {what}, cap is {cap}; raise the cap to proceed")
        self.required = required
        self.cap = cap


def worker_count() -> int:
    env = os.environ.get("EXPSUM_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def check_budget(required: int, cap: int | None, what: str = "evaluation points"):
    cap = DEFAULT_CAP if cap is None else cap
    if required > cap:
        raise BudgetExceeded(required, cap, what)


@njit(cache=True, nogil=True)
def _histogram_kernel(exps, coeffs, base, stride, count, modulus, lo, hi, hist):
    nterms, n = exps.shape
    last = n - 1
    M = modulus
    d = 0
    for t in range(nterms):
        if exps[t, last] > d:
            d = exps[t, last]
    maxdeg = 0
    for t in range(nterms):
        for i in range(n):
            if exps[t, i] > maxdeg:
                maxdeg = exps[t, i]
    # powers of the current outer values
    pw = np.ones((n, maxdeg + 1), dtype=np.int64)
    z = np.zeros(n, dtype=np.int64)
    A = np.zeros(d + 1, dtype=np.int64)
    D = np.zeros(d + 1, dtype=np.int64)
    vals = np.zeros(d + 1, dtype=np.int64)

    if n == 1:
        inner_lo, inner_hi = lo, hi
        outer_total = 1
    else:
        inner_lo, inner_hi = 0, count
        z[0] = lo
        outer_total = hi - lo
        for i in range(1, last):
            outer_total *= count
    if inner_hi <= inner_lo or outer_total <= 0:
        return

    for step in range(outer_total):
        # refresh outer powers
        for i in range(last):
            v = (base[i] + stride * z[i]) % M
            pw[i, 0] = 1
            for e in range(1, maxdeg + 1):
                pw[i, e] = (pw[i, e - 1] * v) % M
        for j in range(d + 1):
            A[j] = 0
        for t in range(nterms):
            c = coeffs[t]
            for i in range(last):
                e = exps[t, i]
                if e:
                    c = (c * pw[i, e]) % M
            j = exps[t, last]
            A[j] = (A[j] + c) % M
        if d == 0:
            hist[A[0]] += inner_hi - inner_lo
        else:
            # values at the first d+1 inner points, then forward differences
            for k in range(d + 1):
                v = (base[last] + stride * (inner_lo + k)) % M
                acc = A[d]
                for j in range(d - 1, -1, -1):
                    acc = (acc * v + A[j]) % M
                vals[k] = acc
            for k in range(d + 1):
                D[k] = vals[0]
                for j in range(d - k):
                    vals[j] = (vals[j + 1] - vals[j]) % M
            for zz in range(inner_lo, inner_hi):
                hist[D[0]] += 1
                for k in range(d):
                    s = D[k] + D[k + 1]
                    if s >= M:
                        s -= M
                    D[k] = s
        # advance odometer over outer variables (variable 0 is slowest)
        i = last - 1
        while i >= 0:
            z[i] += 1
            limit = hi if i == 0 else count
            if z[i] < limit:
                break
            z[i] = lo if i == 0 else 0
            i -= 1


def _prepare(poly: Polynomial, modulus: int):
    if poly.is_zero():
        exps = np.zeros((1, poly.nvars), dtype=np.int64)
        coeffs = np.zeros(1, dtype=np.int64)
    else:
        exps = np.array([e for e, _ in poly.terms], dtype=np.int64)
        coeffs = np.array([c % modulus for _, c in poly.terms], dtype=np.int64)
    return exps, coeffs


def progression_histogram(poly: Polynomial, modulus: int, base, stride: int, count: int,
                          cap: int | None = None, workers: int | None = None) -> np.ndarray:
    """counts[a] = #{z in [0,count)^n : poly(base + stride*z) = a mod modulus}."""
    n = poly.nvars
    if modulus > MAX_MODULUS:
        raise ValueError(f"modulus {modulus} exceeds {MAX_MODULUS}")
    check_budget(count ** n, cap)
    exps, coeffs = _prepare(poly, modulus)
    base = np.array([int(b) % modulus for b in base], dtype=np.int64)
    if len(base) != n:
        raise ValueError("base point has wrong length")
    workers = worker_count() if workers is None else workers
    total = count ** n
    if workers <= 1 or total < _MIN_SPLIT or count < 2:
        hist = np.zeros(modulus, dtype=np.int64)
        _histogram_kernel(exps, coeffs, base, stride, count, modulus, 0, count, hist)
        return hist
    bounds = np.linspace(0, count, min(workers, count) + 1).astype(np.int64)

    def run(k):
        h = np.zeros(modulus, dtype=np.int64)
        _histogram_kernel(exps, coeffs, base, stride, count, modulus,
                          int(bounds[k]), int(bounds[k + 1]), h)
        return h

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run, range(len(bounds) - 1)))
    return np.sum(parts, axis=0)


def grid_values(poly: Polynomial, modulus: int, size: int | None = None) -> np.ndarray:
    """poly evaluated at every point of [0, size)^n, reduced mod modulus.

    Returns an array of shape (size,) * n.  Intended for small grids (gradient
    zero sets mod p and the like).
    """
    n = poly.nvars
    size = modulus if size is None else size
    out = np.zeros((size,) * n, dtype=np.int64)
    if modulus * modulus >= 2 ** 63:
        raise ValueError("modulus too large for grid evaluation")
    axis = np.arange(size, dtype=np.int64) % modulus
    for exp, c in poly.terms:
        term = np.full((1,) * n, c % modulus, dtype=np.int64)
        for i, e in enumerate(exp):
            if e:
                pw = np.ones(size, dtype=np.int64)
                for _ in range(e):
                    pw = (pw * axis) % modulus
                shape = [1] * n
                shape[i] = size
                term = (term * pw.reshape(shape)) % modulus
        out = (out + term) % modulus
    return out
