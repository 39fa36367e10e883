"""Exact two-phase simplex over the rationals.

Solves  minimize c.x  subject to  A x = b, x >= 0  with Fraction arithmetic and
Bland's rule, which rules out cycling.  Problem sizes here are tiny (a few
dozen columns), so a dense tableau is perfectly adequate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], row: int, col: int):
    piv = T[row][col]
    T[row] = [v / piv for v in T[row]]
    for i, r in enumerate(T):
        if i != row and r[col] != 0:
            f = r[col]
            T[i] = [a - f * b for a, b in zip(r, T[row])]
    basis[row] = col


def _run(T, basis, cost_row: int, allowed: int) -> bool:
    """Simplex iterations on T minimizing the row ``cost_row``; False if unbounded."""
    nrows = cost_row
    while True:
        obj = T[cost_row]
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return True
        best = None
        for i in range(nrows):
            a = T[i][col]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], col)


def solve_lp(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """minimize c.x subject to A x = b, x >= 0, exactly."""
    m, n = len(A), len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # columns: n originals, m artificials, rhs
    T = [A[i] + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    phase1 = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        phase1 = [p - v for p, v in zip(phase1, T[i])]
    for k in range(m):
        phase1[n + k] = Fraction(0)
    T.append(phase1)
    _run(T, basis, m, n + m)
    if T[m][-1] != 0:
        return LPResult("infeasible")
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                _pivot(T, basis, i, col)
    keep = [i for i in range(m) if basis[i] < n]
    T = [T[i][:n] + [T[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    obj = c[:] + [Fraction(0)]
    for i, j in enumerate(basis):
        if obj[j] != 0:
            f = obj[j]
            obj = [a - f * v for a, v in zip(obj, T[i])]
    T.append(obj)
    if not _run(T, basis, len(basis), n):
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return LPResult("optimal", -T[-1][-1], tuple(x))


def feasible(A: Sequence[Sequence], b: Sequence) -> bool:
    return solve_lp([0] * len(A[0]), A, b).status != "infeasible"
