"""Slow, independent reference implementations used to freeze expected values.

Nothing here imports the package under test.  Polynomials are given as sympy
expressions and evaluated term by term with plain Python integers.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction

import sympy as sp

X, Y, Z = sp.symbols("x y z")


def terms_of(expr, gens):
    return [(tuple(int(e) for e in mon), int(c)) for mon, c in sp.Poly(sp.expand(expr), *gens).as_dict().items()]


def _eval(terms, point, mod):
    total = 0
    for exps, c in terms:
        v = c
        for xi, e in zip(point, exps):
            v *= pow(xi, e, mod)
        total += v
    return total % mod


def brute_exp_sum(expr, gens, p, m, y=None):
    """p^(-mn) * sum exp(2 pi i F(x)/p^m) over x mod p^m, optionally only x = y mod p."""
    mod = p**m
    terms = terms_of(expr, gens)
    n = len(gens)
    acc = 0j
    for x in itertools.product(range(mod), repeat=n):
        if y is not None and any((xi - yi) % p for xi, yi in zip(x, y)):
            continue
        acc += cmath.exp(2j * math.pi * _eval(terms, x, mod) / mod)
    return acc / mod**n


def brute_prime_field_sum(expr, gens, p):
    """Unnormalized sum of exp(2 pi i h(x)/p) over F_p^n."""
    terms = terms_of(expr, gens)
    return sum(cmath.exp(2j * math.pi * _eval(terms, x, p) / p) for x in itertools.product(range(p), repeat=len(gens)))


# truncated power series over a prime field

def _tmul(a, b, p, L):
    out = [0] * L
    for i, ai in enumerate(a):
        if ai:
            for j in range(L - i):
                out[i + j] = (out[i + j] + ai * b[j]) % p
    return out


def _teval(terms, jets, p, L):
    total = [0] * L
    for exps, c in terms:
        v = [c % p] + [0] * (L - 1)
        for jet, e in zip(jets, exps):
            for _ in range(e):
                v = _tmul(v, jet, p, L)
        total = [(s + t) % p for s, t in zip(total, v)]
    return total


def brute_tseries_sum(expr, gens, p, m):
    """q^(-mn) * sum psi(coefficient of t^(m-1) of F(x)) over (F_p[t]/t^m)^n, p prime."""
    terms = terms_of(expr, gens)
    n = len(gens)
    jets = list(itertools.product(range(p), repeat=m))
    acc = 0j
    for xs in itertools.product(jets, repeat=n):
        v = _teval(terms, [list(j) for j in xs], p, m)
        acc += cmath.exp(2j * math.pi * v[m - 1] / p)
    return acc / p ** (m * n)


def brute_contact_count(expr, gens, k, m, p, based=False):
    """#{jets x in (F_p[t]/t^(m+1))^n : h(x) = 0 mod t^k}, all slots enumerated."""
    terms = terms_of(expr, gens)
    L = m + 1
    first = [0] if based else range(p)
    jets = [list(j) for j in itertools.product(first, *([range(p)] * m))]
    count = 0
    for xs in itertools.product(jets, repeat=len(gens)):
        v = _teval(terms, xs, p, L)
        if not any(v[:k]):
            count += 1
    return count


# Newton distance in two variables

def newton_t0_2d(support):
    """min t with (t,t) in conv(support) + R_+^2, via the dual max_w min_i w.s_i.

    w = (u, 1-u) with u in [0,1]; the lower envelope of the lines is concave, so
    the maximum sits at an endpoint or a crossing of two lines.
    """
    lines = [(Fraction(a - b), Fraction(b)) for a, b in support]  # w.s = u(a-b) + b
    cands = {Fraction(0), Fraction(1)}
    for (s1, c1), (s2, c2) in itertools.combinations(lines, 2):
        if s1 != s2:
            u = (c2 - c1) / (s1 - s2)
            if 0 <= u <= 1:
                cands.add(u)
    return max(min(s * u + c for s, c in lines) for u in cands)


def newton_lct_2d(support):
    return min(Fraction(1), 1 / newton_t0_2d(support))


def sym(text):
    """Parse 'x^2 + y^3' style text with sympy, independently of the package parser."""
    return sp.sympify(text.replace("^", "**"), locals={"x": X, "y": Y, "z": Z})
