"""Small finite fields F_q, q = p^s with s <= 3, via Zech logarithms.

Elements are encoded as integers 0..q-1: the base-p digits of the encoding are
the coordinates in the basis 1, a, a^2 where a is a root of the Conway
polynomial C_{p,s}.  The prime field sits inside as the encodings 0..p-1.
Multiplication goes through log/exp tables and addition through the Zech
table, both vectorised over numpy arrays.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import numpy as np
import sympy as sp

from .poly import prime_power

MAX_DEGREE = 3


class UnsupportedField(ValueError):
    pass


# -- Conway polynomial search (used to build the bundled table) ---------------


def _polymulmod(a, b, f, p):
    """Multiply coefficient lists (low degree first) modulo the monic f."""
    s = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, s - 1, -1):
        c = prod[k]
        if c:
            for j in range(s + 1):
                prod[k - s + j] = (prod[k - s + j] - c * f[j]) % p
    out = prod[:s] + [0] * (s - len(prod[:s]))
    return out


def _polypowmod(base, e, f, p):
    result = [1] + [0] * (len(f) - 2)
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def _is_primitive(f, p):
    s = len(f) - 1
    order = p ** s - 1
    x = [0, 1] + [0] * (s - 2) if s > 1 else [(-f[0]) % p]
    one = [1] + [0] * (s - 1)
    if _polypowmod(x, order, f, p) != one:
        return False
    return all(_polypowmod(x, order // ell, f, p) != one for ell in sp.primefactors(order))


def _conway_sequence(f, p):
    s = len(f) - 1
    return tuple(((-1) ** (s - i) * f[i]) % p for i in range(s - 1, -1, -1))


def _from_sequence(seq, p):
    s = len(seq)
    f = [0] * (s + 1)
    f[s] = 1
    for k, c in enumerate(seq):
        i = s - 1 - k
        f[i] = ((-1) ** (s - i) * c) % p
    return f


def conway_search(p: int, s: int) -> list[int]:
    """Conway polynomial C_{p,s} for s <= 3 by exhaustive search in Conway order.

    Returns coefficients low degree first.  Compatibility is only needed with
    C_{p,1}: the norm of the root must be the least primitive root mod p.
    """
    g = int(sp.primitive_root(p))
    if s == 1:
        return [(-g) % p, 1]
    if s not in (2, 3):
        raise UnsupportedField(f"degree {s} not supported")
    import itertools

    for seq in itertools.product(range(p), repeat=s):
        f = _from_sequence(seq, p)
        norm = ((-1) ** s * f[0]) % p
        if norm != g:
            continue
        if _is_primitive(f, p):
            return f
    raise RuntimeError(f"no Conway polynomial found for {(p, s)}")


@lru_cache(maxsize=1)
def conway_table() -> dict[tuple[int, int], list[int]]:
    text = resources.files("expsum.data").joinpath("conway.json").read_text()
    raw = json.loads(text)
    return {(int(k.split(",")[0]), int(k.split(",")[1])): v for k, v in raw["polynomials"].items()}


# -- the field -----------------------------------------------------------------


class FiniteField:
    """F_q with vectorised arithmetic on integer encodings."""

    def __init__(self, q: int):
        p, s = prime_power(q)
        if s > MAX_DEGREE:
            raise UnsupportedField(f"F_{q}: extension degree {s} > {MAX_DEGREE}")
        self.q, self.p, self.s = q, p, s
        if s == 1:
            modulus = [(-int(sp.primitive_root(p))) % p, 1]
        else:
            try:
                modulus = conway_table()[(p, s)]
            except KeyError:
                raise UnsupportedField(f"no bundled Conway polynomial for F_{q}") from None
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, s, q = self.p, self.s, self.q
        n = q - 1
        exp = np.zeros(n, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        cur = [1] + [0] * (s - 1)
        gen = [0, 1] + [0] * (s - 2) if s > 1 else [(-self.modulus[0]) % p]
        for i in range(n):
            enc = sum(c * p ** k for k, c in enumerate(cur))
            exp[i] = enc
            log[enc] = i
            cur = _polymulmod(cur, gen, self.modulus, p)
        if (log[1:] < 0).any():
            raise RuntimeError(f"modulus for F_{q} is not primitive")
        self.exp_table, self.log_table = exp, log
        # zech[k] = log(1 + a^k), -1 when 1 + a^k = 0
        digits = self._digits(exp)
        one_plus = digits.copy()
        one_plus[:, 0] = (one_plus[:, 0] + 1) % p
        enc = (one_plus * (p ** np.arange(s))).sum(axis=1)
        self.zech_table = log[enc]
        # absolute trace Tr(b) = b + b^p + ... + b^(p^(s-1)), landing in F_p
        trace = np.zeros(q, dtype=np.int64)
        for k in range(s):
            powered = self.exp_table[(log[1:] * p ** k) % n]
            trace[1:] = self.add(trace[1:], powered)
        if (trace >= p).any():
            raise RuntimeError("trace left the prime field")
        self.trace_table = trace

    def _digits(self, enc):
        enc = np.asarray(enc, dtype=np.int64)
        return (enc[..., None] // (self.p ** np.arange(self.s))) % self.p

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def embed(self, c: int) -> int:
        return int(c) % self.p

    def add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.s == 1:
            return (a + b) % self.p
        la, lb = self.log_table[a], self.log_table[b]
        n = self.q - 1
        z = self.zech_table[(lb - la) % n]
        out = np.where(z < 0, 0, self.exp_table[(la + np.maximum(z, 0)) % n])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def neg(self, a):
        a = np.asarray(a, dtype=np.int64)
        d = self._digits(a)
        return ((-d) % self.p * (self.p ** np.arange(self.s))).sum(axis=-1)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.s == 1:
            return (a * b) % self.p
        n = self.q - 1
        out = self.exp_table[(self.log_table[a] + self.log_table[b]) % n]
        return np.where((a == 0) | (b == 0), 0, out)

    def scalar_mul(self, c: int, a):
        """Multiply by the prime-field element c (an integer)."""
        return self.mul(np.int64(self.embed(c)), a)

    def power(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.ones_like(a)
        n = self.q - 1
        out = self.exp_table[(self.log_table[a] * k) % n]
        return np.where(a == 0, 0, out)

    def trace(self, a):
        return self.trace_table[np.asarray(a, dtype=np.int64)]

    def character(self, a):
        """psi_q(a) = exp(2 pi i Tr(a) / p)."""
        return np.exp(2j * np.pi * self.trace(a) / self.p)

    def __repr__(self):
        return f"FiniteField({self.q})"


@lru_cache(maxsize=64)
def get_field(q: int) -> FiniteField:
    return FiniteField(q)
