"""Polynomials evaluated on truncated power series (jets) over F_q.

A jet of length L is a coefficient vector (a_0, ..., a_{L-1}) in F_q^L standing
for a_0 + a_1 t + ... + a_{L-1} t^{L-1}.  Everything here is vectorised over
batches of jets stored as integer arrays of shape (batch, L) of field
encodings.
"""

from __future__ import annotations

import itertools

import numpy as np

from .fields import FiniteField
from .poly import Polynomial

_CHUNK = 1 << 18


def all_jets(field: FiniteField, length: int, constant=None) -> np.ndarray:
    """Every jet of the given length; slot 0 pinned to ``constant`` when given."""
    free = length if constant is None else length - 1
    grids = np.indices((field.q,) * free).reshape(free, -1).T if free else np.zeros((1, 0), dtype=np.int64)
    grids = grids.astype(np.int64)
    if constant is None:
        return grids
    pinned = np.full((grids.shape[0], 1), constant, dtype=np.int64)
    return np.concatenate([pinned, grids], axis=1)


def jet_mul(field: FiniteField, a: np.ndarray, b: np.ndarray, out_len: int) -> np.ndarray:
    """Product of two jet batches truncated mod t^out_len."""
    la, lb = a.shape[-1], b.shape[-1]
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    out = np.zeros(shape + (out_len,), dtype=np.int64)
    for k in range(out_len):
        acc = None
        for i in range(max(0, k - lb + 1), min(k, la - 1) + 1):
            term = field.mul(a[..., i], b[..., k - i])
            acc = term if acc is None else field.add(acc, term)
        if acc is not None:
            out[..., k] = acc
    return out


def jet_powers(field: FiniteField, jets: np.ndarray, max_exp: int, out_len: int) -> list[np.ndarray]:
    one = np.zeros(jets.shape[:-1] + (out_len,), dtype=np.int64)
    one[..., 0] = 1
    powers = [one]
    base = np.zeros_like(one)
    k = min(out_len, jets.shape[-1])
    base[..., :k] = jets[..., :k]
    for _ in range(max_exp):
        powers.append(jet_mul(field, powers[-1], base, out_len))
    return powers


def evaluate_on_jets(poly: Polynomial, field: FiniteField, jet_sets: list[np.ndarray], out_len: int,
                     chunk: int = _CHUNK):
    """Yield batches of poly(x) mod t^out_len over the product of the jet sets.

    ``jet_sets[i]`` holds the admissible jets of variable i.  Batches are
    produced by splitting the first variable's jets into blocks.
    """
    n = poly.nvars
    powers = [jet_powers(field, js, poly.degree_in(i), out_len) for i, js in enumerate(jet_sets)]
    rest = int(np.prod([len(js) for js in jet_sets[1:]])) if n > 1 else 1
    block = max(1, chunk // max(rest, 1))
    rest_idx = (np.indices([len(js) for js in jet_sets[1:]]).reshape(n - 1, -1)
                if n > 1 else np.zeros((0, 1), dtype=np.int64))
    for start in range(0, len(jet_sets[0]), block):
        first = np.arange(start, min(start + block, len(jet_sets[0])))
        idx0 = np.repeat(first, rest)
        idx_rest = [np.tile(r, len(first)) for r in rest_idx]
        idx = [idx0] + idx_rest
        total = np.zeros((len(idx0), out_len), dtype=np.int64)
        for exp, c in poly.terms:
            cc = field.embed(c)
            if cc == 0:
                continue
            term = None
            for i, e in enumerate(exp):
                if e:
                    factor = powers[i][e][idx[i]]
                    term = factor if term is None else jet_mul(field, term, factor, out_len)
            if term is None:
                term = np.zeros((len(idx0), out_len), dtype=np.int64)
                term[:, 0] = 1
            total = field.add(total, field.scalar_mul(cc, term))
        yield total


def product_size(jet_sets) -> int:
    return int(np.prod([len(js) for js in jet_sets], dtype=object))


def iter_points(q: int, n: int):
    return itertools.product(range(q), repeat=n)
