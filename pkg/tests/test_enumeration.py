import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from expsum.enumeration import BudgetExceeded, check_budget, grid_values, progression_histogram, worker_count
from expsum.poly import parse_polynomial
from strategies import polynomials


def brute_histogram(f, modulus, base, stride, count):
    h = np.zeros(modulus, dtype=np.int64)
    for z in itertools.product(range(count), repeat=f.nvars):
        h[f.evaluate([b + stride * zi for b, zi in zip(base, z)], modulus)] += 1
    return h


def test_square_mod_9():
    h = progression_histogram(parse_polynomial("x^2", 1), 9, (0,), 1, 9)
    assert h.tolist() == [3, 2, 0, 0, 2, 0, 0, 2, 0]


@given(polynomials(nvars=st.integers(1, 2)), st.sampled_from([4, 9, 25]), st.integers(0, 4), st.integers(1, 3))
def test_kernel_matches_brute_force(f, modulus, b, stride):
    base = (b,) * f.nvars
    count = 5
    assert (progression_histogram(f, modulus, base, stride, count) == brute_histogram(f, modulus, base, stride, count)).all()


def test_threaded_split_matches_serial():
    f = parse_polynomial("x^3 + x*y^2 - 7*y + 2", 2)
    serial = progression_histogram(f, 2401, (0, 0), 1, 1100, workers=1)
    threaded = progression_histogram(f, 2401, (0, 0), 1, 1100, workers=4)
    assert (serial == threaded).all()
    assert serial.sum() == 1100**2


def test_grid_values():
    f = parse_polynomial("x*y + 1", 2)
    g = grid_values(f, 5)
    assert g.shape == (5, 5)
    assert g[2, 3] == 2


def test_budget_refusal():
    with pytest.raises(BudgetExceeded) as exc:
        check_budget(11, 10)
    assert exc.value.required == 11
    with pytest.raises(BudgetExceeded):
        progression_histogram(parse_polynomial("x*y", 2), 9, (0, 0), 1, 9, cap=80)


def test_worker_env(monkeypatch):
    monkeypatch.setenv("EXPSUM_THREADS", "3")
    assert worker_count() == 3
