"""Contact-locus point counts over F_q and the lct upper bounds they imply.

Jets of length m+1 are tuples of truncated series x_i = a_0 + a_1 t + ... + a_m t^m.
For a polynomial h the contact locus Cont^{>=k}(h) collects the jets with
h(x) = 0 mod t^k; the origin-based variant also forces every a_0 = 0.  The
codimension read off from q-counts, divided by k, bounds the lct from above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .enumeration import check_budget
from .fields import get_field
from .lct import LctEstimate
from .poly import Polynomial, _reduced_mod_unchecked, is_reduced, prime_power
from .truncated import all_jets, evaluate_on_jets

LOG_TOLERANCE = 0.2
DEFAULT_Q = (2, 3)


@dataclass(frozen=True)
class ContactLocusCount:
    h: Polynomial
    k: int
    m: int
    q: int
    count: int
    based_at_origin: bool

    @property
    def space_size(self) -> int:
        return self.q ** (self.h.nvars * (self.m + 1))


def contact_count(h: Polynomial, k: int, m: int, q: int, based_at_origin: bool = False,
                  cap: int | None = None, truncate: bool = True) -> ContactLocusCount:
    """Number of jets x in (F_q[t]/t^(m+1))^n with h(x) = 0 mod t^k.

    h(x) mod t^k only sees x mod t^k, so with ``truncate`` the slots t^k..t^m
    are counted as free factors of q instead of being enumerated.
    """
    if k < 1 or m < k:
        raise ValueError("need 1 <= k <= m")
    prime_power(q)
    fld = get_field(q)
    n = h.nvars
    length = min(k, m + 1) if truncate else m + 1
    free_tail = (m + 1) - length
    per_var = length - 1 if based_at_origin else length
    check_budget(q ** (n * per_var), cap, "jets")
    const = 0 if based_at_origin else None
    jets = [all_jets(fld, length, constant=const) for _ in range(n)]
    hits = 0
    for vals in evaluate_on_jets(h, fld, jets, k):
        hits += int(np.count_nonzero(~vals.any(axis=1)))
    return ContactLocusCount(h, k, m, q, hits * q ** (n * free_tail), based_at_origin)


@dataclass(frozen=True)
class CodimEstimate:
    k: int
    status: str  # "stable", "bracket" or "unstable"
    lower: int | None
    upper: int | None
    per_q: dict
    excluded: dict
    m_check: bool | None = None

    @property
    def value(self) -> int | None:
        return self.lower if self.status == "stable" else None


def good_reduction(h: Polynomial, p: int) -> bool:
    """Reducedness of h over Q agrees with reducedness of h mod p."""
    return is_reduced(h) == _reduced_mod_unchecked(h, p)


def _read_codim(c: ContactLocusCount) -> int | None:
    n = c.h.nvars
    if c.count == 0:
        return None
    lg = math.log(c.count, c.q)
    near = round(lg)
    if abs(lg - near) > LOG_TOLERANCE:
        return None
    return n * (c.m + 1) - near


def codim_estimate(h: Polynomial, k: int, q_list: Sequence[int] = DEFAULT_Q, based_at_origin: bool = False,
                   cap: int | None = None, spot_check: bool = True) -> CodimEstimate:
    """Codimension of the contact locus from counts at several q, with jet length m = k.

    Fields whose characteristic changes the reducedness of h are left out, since
    their counts reflect a different singularity.
    """
    per_q, excluded = {}, {}
    for q in q_list:
        p, _ = prime_power(q)
        if not good_reduction(h, p):
            excluded[q] = "bad reduction"
            continue
        per_q[q] = _read_codim(contact_count(h, k, k, q, based_at_origin, cap))
    readings = [v for v in per_q.values() if v is not None]
    if not readings or len(readings) < len(per_q):
        return CodimEstimate(k, "unstable", None, None, per_q, excluded)
    lo, hi = min(readings), max(readings)
    if hi - lo > 1:
        return CodimEstimate(k, "unstable", None, None, per_q, excluded)
    m_check = None
    if spot_check:
        q0 = min(per_q)
        full = contact_count(h, k, k + 1, q0, based_at_origin, cap)
        m_check = _read_codim(full) == per_q[q0]
    return CodimEstimate(k, "stable" if lo == hi else "bracket", lo, hi, per_q, excluded, m_check)


def lct_upper_from_jets(h: Polynomial, k_max: int, based_at_origin: bool = True,
                        q_list: Sequence[int] = DEFAULT_Q, cap: int | None = None) -> LctEstimate | None:
    """Bracket [0, min_k codim/k] built from the largest codimension reading per k.

    Returns None when every k is unstable.
    """
    best = None
    for k in range(1, k_max + 1):
        est = codim_estimate(h, k, q_list, based_at_origin, cap, spot_check=False)
        if est.status == "unstable":
            continue
        ratio = Fraction(est.upper, k)
        if best is None or ratio < best[0]:
            best = (ratio, k)
    if best is None:
        return None
    upper = min(Fraction(1), best[0])
    notes = ("heuristic: F_q point counts", f"attained at k={best[1]}")
    at = (0,) * h.nvars if based_at_origin else ()
    return LctEstimate("bracket", "jet-upper", lower=Fraction(0), upper=upper, at=at, notes=notes)
