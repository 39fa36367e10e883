"""Tabulate |sum_{F_p^n} psi(h)| / p^(n-1) for the homogeneous catalog entries.

Non-reduced forms and primes p <= deg h (where reducedness mod p is not decided)
are listed as skipped.
"""

import argparse

import sympy as sp

from expsum.harness import check_katz_m1, load_catalog


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-prime", type=int, default=47)
    ap.add_argument("--catalog", default=None)
    args = ap.parse_args()

    rep = check_katz_m1(load_catalog(args.catalog), tuple(sp.primerange(2, args.max_prime + 1)))
    by_poly = {}
    for r in rep.rows:
        by_poly.setdefault(r["poly"], []).append(r)
    for name, rows in sorted(by_poly.items()):
        v = rep.verdicts.get(name, {})
        print(f"{name}: D = {v.get('D', float('nan')):.4f}, slope {v.get('slope', float('nan')):+.3f}, "
              f"{v.get('verdict', 'too few primes')}")
        print("   " + "  ".join(f"p={r['p']}:{r['ratio']:.3f}" for r in rows))
    reasons = {}
    for s in rep.skipped:
        reasons.setdefault((s["poly"], s["reason"]), []).append(s["p"])
    for (name, reason), ps in sorted(reasons.items()):
        print(f"skipped {name}: {reason}" + ("" if ps == [None] else f" at p in {ps}"))


if __name__ == "__main__":
    main()
