"""Run the m = r+1 reduction identity and the m = r+2 split on a list of germs.

    python scripts/identity_checks.py "x^2+y^3" "x^3+y^3" --primes 5 7 11
"""

import argparse

from expsum.cli import infer_nvars
from expsum.engine import reduction_identity, split_I1_I2
from expsum.poly import parse_polynomial


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("polys", nargs="*", default=["x^2", "x^3", "x^2+y^3", "x^3+y^3", "x^2*y+x^4"])
    ap.add_argument("--primes", type=int, nargs="+", default=[5, 7, 11])
    args = ap.parse_args()

    for text in args.polys:
        f = parse_polynomial(text, infer_nvars(text))
        y = (0,) * f.nvars
        for p in args.primes:
            red = reduction_identity(f, p, y)
            spl = split_I1_I2(f, p, y)
            if red.status == "inapplicable":
                print(f"{text:12s} p={p:3d}  inapplicable: {red.details['reason']}")
                continue
            print(f"{text:12s} p={p:3d}  r={red.details['r']}  |S_y|={red.lhs:.6e} vs {red.rhs:.6e} [{red.status}]"
                  f"  |I_2|={spl.details['I2']:.1e} [{spl.status}]")


if __name__ == "__main__":
    main()
