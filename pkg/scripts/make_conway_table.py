"""Regenerate src/expsum/data/conway.json.

Conway polynomials C_{p,s} for primes p < 100 and s in {2, 3}, found by
exhaustive search in Conway order.  Coefficients are stored low degree first.
"""

import json
from pathlib import Path

import sympy as sp

from expsum.fields import conway_search

OUT = Path(__file__).resolve().parents[1] / "src" / "expsum" / "data" / "conway.json"


def main():
    table = {}
    for p in sp.primerange(2, 100):
        for s in (2, 3):
            table[f"{p},{s}"] = conway_search(p, s)
            print(p, s, table[f"{p},{s}"])
    lines = [f'  "{k}": {json.dumps(v)}' for k, v in table.items()]
    OUT.write_text(
        '{\n "description": "Conway polynomials C_{p,s}, coefficients low degree first",\n'
        ' "polynomials": {\n  ' + ",\n  ".join(lines) + "\n }\n}\n"
    )


if __name__ == "__main__":
    main()
