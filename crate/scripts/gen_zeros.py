#!/usr/bin/env python3
"""Generate data/zeros_2000.txt: ordinates of the first nontrivial zeta zeros.

One ordinate per line, ascending, 18 significant digits, computed with
mpmath.zetazero. Run from the repository root:

    python3 scripts/gen_zeros.py [count]
"""
import sys
from multiprocessing import Pool

import mpmath

COUNT = int(sys.argv[1]) if len(sys.argv) > 1 else 2000


def ordinate(n: int) -> str:
    mpmath.mp.dps = 22
    z = mpmath.zetazero(n)
    return mpmath.nstr(z.imag, 18, strip_zeros=False)


def main() -> None:
    with Pool(2) as pool:
        lines = pool.map(ordinate, range(1, COUNT + 1), chunksize=25)
    vals = [float(s) for s in lines]
    assert all(b > a for a, b in zip(vals, vals[1:])), "ordinates not ascending"
    assert 14.0 < vals[0] < 14.2, "first ordinate out of expected window"
    with open("data/zeros_2000.txt", "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} ordinates, last = {lines[-1]}")


if __name__ == "__main__":
    main()
