"""Table of p_n(s), the probability of exactly n eigenvalues in an interval of length 2s/pi.

    python scripts/pn_table.py --s 1 2 5 10 --n-max 8
"""

import argparse
import math

import numpy as np

from loggas.spectral import build_spectrum, gap_probabilities


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=float, nargs="+", default=[1.0, 2.0, 5.0, 10.0])
    ap.add_argument("--n-max", type=int, default=8)
    args = ap.parse_args()

    n_full = max(40, args.n_max)
    tab = {s: gap_probabilities(build_spectrum(s), n_full) for s in args.s}
    print("n   " + "".join(f"{'s=' + format(s, 'g'):>14}" for s in args.s))
    for n in range(args.n_max + 1):
        print(f"{n:<4}" + "".join(f"{tab[s][n]:14.6e}" for s in args.s))
    print("mean" + "".join(f"{np.dot(np.arange(n_full + 1), tab[s]):14.6f}" for s in args.s))
    print("2s/pi" + "".join(f"{2 * s / math.pi:14.6f}" for s in args.s)[1:])


if __name__ == "__main__":
    main()
