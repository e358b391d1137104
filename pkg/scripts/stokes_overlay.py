"""Walk v across the Stokes lines v_q(s) = s - (q/2 - 1/4) ln s at fixed s.

Prints the oracle, the near-diagonal formula and the number q of eigenvalue
factors it keeps, so the switches in q can be read off against the error.

    python scripts/stokes_overlay.py --s 14
"""

import argparse
import math

import numpy as np

from loggas.asymptotics import stokes_lines, theorem2_logdet
from loggas.errors import PrecisionDomainError
from loggas.results import ScalePoint
from loggas.spectral import build_spectrum, oracle_logdet


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=float, default=14.0)
    ap.add_argument("--q-max", type=int, default=3)
    ap.add_argument("--points", type=int, default=12)
    args = ap.parse_args()

    s = args.s
    sd = build_spectrum(s)
    for q, chi, v in stokes_lines(s, args.q_max):
        print(f"# Stokes line q={q}: chi={chi:.2f}, v={v:.4f}")
    chi_max = 0.5 * args.q_max
    print(f"{'v':>9} {'chi':>6} {'q':>2} {'oracle':>14} {'theorem2':>14} {'rel err':>9}")
    for chi in np.linspace(0.0, chi_max, args.points):
        v = s - chi * math.log(s)
        r = theorem2_logdet(ScalePoint(s, v), chi=float(chi))
        try:
            ref = f"{oracle_logdet(sd, v=v).log_det:14.6f}"
            err = f"{abs(r.log_det / float(ref) - 1):9.2e}"
        except PrecisionDomainError:
            ref, err = f"{'(guard)':>14}", f"{'':>9}"
        print(f"{v:9.4f} {chi:6.3f} {r.diagnostics['q_used']:2d} {ref} {r.log_det:14.6f} {err}")


if __name__ == "__main__":
    main()
