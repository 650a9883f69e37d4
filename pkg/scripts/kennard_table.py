"""Print simulated quadrature widths next to Kennard's closed forms.

    python scripts/kennard_table.py --r 0.5 --phi 1.0 --alpha 1+0.5j --steps 17
"""

import argparse
import math

import numpy as np

from squeezelab.dynamics import kennard_product, kennard_var_p, kennard_var_x, trajectory
from squeezelab.states import CoherentParams, SqueezeParams


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--r", type=float, default=0.5)
    ap.add_argument("--phi", type=float, default=0.0)
    ap.add_argument("--alpha", type=complex, default=1 + 0.5j)
    ap.add_argument("--steps", type=int, default=17)
    ap.add_argument("--dim", type=int, default=128)
    args = ap.parse_args()

    z = SqueezeParams(args.r, args.phi)
    ts = np.linspace(0, math.pi, args.steps)
    tr = trajectory(CoherentParams(args.alpha), z, ts, args.dim)
    print(f"{'t':>8} {'2Vx':>12} {'kennard':>12} {'2Vp':>12} {'kennard':>12} {'4VxVp':>12} {'kennard':>12}")
    for s in tr.samples:
        print(
            f"{s.t:8.4f} {2 * s.var_x:12.9f} {kennard_var_x(z, s.t):12.9f} "
            f"{2 * s.var_p:12.9f} {kennard_var_p(z, s.t):12.9f} "
            f"{s.product4:12.9f} {kennard_product(z, s.t):12.9f}"
        )


if __name__ == "__main__":
    main()
