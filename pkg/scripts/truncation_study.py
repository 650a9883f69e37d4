"""How the basis size limits the position-space cross-check.

For the widest states of the |alpha| <= 2, r <= 1 envelope, prints the worst
phase-blind pointwise deviation between the Fock reconstruction and the
closed-form squeezed Gaussian, alongside the probability mass left in the
last ten levels, for a range of basis sizes. Sizes the tail guard rejects are
reported as such.
"""

import cmath
import math

import numpy as np

from squeezelab.errors import TruncationError
from squeezelab.grid import Grid, compare_up_to_phase, fock_to_position, psi_ss_closed_form
from squeezelab.states import CoherentParams, SqueezeParams, displaced_squeezed, tail_mass


def worst_case(dim, grid):
    dev = tail = 0.0
    for theta in np.linspace(0, 2 * math.pi, 8, endpoint=False):
        p = CoherentParams(2 * cmath.exp(1j * theta))
        for phi in np.linspace(0, 2 * math.pi, 8, endpoint=False):
            z = SqueezeParams(1.0, phi)
            psi = displaced_squeezed(p, z, dim)
            tail = max(tail, tail_mass(psi))
            dev = max(dev, compare_up_to_phase(fock_to_position(psi, grid), psi_ss_closed_form(p.x0, p.p0, z, grid)))
    return dev, tail


def main():
    grid = Grid()
    print(f"{'dim':>5} {'max deviation':>15} {'tail mass':>12}")
    for dim in (112, 128, 160, 192, 224):
        try:
            dev, tail = worst_case(dim, grid)
        except TruncationError as exc:
            print(f"{dim:5d}  rejected: {exc}")
            continue
        print(f"{dim:5d} {dev:15.3e} {tail:12.3e}")


if __name__ == "__main__":
    main()
