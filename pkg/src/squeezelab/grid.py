"""Position-space rendering of Fock states and the closed-form Gaussians."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import GridResolutionError, InvalidParameter
from .fock import FockState, _check_dim
from .states import SqueezeParams

ORTHONORMALITY_TOL = 1e-8
PI_QUARTER = math.pi**-0.25


@dataclass(frozen=True)
class Grid:
    x_min: float = -12.0
    x_max: float = 12.0
    n_points: int = 2048

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise InvalidParameter("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise InvalidParameter(f"empty grid range [{self.x_min}, {self.x_max}]")
        if int(self.n_points) != self.n_points or self.n_points < 16:
            raise InvalidParameter(f"grid needs at least 16 points, got {self.n_points}")
        object.__setattr__(self, "x_min", float(self.x_min))
        object.__setattr__(self, "x_max", float(self.x_max))
        object.__setattr__(self, "n_points", int(self.n_points))

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def trapezoid_weights(self) -> np.ndarray:
        w = np.full(self.n_points, self.spacing)
        w[[0, -1]] *= 0.5
        return w

    def integrate(self, f: np.ndarray):
        return np.trapezoid(f, dx=self.spacing)


@dataclass(frozen=True)
class WaveFunction:
    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=np.complex128).reshape(-1)
        if v.size != self.grid.n_points:
            raise InvalidParameter(f"expected {self.grid.n_points} samples, got {v.size}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def norm2(self) -> float:
        return float(self.grid.integrate(self.density()))

    def mean_x(self) -> float:
        return float(self.grid.integrate(self.grid.x * self.density()) / self.norm2())

    def var_x(self) -> float:
        mu = self.mean_x()
        return float(self.grid.integrate((self.grid.x - mu) ** 2 * self.density()) / self.norm2())


def _hermite_table(x: np.ndarray, dim: int) -> np.ndarray:
    """phi_0..phi_{dim-1} at x via the normalized three-term recurrence."""
    out = np.empty((dim, x.size))
    out[0] = PI_QUARTER * np.exp(-0.5 * x * x)
    if dim > 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, dim - 1):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * x * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


@lru_cache(maxsize=16)
def _cached_table(grid: Grid, dim: int) -> np.ndarray:
    table = _hermite_table(grid.x, dim)
    table.setflags(write=False)
    return table


def orthonormality_defect(grid: Grid, dim: int) -> float:
    table = _cached_table(grid, _check_dim(dim))
    gram = (table * grid.trapezoid_weights()) @ table.T
    return float(np.max(np.abs(gram - np.eye(dim))))


def hermite_functions(grid: Grid, dim: int) -> np.ndarray:
    """Oscillator eigenfunctions sampled on the grid, shape (dim, n_points).

    Raises GridResolutionError when the trapezoid Gram matrix is not the
    identity to within 1e-8, i.e. the grid is too short or too coarse for dim.
    """
    defect = orthonormality_defect(grid, dim)
    if defect > ORTHONORMALITY_TOL:
        raise GridResolutionError(
            f"grid [{grid.x_min}, {grid.x_max}] x {grid.n_points} cannot resolve "
            f"{dim} eigenfunctions (orthonormality defect {defect:.3g})"
        )
    return _cached_table(grid, dim)


def fock_to_position(psi: FockState, grid: Grid = Grid()) -> WaveFunction:
    """psi(x) = sum_n c_n phi_n(x), evaluated pointwise.

    Pointwise evaluation is exact whatever the grid extent, so no
    orthonormality check is made here; states wider than the grid simply
    lose normalization on it.
    """
    return WaveFunction(grid, psi.amplitudes @ _cached_table(grid, psi.dim))


def psi_cs_closed_form(x0: float, p0: float, grid: Grid = Grid()) -> WaveFunction:
    x = grid.x
    return WaveFunction(grid, PI_QUARTER * np.exp(-0.5 * (x - x0) ** 2 + 1j * p0 * x))


def squeeze_shape_factors(z: SqueezeParams) -> tuple[complex, complex]:
    """(F1, F2) = (cosh r + e^{i phi} sinh r, (cosh r - e^{i phi} sinh r) / F1)."""
    ch, sh = math.cosh(z.r), math.sinh(z.r)
    e = cmath.exp(1j * z.phi)
    f1 = ch + e * sh
    return f1, (ch - e * sh) / f1


def psi_ss_closed_form(x0: float, p0: float, z: SqueezeParams, grid: Grid = Grid()) -> WaveFunction:
    f1, f2 = squeeze_shape_factors(z)
    # Re F1 > 0, so the principal root keeps F1^(-1/2) inside (-pi/2, pi/2]
    prefactor = cmath.exp(-0.5j * x0 * p0) * PI_QUARTER / cmath.sqrt(f1)
    x = grid.x
    return WaveFunction(grid, prefactor * np.exp(-0.5 * (x - x0) ** 2 * f2 + 1j * p0 * x))


def align_phase(a: WaveFunction, b: WaveFunction) -> float:
    """Angle theta that best maps b onto a, from the overlap <a, b>."""
    overlap = a.grid.integrate(np.conj(a.values) * b.values)
    return 0.0 if overlap == 0 else -float(np.angle(overlap))


def compare_up_to_phase(a: WaveFunction, b: WaveFunction) -> float:
    if a.grid != b.grid:
        raise InvalidParameter("wavefunctions live on different grids")
    theta = align_phase(a, b)
    return float(np.max(np.abs(a.values - cmath.exp(1j * theta) * b.values)))
