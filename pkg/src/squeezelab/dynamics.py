"""Free oscillator evolution and Kennard's closed-form widths.

Kennard's widths are vacuum-normalized: ``kennard_var_x`` is 1 for the ground
state, i.e. twice the physical variance Var(x) under [x, p] = i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import InvalidParameter
from .fock import DEFAULT_TOLERANCES, FockState, ToleranceConfig, quadratures, variance
from .states import CoherentParams, SqueezeParams, displaced_squeezed

SAMPLES_PER_PERIOD = 128


@dataclass(frozen=True)
class QuadratureStats:
    t: float
    mean_x: float
    mean_p: float
    var_x: float
    var_p: float
    cov_xp: float

    @property
    def product4(self) -> float:
        """4 Var(x) Var(p); equals 1 exactly at minimum uncertainty."""
        return 4.0 * self.var_x * self.var_p

    @property
    def schrodinger_gap(self) -> float:
        """Var(x) Var(p) - cov^2 - 1/4, zero for every pure Gaussian."""
        return self.var_x * self.var_p - self.cov_xp**2 - 0.25


@dataclass(frozen=True)
class Trajectory:
    params: tuple[CoherentParams, SqueezeParams]
    samples: tuple[QuadratureStats, ...] = field(repr=False)

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(s, name) for s in self.samples])


def evolve(psi: FockState, t: float) -> FockState:
    """Apply exp(-iHt) with H = N + 1/2."""
    n = np.arange(psi.dim)
    return FockState(psi.amplitudes * np.exp(-1j * (n + 0.5) * t))


def quadrature_stats(psi: FockState, t: float = 0.0) -> QuadratureStats:
    x, p = quadratures(psi.dim)
    c = psi.amplitudes
    xc = x.entries @ c
    pc = p.entries @ c
    mean_x = float(np.vdot(c, xc).real)
    mean_p = float(np.vdot(c, pc).real)
    # Re<xp> is the symmetrized <{x, p}>/2
    cov = float(np.vdot(xc, pc).real) - mean_x * mean_p
    return QuadratureStats(
        t=float(t),
        mean_x=mean_x,
        mean_p=mean_p,
        var_x=variance(x, psi),
        var_p=variance(p, psi),
        cov_xp=cov,
    )


def default_times(t_max: float = 2.0 * math.pi, steps: int | None = None) -> np.ndarray:
    """Uniform grid on [0, t_max], by default 128 samples per period."""
    if steps is None:
        steps = max(2, int(round(SAMPLES_PER_PERIOD * t_max / (2.0 * math.pi))))
    return np.linspace(0.0, t_max, steps)


def trajectory(
    p: CoherentParams,
    z: SqueezeParams,
    times,
    dim: int,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> Trajectory:
    times = np.asarray(times, dtype=float).reshape(-1)
    if times.size == 0:
        raise InvalidParameter("trajectory needs at least one time")
    if np.any(np.diff(times) <= 0):
        raise InvalidParameter("times must be strictly increasing")
    psi0 = displaced_squeezed(p, z, dim, cfg)
    samples = tuple(quadrature_stats(evolve(psi0, t), t) for t in times)
    return Trajectory(params=(p, z), samples=samples)


def classical_centroid(p: CoherentParams, t):
    """Phase-space point (x0, p0) rotated clockwise by angle t."""
    ct, st = np.cos(t), np.sin(t)
    return p.x0 * ct + p.p0 * st, p.p0 * ct - p.x0 * st


def kennard_var_x(z: SqueezeParams, t):
    ch, sh = math.cosh(z.r), math.sinh(z.r)
    return ch**2 + sh**2 + 2.0 * ch * sh * np.cos(2.0 * np.asarray(t) - z.phi)


def kennard_var_p(z: SqueezeParams, t):
    ch, sh = math.cosh(z.r), math.sinh(z.r)
    return ch**2 + sh**2 - 2.0 * ch * sh * np.cos(2.0 * np.asarray(t) - z.phi)


def kennard_product(z: SqueezeParams, t):
    s = z.s
    return 1.0 + 0.25 * (s**2 - s**-2) ** 2 * np.sin(2.0 * np.asarray(t) - z.phi) ** 2


def simulated_product(psi0: FockState, t: float) -> float:
    """4 Var(x) Var(p) of psi0 evolved to time t."""
    return quadrature_stats(evolve(psi0, t), t).product4


def product_minima(psi0: FockState, t_start: float = 0.0, period: float = math.pi, samples: int = 64):
    """Local minima of the simulated uncertainty product over one period.

    The product is sampled on a periodic grid, every sample lower than both
    (cyclic) neighbours is refined by bounded Brent search, and the refined
    ``(t, product)`` pairs are returned in time order.
    """
    ts = t_start + period * np.arange(samples) / samples
    vals = np.array([simulated_product(psi0, t) for t in ts])
    step = period / samples
    found = []
    for i in range(samples):
        if vals[i] < vals[i - 1] and vals[i] <= vals[(i + 1) % samples]:
            res = minimize_scalar(
                lambda t: simulated_product(psi0, t),
                bounds=(ts[i] - step, ts[i] + step),
                method="bounded",
                options={"xatol": 1e-10},
            )
            t_min = t_start + (float(res.x) - t_start) % period
            found.append((t_min, float(res.fun)))
    return sorted(found)
