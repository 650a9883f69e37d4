"""Named invariant suites run by ``squeezelab verify``.

Each suite returns a list of :class:`Check` rows. Tolerances are the nominal
ones scaled by ``compare_tol / 1e-9``, so tightening ``compare`` tightens every
check proportionally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.stats import poisson

from . import dynamics as dyn
from .fock import DEFAULT_TOLERANCES, FockState, ToleranceConfig, fidelity, quadratures, variance
from .grid import Grid, compare_up_to_phase, fock_to_position, orthonormality_defect, psi_ss_closed_form
from .states import (
    CoherentParams,
    MinUncertaintyCondition,
    SqueezeParams,
    bogoliubov_residual,
    coherent_closed_form,
    coherent_via_displacement,
    displaced_squeezed,
    displacement_split,
    from_min_uncertainty,
    ladder_residual,
    min_uncertainty_residual,
    squeezed_vacuum_factored,
    squeezed_vacuum_via_exponential,
)
from .uncertainty import schrodinger_check

SEED = 20260415
COHERENT_DIM = 64
SQUEEZE_DIM = 128
GRID_DIM = 128
KENNARD_RADII = (0.25, 0.5, 1.0)
KENNARD_PHASES = (0.0, math.pi / 3, math.pi)
KENNARD_ALPHA = 1 + 0.5j


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.residual) and self.residual <= self.tolerance)


def _scale(cfg: ToleranceConfig) -> float:
    return cfg.compare_tol / DEFAULT_TOLERANCES.compare_tol


def _random_alpha(rng: np.random.Generator, max_abs: float) -> complex:
    rad = max_abs * math.sqrt(rng.uniform())
    return complex(rad * np.exp(2j * math.pi * rng.uniform()))


def coherent_suite(cfg: ToleranceConfig, samples: int = 8) -> list[Check]:
    rng = np.random.default_rng(SEED)
    dim, k = COHERENT_DIM, _scale(cfg)
    fid_defect = ladder = pois = 0.0
    for _ in range(samples):
        p = CoherentParams(_random_alpha(rng, 3.0))
        closed = coherent_closed_form(p, dim, cfg)
        fid_defect = max(fid_defect, 1.0 - fidelity(closed, coherent_via_displacement(p, dim, cfg)))
        ladder = max(ladder, ladder_residual(closed, p))
        expected = poisson.pmf(np.arange(dim), abs(p.alpha) ** 2)
        pois = max(pois, float(np.max(np.abs(closed.probabilities() - expected))))
    p = CoherentParams(1 + 0.5j)
    vac = FockState.vacuum(dim)
    split = float(np.max(np.abs(
        (displacement_split(p, dim, cfg) @ vac).amplitudes
        - coherent_via_displacement(p, dim, cfg).amplitudes
    )))
    name = "coherent-equivalence"
    return [
        Check(name, "closed_form_vs_displacement_fidelity_defect", fid_defect, 1e-10 * k),
        Check(name, "ladder_eigenvalue_residual", ladder, 1e-9 * k),
        Check(name, "poisson_number_distribution", pois, 1e-12 * k),
        Check(name, "split_displacement_form", split, 1e-10 * k),
    ]


def squeeze_suite(cfg: ToleranceConfig, samples: int = 8) -> list[Check]:
    rng = np.random.default_rng(SEED + 1)
    dim, k = SQUEEZE_DIM, _scale(cfg)
    fid_defect = bog = mus_fid = mus_res = odd = 0.0
    for _ in range(samples):
        p = CoherentParams(_random_alpha(rng, 2.0))
        z = SqueezeParams(rng.uniform(0.0, 1.0), rng.uniform(0.0, 2 * math.pi))
        factored = squeezed_vacuum_factored(z, dim, cfg)
        fid_defect = max(fid_defect, 1.0 - fidelity(factored, squeezed_vacuum_via_exponential(z, dim, cfg)))
        odd = max(odd, float(np.max(np.abs(factored.amplitudes[1::2]))))
        bog = max(bog, bogoliubov_residual(displaced_squeezed(p, z, dim, cfg), p, z))

        zr = SqueezeParams(z.r, 0.0 if rng.uniform() < 0.5 else math.pi)
        sign = 1.0 if zr.phi == 0.0 else -1.0
        B = math.exp(2.0 * sign * zr.r)
        cond = MinUncertaintyCondition(B, p.x0 + 1j * B * p.p0)
        mus = from_min_uncertainty(cond, dim, cfg)
        mus_fid = max(mus_fid, 1.0 - fidelity(mus, displaced_squeezed(p, zr, dim, cfg)))
        mus_res = max(mus_res, min_uncertainty_residual(mus, cond))
    name = "squeeze-equivalence"
    return [
        Check(name, "factored_vs_exponential_fidelity_defect", fid_defect, 1e-8 * k),
        Check(name, "bogoliubov_eigenvalue_residual", bog, 1e-8 * k),
        Check(name, "min_uncertainty_vs_displaced_squeezed_fidelity_defect", mus_fid, 1e-8 * k),
        Check(name, "min_uncertainty_operator_residual", mus_res, 1e-8 * k),
        Check(name, "squeezed_vacuum_odd_amplitudes", odd, 0.0),
    ]


def _cyclic_distance(a: float, b: float, period: float) -> float:
    d = (a - b) % period
    return min(d, period - d)


def dynamics_suite(cfg: ToleranceConfig, steps: int = 128) -> list[Check]:
    k = _scale(cfg)
    p = CoherentParams(KENNARD_ALPHA)
    ts = np.linspace(0.0, 2.0 * math.pi, steps)
    dev = {key: 0.0 for key in ("vx", "vp", "prod", "sum", "sin2", "centroid", "period", "count", "minval", "minpos")}
    for r in KENNARD_RADII:
        for phi in KENNARD_PHASES:
            z = SqueezeParams(r, phi)
            psi0 = displaced_squeezed(p, z, SQUEEZE_DIM, cfg)
            samples = [dyn.quadrature_stats(dyn.evolve(psi0, t), t) for t in ts]
            vx = np.array([s.var_x for s in samples])
            vp = np.array([s.var_p for s in samples])
            prod = 4.0 * vx * vp
            dev["vx"] = max(dev["vx"], float(np.max(np.abs(2 * vx - dyn.kennard_var_x(z, ts)))))
            dev["vp"] = max(dev["vp"], float(np.max(np.abs(2 * vp - dyn.kennard_var_p(z, ts)))))
            dev["prod"] = max(dev["prod"], float(np.max(np.abs(prod - dyn.kennard_product(z, ts)))))
            total = vx + vp
            dev["sum"] = max(dev["sum"], float(np.ptp(total)))
            sin2 = np.sin(2 * ts - z.phi) ** 2
            coeff = float(np.dot(sin2, prod - 1) / np.dot(sin2, sin2))
            dev["sin2"] = max(dev["sin2"], float(np.max(np.abs(prod - 1 - coeff * sin2))))
            cx, cp = dyn.classical_centroid(p, ts)
            mx = np.array([s.mean_x for s in samples])
            mp = np.array([s.mean_p for s in samples])
            dev["centroid"] = max(dev["centroid"], float(np.max(np.hypot(mx - cx, mp - cp))))
            shifted = np.array([dyn.quadrature_stats(dyn.evolve(psi0, t + math.pi)).var_x for t in ts[::8]])
            dev["period"] = max(dev["period"], float(np.max(np.abs(shifted - vx[::8]))))

            minima = dyn.product_minima(psi0)
            dev["count"] = max(dev["count"], float(abs(len(minima) - 2)))
            for t_min, val in minima:
                dev["minval"] = max(dev["minval"], abs(val - 1.0))
                expected = min(_cyclic_distance(t_min, z.phi / 2 + j * math.pi / 2, math.pi) for j in (0, 1))
                dev["minpos"] = max(dev["minpos"], expected)
    name = "dynamics-kennard"
    return [
        Check(name, "twice_var_x_vs_kennard", dev["vx"], 1e-8 * k),
        Check(name, "twice_var_p_vs_kennard", dev["vp"], 1e-8 * k),
        Check(name, "four_var_product_vs_kennard", dev["prod"], 1e-8 * k),
        Check(name, "variance_sum_constant", dev["sum"], 1e-9 * k),
        Check(name, "product_excess_proportional_to_sin2", dev["sin2"], 1e-8 * k),
        Check(name, "two_minima_per_half_period", dev["count"], 0.0),
        Check(name, "minimum_product_equals_one", dev["minval"], 1e-8 * k),
        Check(name, "minima_at_phi_over_two_mod_half_pi", dev["minpos"], 1e-6 * k),
        Check(name, "classical_centroid", dev["centroid"], 1e-9 * k),
        Check(name, "variance_period_pi", dev["period"], 1e-10 * k),
    ]


def uncertainty_suite(cfg: ToleranceConfig) -> list[Check]:
    k = _scale(cfg)
    x, p_op = quadratures(SQUEEZE_DIM)
    coh = 0.0
    for alpha in (0j, 1.3 - 0.2j, -2 + 1j, 3j):
        psi = coherent_closed_form(CoherentParams(alpha), SQUEEZE_DIM, cfg)
        coh = max(coh, abs(variance(x, psi) * variance(p_op, psi) - 0.25))
    fock = 0.0
    for n, expected in ((1, 9 / 4), (2, 25 / 4)):
        psi = FockState.basis(n, SQUEEZE_DIM)
        fock = max(fock, abs(variance(x, psi) * variance(p_op, psi) - expected))
    gap = link = 0.0
    ts = np.linspace(0.0, 2 * math.pi, 32)
    for r in KENNARD_RADII:
        for phi in KENNARD_PHASES:
            z = SqueezeParams(r, phi)
            psi0 = displaced_squeezed(CoherentParams(KENNARD_ALPHA), z, SQUEEZE_DIM, cfg)
            for t in ts:
                rep = schrodinger_check(dyn.evolve(psi0, t), cfg)
                gap = max(gap, abs(rep.lhs - rep.schrodinger_bound))
                link = max(link, abs(4.0 * rep.schrodinger_bound - float(dyn.kennard_product(z, t))))
    name = "uncertainty"
    return [
        Check(name, "coherent_heisenberg_product", coh, 1e-9 * k),
        Check(name, "fock_state_products", fock, 1e-9 * k),
        Check(name, "centered_schrodinger_saturation", gap, 1e-8 * k),
        Check(name, "schrodinger_bound_vs_kennard_product", link, 1e-8 * k),
    ]


def grid_suite(cfg: ToleranceConfig) -> list[Check]:
    k = _scale(cfg)
    grid = Grid()
    cross = 0.0
    for theta in np.linspace(0.0, 2 * math.pi, 4, endpoint=False):
        p = CoherentParams(2.0 * np.exp(1j * theta))
        for phi in np.linspace(0.0, 2 * math.pi, 8, endpoint=False):
            z = SqueezeParams(1.0, phi)
            wf = fock_to_position(displaced_squeezed(p, z, GRID_DIM, cfg), grid)
            cross = max(cross, compare_up_to_phase(wf, psi_ss_closed_form(p.x0, p.p0, z, grid)))
    p, z = CoherentParams(0.6 - 0.4j), SqueezeParams(0.4, 1.0)
    psi = displaced_squeezed(p, z, SQUEEZE_DIM, cfg)
    wf = fock_to_position(psi, grid)
    x, _ = quadratures(SQUEEZE_DIM)
    st = dyn.quadrature_stats(psi)
    moments = max(abs(wf.mean_x() - st.mean_x), abs(wf.var_x() - variance(x, psi)))
    parseval = abs(wf.norm2() - psi.norm() ** 2)
    name = "grid-crosscheck"
    return [
        Check(name, "hermite_orthonormality_dim40", orthonormality_defect(grid, 40), 1e-8 * k),
        Check(name, "fock_vs_closed_form_gaussian", cross, 1e-6 * k),
        Check(name, "grid_moments_vs_operators", moments, 1e-7 * k),
        Check(name, "parseval", parseval, 1e-8 * k),
    ]


SUITES: dict[str, Callable[[ToleranceConfig], list[Check]]] = {
    "coherent-equivalence": coherent_suite,
    "squeeze-equivalence": squeeze_suite,
    "dynamics-kennard": dynamics_suite,
    "uncertainty": uncertainty_suite,
    "grid-crosscheck": grid_suite,
}


def run_suites(names=None, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> list[Check]:
    names = list(SUITES) if not names else list(names)
    checks: list[Check] = []
    for name in names:
        checks.extend(SUITES[name](cfg))
    return checks
