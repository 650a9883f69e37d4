"""Coherent and squeezed states built three independent ways.

All labels refer to the displace-after-squeeze ordering D(alpha) S(z) |0>,
with S(z) = exp[(z a^dag a^dag - z^* a a)/2] and z = r e^{i phi}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidParameter, TruncationError
from .fock import (
    DEFAULT_TOLERANCES,
    DenseOperator,
    FockState,
    ToleranceConfig,
    _check_dim,
    annihilation,
    expm_array,
    lowering_array,
    matrix_exp,
    quadratures,
)

MAX_ALPHA = 6.0
MAX_R = 2.0
TAIL_WINDOW = 10
WORKSPACE_PAD = 64
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CoherentParams:
    """Displacement amplitude alpha = (x0 + i p0)/sqrt(2)."""

    alpha: complex = 0j

    def __post_init__(self):
        alpha = complex(self.alpha)
        if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
            raise InvalidParameter(f"alpha must be finite, got {alpha!r}")
        if abs(alpha) > MAX_ALPHA:
            raise InvalidParameter(f"|alpha| = {abs(alpha):.6g} exceeds envelope {MAX_ALPHA}")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def from_phase_space(cls, x0: float, p0: float) -> "CoherentParams":
        return cls(complex(x0, p0) / math.sqrt(2.0))

    @property
    def x0(self) -> float:
        return math.sqrt(2.0) * self.alpha.real

    @property
    def p0(self) -> float:
        return math.sqrt(2.0) * self.alpha.imag


@dataclass(frozen=True)
class SqueezeParams:
    """Squeeze magnitude r >= 0 and phase phi, reduced into [0, 2 pi)."""

    r: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        r, phi = float(self.r), float(self.phi)
        if not (math.isfinite(r) and math.isfinite(phi)):
            raise InvalidParameter("squeeze parameters must be finite")
        if r < 0.0 or r > MAX_R:
            raise InvalidParameter(f"r = {r:.6g} outside [0, {MAX_R}]")
        phi = math.fmod(phi, TWO_PI)
        if phi < 0.0:
            phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "phi", phi)

    @property
    def s(self) -> float:
        return math.exp(self.r)

    @property
    def z(self) -> complex:
        return self.r * cmath.exp(1j * self.phi)


@dataclass(frozen=True)
class MinUncertaintyCondition:
    """(x + iBp) psi = C psi with B = dx/dp real and C = <x> + iB<p>."""

    B: float
    C: complex = 0j

    def __post_init__(self):
        if not (math.isfinite(self.B) and self.B > 0.0):
            raise InvalidParameter(f"B must be a positive real, got {self.B!r}")
        object.__setattr__(self, "B", float(self.B))
        object.__setattr__(self, "C", complex(self.C))

    @property
    def mean_x(self) -> float:
        return self.C.real

    @property
    def mean_p(self) -> float:
        return self.C.imag / self.B


def mean_occupation(p: CoherentParams, z: SqueezeParams | None = None) -> float:
    r = 0.0 if z is None else z.r
    return abs(p.alpha) ** 2 + math.sinh(r) ** 2


def check_envelope(p: CoherentParams, z: SqueezeParams | None, dim: int) -> None:
    """Raise TruncationError unless the occupied support sits well inside dim."""
    dim = _check_dim(dim)
    nbar = mean_occupation(p, z)
    need = nbar + 6.0 * math.sqrt(nbar + 1.0)
    if not need < dim:
        raise TruncationError(
            f"mean occupation {nbar:.4g} needs dim > {need:.4g}, got {dim}"
        )


def tail_mass(psi: FockState) -> float:
    """Probability carried by the last ten basis states (last dim//2 for tiny bases)."""
    window = min(TAIL_WINDOW, psi.dim // 2)
    return float(np.sum(np.abs(psi.amplitudes[-window:]) ** 2))


def _check_tail(psi: FockState, cfg: ToleranceConfig) -> FockState:
    mass = tail_mass(psi)
    if not mass < cfg.tail_tol:
        raise TruncationError(
            f"tail mass {mass:.3g} in the last {TAIL_WINDOW} "
            f"levels exceeds {cfg.tail_tol:.3g} at dim={psi.dim}"
        )
    return psi


def _renormalize(amps: np.ndarray, cfg: ToleranceConfig) -> FockState:
    nrm = float(np.linalg.norm(amps))
    if abs(nrm - 1.0) >= cfg.tail_tol:
        raise TruncationError(
            f"truncated norm {nrm:.15g} differs from 1 by more than {cfg.tail_tol:.3g}"
        )
    return _check_tail(FockState(amps / nrm), cfg)


def coherent_closed_form(p: CoherentParams, dim: int, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> FockState:
    """c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), renormalized after truncation."""
    check_envelope(p, None, dim)
    amps = np.empty(dim, dtype=np.complex128)
    amps[0] = math.exp(-0.5 * abs(p.alpha) ** 2)
    for n in range(1, dim):
        amps[n] = amps[n - 1] * p.alpha / math.sqrt(n)
    return _renormalize(amps, cfg)


def _displacement_generator_array(alpha: complex, dim: int) -> np.ndarray:
    a = lowering_array(dim)
    return alpha * a.T - np.conj(alpha) * a


def _squeeze_generator_array(z: SqueezeParams, dim: int) -> np.ndarray:
    a = lowering_array(dim)
    a2 = a @ a
    return 0.5 * z.z * a2.T - 0.5 * np.conj(z.z) * a2


def displacement_generator(alpha: complex, dim: int) -> DenseOperator:
    """alpha a^dag - alpha^* a"""
    return DenseOperator(_displacement_generator_array(alpha, _check_dim(dim)))


def squeeze_generator(z: SqueezeParams, dim: int) -> DenseOperator:
    """(z a^dag a^dag - z^* a a) / 2"""
    return DenseOperator(_squeeze_generator_array(z, _check_dim(dim)))


@lru_cache(maxsize=64)
def _squeezed_column(z: SqueezeParams, work: int, exp_tol: float) -> np.ndarray:
    col = expm_array(_squeeze_generator_array(z, work), exp_tol)[:, 0].copy()
    col.setflags(write=False)
    return col


@lru_cache(maxsize=16)
def _displacement_unitary(alpha: complex, work: int, exp_tol: float) -> np.ndarray:
    u = expm_array(_displacement_generator_array(alpha, work), exp_tol)
    u.setflags(write=False)
    return u


def _exponentiated_on_vacuum(
    p: CoherentParams, z: SqueezeParams, dim: int, cfg: ToleranceConfig
) -> FockState:
    """Project exp(gen_D) exp(gen_S) |0>, computed WORKSPACE_PAD levels wider, onto dim.

    Exponentiating directly in the dim-level basis distorts the amplitudes
    near the edge (the generators are cut off there); the padded workspace
    pushes that distortion far outside the returned block.
    """
    work = dim + WORKSPACE_PAD
    if z.r != 0.0:
        v = _squeezed_column(z, work, cfg.exp_tol)
    else:
        v = np.zeros(work, dtype=np.complex128)
        v[0] = 1.0
    if p.alpha != 0:
        v = _displacement_unitary(p.alpha, work, cfg.exp_tol) @ v
    return _renormalize(v[:dim], cfg)


def displacement_operator(p: CoherentParams, dim: int, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseOperator:
    return matrix_exp(displacement_generator(p.alpha, dim), cfg)


def squeeze_operator(z: SqueezeParams, dim: int, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseOperator:
    return matrix_exp(squeeze_generator(z, dim), cfg)


def displacement_split(p: CoherentParams, dim: int, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseOperator:
    """Normal-ordered form exp(-|alpha|^2/2) exp(alpha a^dag) exp(-alpha^* a).

    Only equal to D(alpha) on states whose support is far from the truncation edge.
    """
    a = annihilation(dim).entries
    raise_part = matrix_exp(DenseOperator(p.alpha * a.T), cfg)
    lower_part = matrix_exp(DenseOperator(-np.conj(p.alpha) * a), cfg)
    return math.exp(-0.5 * abs(p.alpha) ** 2) * (raise_part @ lower_part)


def coherent_via_displacement(
    p: CoherentParams, dim: int, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> FockState:
    """D(alpha)|0> with D from the numerical matrix exponential."""
    check_envelope(p, None, dim)
    return _exponentiated_on_vacuum(p, SqueezeParams(), dim, cfg)


def squeezed_vacuum_factored(
    z: SqueezeParams, dim: int, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> FockState:
    """Even-only amplitudes read off the disentangled (normal-ordered) S(z).

    c_{2m} = (cosh r)^{-1/2} (e^{i phi} tanh r / 2)^m sqrt((2m)!) / m!
    """
    check_envelope(CoherentParams(0j), z, dim)
    amps = np.zeros(dim, dtype=np.complex128)
    amps[0] = 1.0 / math.sqrt(math.cosh(z.r))
    ratio = cmath.exp(1j * z.phi) * math.tanh(z.r) / 2.0
    for n in range(2, dim, 2):
        m = n // 2
        amps[n] = amps[n - 2] * ratio * math.sqrt(n * (n - 1)) / m
    return _renormalize(amps, cfg)


def squeezed_vacuum_via_exponential(
    z: SqueezeParams, dim: int, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> FockState:
    check_envelope(CoherentParams(0j), z, dim)
    return _exponentiated_on_vacuum(CoherentParams(0j), z, dim, cfg)


def displaced_squeezed(
    p: CoherentParams,
    z: SqueezeParams,
    dim: int,
    cfg: ToleranceConfig = DEFAULT_TOLERANCES,
) -> FockState:
    """D(alpha) S(z) |0>, both factors by numerical exponentiation."""
    check_envelope(p, z, dim)
    return _exponentiated_on_vacuum(p, z, dim, cfg)


def _edge_excluded_norm(v: np.ndarray) -> float:
    return float(np.linalg.norm(v[:-1]))


def ladder_residual(psi: FockState, p: CoherentParams) -> float:
    """||(a - alpha) psi|| with the truncation-edge component dropped."""
    a = annihilation(psi.dim).entries
    c = psi.amplitudes
    return _edge_excluded_norm(a @ c - p.alpha * c)


def bogoliubov_eigenvalue(p: CoherentParams, z: SqueezeParams) -> complex:
    ch, sh = math.cosh(z.r), math.sinh(z.r)
    return ch * p.alpha - cmath.exp(1j * z.phi) * sh * p.alpha.conjugate()


def bogoliubov_residual(psi: FockState, p: CoherentParams, z: SqueezeParams) -> float:
    """||[cosh r a - e^{i phi} sinh r a^dag - mu] psi||, edge component dropped."""
    a = annihilation(psi.dim).entries
    c = psi.amplitudes
    ch, sh = math.cosh(z.r), math.sinh(z.r)
    lowered = ch * (a @ c) - cmath.exp(1j * z.phi) * sh * (a.T @ c)
    return _edge_excluded_norm(lowered - bogoliubov_eigenvalue(p, z) * c)


def min_uncertainty_params(c: MinUncertaintyCondition) -> tuple[CoherentParams, SqueezeParams]:
    """Map (B, C) to the real-squeeze labels (alpha, r, phi in {0, pi})."""
    if c.B >= 1.0:
        z = SqueezeParams(0.5 * math.log(c.B), 0.0)
    else:
        z = SqueezeParams(-0.5 * math.log(c.B), math.pi)
    return CoherentParams.from_phase_space(c.mean_x, c.mean_p), z


def from_min_uncertainty(
    c: MinUncertaintyCondition, dim: int, cfg: ToleranceConfig = DEFAULT_TOLERANCES
) -> FockState:
    p, z = min_uncertainty_params(c)
    return displaced_squeezed(p, z, dim, cfg)


def min_uncertainty_residual(psi: FockState, c: MinUncertaintyCondition) -> float:
    """||(x + iBp) psi - C psi|| with the truncation-edge component dropped."""
    x, p = quadratures(psi.dim)
    amps = psi.amplitudes
    v = x.entries @ amps + 1j * c.B * (p.entries @ amps) - c.C * amps
    return _edge_excluded_norm(v)
