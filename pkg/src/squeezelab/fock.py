"""Dense linear algebra over a truncated number basis |0>, ..., |dim-1>.

Units are natural (hbar = m = omega = 1) with x = (a + a^dag)/sqrt(2) and
p = (a - a^dag)/(i sqrt(2)), so that [x, p] = i away from the truncation edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InvalidDimension, InvalidParameter, NotHermitian, NumericalError

MAX_DIM = 256
HERMITIAN_TOL = 1e-12
VARIANCE_CLAMP = 1e-12


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances shared by every construction and check."""

    exp_tol: float = 1e-13
    tail_tol: float = 1e-10
    compare_tol: float = 1e-9

    def __post_init__(self):
        for name in ("exp_tol", "tail_tol", "compare_tol"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameter(f"{name} must be finite and > 0, got {value!r}")


DEFAULT_TOLERANCES = ToleranceConfig()


def _check_dim(dim: int) -> int:
    if isinstance(dim, bool) or int(dim) != dim:
        raise InvalidDimension(f"dimension must be an integer, got {dim!r}")
    dim = int(dim)
    if dim < 2:
        raise InvalidDimension(f"dimension must be >= 2, got {dim}")
    if dim > MAX_DIM:
        raise InvalidDimension(f"dimension {dim} exceeds the dense envelope of {MAX_DIM}")
    return dim


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FockState:
    """Complex amplitudes c_n over the truncated number basis.

    Construction does not normalize; ``apply`` may legitimately return an
    unnormalized vector. Use :meth:`normalized` when a unit vector is required.
    """

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        _check_dim(amps.size)
        if not np.all(np.isfinite(amps)):
            raise NumericalError("state amplitudes must be finite")
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def basis(cls, n: int, dim: int) -> "FockState":
        dim = _check_dim(dim)
        if not 0 <= n < dim:
            raise InvalidParameter(f"basis index {n} outside 0..{dim - 1}")
        amps = np.zeros(dim, dtype=np.complex128)
        amps[n] = 1.0
        return cls(amps)

    @classmethod
    def vacuum(cls, dim: int) -> "FockState":
        return cls.basis(0, dim)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "FockState":
        nrm = self.norm()
        if nrm == 0.0:
            raise NumericalError("cannot normalize the zero vector")
        return FockState(self.amplitudes / nrm)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __repr__(self):
        return f"FockState(dim={self.dim}, norm={self.norm():.15g})"


@dataclass(frozen=True)
class DenseOperator:
    """A dim x dim complex matrix acting on :class:`FockState` vectors."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidDimension(f"operator must be square, got shape {m.shape}")
        _check_dim(m.shape[0])
        object.__setattr__(self, "entries", _readonly(m))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "DenseOperator":
        return cls(np.eye(_check_dim(dim), dtype=np.complex128))

    def adjoint(self) -> "DenseOperator":
        return DenseOperator(self.entries.conj().T)

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def commutator(self, other: "DenseOperator") -> "DenseOperator":
        return self @ other - other @ self

    def __matmul__(self, other):
        if isinstance(other, DenseOperator):
            _same_dim(self.dim, other.dim)
            return DenseOperator(self.entries @ other.entries)
        if isinstance(other, FockState):
            return apply(self, other)
        return NotImplemented

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        if not isinstance(other, DenseOperator):
            return NotImplemented
        _same_dim(self.dim, other.dim)
        return DenseOperator(self.entries + other.entries)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        if not isinstance(other, DenseOperator):
            return NotImplemented
        _same_dim(self.dim, other.dim)
        return DenseOperator(self.entries - other.entries)

    def __mul__(self, scalar: complex) -> "DenseOperator":
        if not isinstance(scalar, (int, float, complex, np.number)):
            return NotImplemented
        return DenseOperator(self.entries * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "DenseOperator":
        return DenseOperator(-self.entries)

    def __repr__(self):
        return f"DenseOperator(dim={self.dim})"


def _same_dim(d1: int, d2: int) -> None:
    if d1 != d2:
        raise InvalidDimension(f"dimension mismatch: {d1} vs {d2}")


def lowering_array(dim: int) -> np.ndarray:
    """Raw lowering matrix; no envelope check, for internal workspaces."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(np.complex128)


def annihilation(dim: int) -> DenseOperator:
    """Lowering operator with entries[n-1, n] = sqrt(n)."""
    return DenseOperator(lowering_array(_check_dim(dim)))


def creation(dim: int) -> DenseOperator:
    return annihilation(dim).adjoint()


def number(dim: int) -> DenseOperator:
    dim = _check_dim(dim)
    return DenseOperator(np.diag(np.arange(dim, dtype=float)))


@lru_cache(maxsize=8)
def quadratures(dim: int) -> tuple[DenseOperator, DenseOperator]:
    """Return the position and momentum quadratures ``(x, p)``."""
    a = annihilation(dim).entries
    ad = a.T
    x = (a + ad) / math.sqrt(2.0)
    p = (a - ad) / (1j * math.sqrt(2.0))
    return DenseOperator(x), DenseOperator(p)


def matrix_exp(m: DenseOperator, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> DenseOperator:
    """exp(M) by scaling and squaring a truncated Taylor series."""
    return DenseOperator(expm_array(m.entries, cfg.exp_tol))


def expm_array(a: np.ndarray, exp_tol: float = DEFAULT_TOLERANCES.exp_tol) -> np.ndarray:
    """Scaling-and-squaring kernel behind :func:`matrix_exp`, on raw arrays.

    A is scaled by 2**-s so that its 1-norm is at most 1/2, the Taylor series
    is summed until a term drops below ``exp_tol * 2**-s`` relative to the
    partial sum, and the result is squared s times.
    """
    a = np.asarray(a, dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise NumericalError("matrix_exp: non-finite entries")
    n = a.shape[0]
    norm1 = float(np.max(np.sum(np.abs(a), axis=0)))
    if norm1 == 0.0:
        return np.eye(n, dtype=np.complex128)
    s = max(0, math.ceil(math.log2(norm1 / 0.5)))
    a = a / (2.0**s)
    tol = exp_tol * 2.0**-s

    result = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    for k in range(1, 60):
        term = term @ a / k
        result = result + term
        if np.max(np.abs(term)) <= tol * np.max(np.abs(result)):
            break
    else:
        raise NumericalError("matrix_exp: Taylor series did not converge")
    for _ in range(s):
        result = result @ result
    if not np.all(np.isfinite(result)):
        raise NumericalError("matrix_exp: overflow during squaring")
    return result


def apply(m: DenseOperator, psi: FockState) -> FockState:
    _same_dim(m.dim, psi.dim)
    return FockState(m.entries @ psi.amplitudes)


def inner(psi: FockState, chi: FockState) -> complex:
    """<psi|chi>, antilinear in the first argument."""
    _same_dim(psi.dim, chi.dim)
    return complex(np.vdot(psi.amplitudes, chi.amplitudes))


def expectation(m: DenseOperator, psi: FockState) -> complex:
    _same_dim(m.dim, psi.dim)
    return complex(np.vdot(psi.amplitudes, m.entries @ psi.amplitudes))


def variance(m: DenseOperator, psi: FockState) -> float:
    """<M^2> - <M>^2 for Hermitian M and normalized psi.

    Round-off negatives down to -1e-12 are clamped to zero.
    """
    if m.hermiticity_defect() > HERMITIAN_TOL:
        raise NotHermitian(f"variance needs a Hermitian operator (defect {m.hermiticity_defect():.3g})")
    _same_dim(m.dim, psi.dim)
    v = m.entries @ psi.amplitudes
    second = float(np.vdot(v, v).real)
    first = float(np.vdot(psi.amplitudes, v).real)
    var = second - first * first
    if var < 0.0:
        if var < -VARIANCE_CLAMP:
            raise NumericalError(f"negative variance {var:.3g}; is the state normalized?")
        var = 0.0
    return var


def fidelity(psi: FockState, chi: FockState) -> float:
    """|<psi|chi>|, clipped into [0, 1]."""
    return min(1.0, abs(inner(psi, chi)))

