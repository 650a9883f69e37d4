"""Heisenberg and Schrodinger-Robertson uncertainty checks.

The Schrodinger bound uses the centered covariance
cov = <{x - <x>, p - <p>}>/2, which every displaced squeezed state saturates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dynamics import quadrature_stats
from .fock import DEFAULT_TOLERANCES, FockState, ToleranceConfig

HEISENBERG_BOUND = 0.25


@dataclass(frozen=True)
class UncertaintyReport:
    lhs: float
    heisenberg_bound: float
    schrodinger_bound: float
    saturates_heisenberg: bool
    saturates_schrodinger: bool
    var_x: float
    var_p: float
    cov_xp: float


def _report(psi: FockState, cfg: ToleranceConfig) -> UncertaintyReport:
    st = quadrature_stats(psi)
    lhs = st.var_x * st.var_p
    sbound = HEISENBERG_BOUND + st.cov_xp**2
    return UncertaintyReport(
        lhs=lhs,
        heisenberg_bound=HEISENBERG_BOUND,
        schrodinger_bound=sbound,
        saturates_heisenberg=abs(lhs - HEISENBERG_BOUND) <= cfg.compare_tol,
        saturates_schrodinger=abs(lhs - sbound) <= cfg.compare_tol,
        var_x=st.var_x,
        var_p=st.var_p,
        cov_xp=st.cov_xp,
    )


def heisenberg_check(psi: FockState, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> UncertaintyReport:
    return _report(psi, cfg)


def schrodinger_check(psi: FockState, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> UncertaintyReport:
    return _report(psi, cfg)
