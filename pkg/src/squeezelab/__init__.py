"""Coherent and squeezed states of the harmonic oscillator in a truncated Fock basis."""

from .dynamics import (
    QuadratureStats,
    Trajectory,
    evolve,
    kennard_product,
    kennard_var_p,
    kennard_var_x,
    trajectory,
)
from .errors import (
    GridResolutionError,
    InvalidDimension,
    InvalidParameter,
    NotHermitian,
    NumericalError,
    SqueezeLabError,
    TruncationError,
)
from .fock import (
    DenseOperator,
    FockState,
    ToleranceConfig,
    annihilation,
    apply,
    expectation,
    fidelity,
    matrix_exp,
    quadratures,
    variance,
)
from .grid import (
    Grid,
    WaveFunction,
    compare_up_to_phase,
    fock_to_position,
    hermite_functions,
    psi_cs_closed_form,
    psi_ss_closed_form,
)
from .states import (
    CoherentParams,
    MinUncertaintyCondition,
    SqueezeParams,
    bogoliubov_residual,
    coherent_closed_form,
    coherent_via_displacement,
    displaced_squeezed,
    from_min_uncertainty,
    ladder_residual,
    squeezed_vacuum_factored,
)
from .uncertainty import UncertaintyReport, heisenberg_check, schrodinger_check

__version__ = "0.1.0"
