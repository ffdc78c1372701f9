"""Fractional powers of the first-order form of ``u^(n) + A u = 0``.

The operator ``A`` is represented by its eigenvalues; everything else acts
mode by mode on ``n x n`` blocks.
"""

__version__ = "0.1.0"

from .errors import (
    BranchCutError,
    ConvergenceError,
    DiagonalizationError,
    DomainError,
    FracBlocksError,
    SingularResolventError,
)
from .chebyshev import eval_U, eval_U_cospi, eval_U_shifted, eval_U_trig
from .spectral_base import (
    QuadratureSpec,
    SpectralOperator,
    balakrishnan_scalar,
    moment_inequality_check,
    scalar_power,
)
from .block_operator import (
    ModeBlock,
    assemble_lambda,
    balakrishnan_block,
    fractional_power_closed_form,
    fractional_power_eig_oracle,
    inverse_closed_form,
    power_semigroup_check,
    resolvent_closed_form,
)
from .spectrum import (
    SpectrumReport,
    classify_generation,
    eigenvalues_formula,
    numeric_spectrum_check,
    resolvent_bound_scan,
    sectoriality_threshold,
)
from .evolution import (
    PhaseState,
    Trajectory,
    dichotomy_report,
    evolve,
    random_state,
    semigroup_property_check,
    y_norm,
)
from .reduction import (
    CharCoeffs,
    char_coeffs,
    det_identity_check,
    exterior_trace,
    trace_identity_check,
)
from .laplacian import DirichletModel, eigenpairs, project, solve_pde
