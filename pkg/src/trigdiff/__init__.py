"""Stable numerical differentiation on (0, 2*pi) via a trigonometric Galerkin scheme.

The package turns p-th order differentiation (p = 1, 2, 3) of noisy data into
a first-kind integral equation, discretises it on the orthonormal
trigonometric basis, and solves the resulting square system through
closed-form expressions. Truncation degree is the regularisation parameter;
several a priori rules for choosing it from the noise level are provided,
along with a verification layer for the scheme's norm and decay bounds and a
benchmark harness that reproduces published accuracy grids.
"""

from .basis import (
    ExactSignal,
    SampledSignal,
    TrigPoly,
    fourier_coeffs_exact,
    fourier_coeffs_quadrature,
    l2_error_exact,
    l2_norm,
    sobolev_norm_of_signal,
    sobolev_per_norm,
)
from .galerkin import assemble_matrix, projected_image, solve_analytic, solver_constants
from .oracle import inverse_operator_norm, solve_dense
from .regularize import (
    BandlimitedRule,
    BoundConstants,
    DiffProblem,
    DiffResult,
    FixedRule,
    NoPriorRule,
    SobolevPriorRule,
    builtin_constants,
    choose_n,
    differentiate,
    divergence_probe,
    taylor_truncate,
)
from .experiments import add_noise, catalog, catalog_ids, emit_plot_data, relative_error, run_table

__version__ = "0.1.0"

__all__ = [
    "ExactSignal",
    "SampledSignal",
    "TrigPoly",
    "fourier_coeffs_exact",
    "fourier_coeffs_quadrature",
    "l2_error_exact",
    "l2_norm",
    "sobolev_norm_of_signal",
    "sobolev_per_norm",
    "assemble_matrix",
    "projected_image",
    "solve_analytic",
    "solver_constants",
    "inverse_operator_norm",
    "solve_dense",
    "BandlimitedRule",
    "BoundConstants",
    "DiffProblem",
    "DiffResult",
    "FixedRule",
    "NoPriorRule",
    "SobolevPriorRule",
    "builtin_constants",
    "choose_n",
    "differentiate",
    "divergence_probe",
    "taylor_truncate",
    "add_noise",
    "catalog",
    "catalog_ids",
    "emit_plot_data",
    "relative_error",
    "run_table",
]
