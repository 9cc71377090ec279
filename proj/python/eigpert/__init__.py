"""Perturbation of Hermitian eigenvalues and eigenvectors.

Matrices are passed as 2-d numpy arrays (converted to complex128).
Eigenvalues are ordered non-increasing throughout.
"""

from ._core import (
    DegenerateDirectionError,
    DimensionError,
    Error,
    GapTooSmallError,
    InvalidArgument,
    ModeError,
    ParseError,
    PreconditionError,
    StudyError,
    ConvergenceError,
    approx_eigenvectors,
    convergence_study,
    eigh,
    expand_along_line,
    first_order_eigenvalues,
    format_matrix,
    gershgorin_intervals,
    operator_norm,
    parse_hermitian,
    parse_matrix,
    predict_eigensystem,
    refined_eigenvalues,
    rs_coefficients,
    worked_example_regression,
)

__version__ = "0.1.0"
