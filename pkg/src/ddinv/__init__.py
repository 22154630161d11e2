"""Diagonal approximate inverse of diagonally dominant positive matrices."""
from .approx import (
    DiagApprox,
    DiscussionReport,
    ErrorReport,
    ResidualPair,
    check_hold_identity,
    check_recursion_identity,
    diag_approx,
    discussion_example_report,
    error_report,
    exact_inverse,
    max_norm,
    residuals,
)
from .bounds import (
    BoundOutcome,
    c_constant,
    corollary_limit,
    f_lambda,
    f_max_closed_form,
    g_lambda,
    g_max_closed_form,
    theorem1_bound,
)
from .matrix import (
    DdpMatrix,
    DominanceParams,
    dominance_params,
    format_matrix,
    is_positive_definite,
    parse_matrix,
    random_ddp,
    validate_ddp,
    worst_case_example,
)
from .solvers import SolveReport, jacobi_solve, pcg_solve

__version__ = "0.1.0"
