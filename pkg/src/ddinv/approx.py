"""The diagonal approximate inverse S, residual matrices, and the exact-inverse oracle.

S = diag(1/t_11, ..., 1/t_nn). The error F = T^{-1} - S satisfies
F = F V + W with V = I - T S and W = S V; both V and W have closed-form
entries and are built from those formulas directly.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .bounds import BoundOutcome, theorem1_bound
from .errors import InvalidParams, NotSymmetric, SingularMatrix
from .matrix import DdpMatrix, dominance_params, worst_case_example

__all__ = [
    "DiagApprox",
    "ResidualPair",
    "ErrorReport",
    "DiscussionReport",
    "max_norm",
    "diag_approx",
    "residuals",
    "residual_bound",
    "exact_inverse",
    "error_report",
    "check_recursion_identity",
    "check_hold_identity",
    "discussion_example_report",
    "printed_worst_case_inverse",
]


def max_norm(a: np.ndarray) -> float:
    """Entrywise maximum norm max_ij |a_ij| (not the induced infinity norm)."""
    return float(np.max(np.abs(a)))


@dataclass(frozen=True, eq=False)
class DiagApprox:
    recip_diag: np.ndarray

    @property
    def n(self) -> int:
        return self.recip_diag.shape[0]

    def as_matrix(self) -> np.ndarray:
        return np.diag(self.recip_diag)

    def apply(self, v: np.ndarray) -> np.ndarray:
        """S @ v, as an entrywise product."""
        return self.recip_diag * v


def diag_approx(t: DdpMatrix) -> DiagApprox:
    r = 1.0 / t.diag
    r.setflags(write=False)
    return DiagApprox(r)


@dataclass(frozen=True, eq=False)
class ResidualPair:
    v: np.ndarray
    w: np.ndarray


def residuals(t: DdpMatrix) -> ResidualPair:
    """V = I - T S and W = S V from their entry formulas.

    v_ij = -t_ij / t_jj and w_ij = -t_ij / (t_ii t_jj) off the diagonal; both
    diagonals are exactly zero.
    """
    a = t.entries
    d = t.diag
    v = -a / d[None, :]
    w = -a / (d[:, None] * d[None, :])
    np.fill_diagonal(v, 0.0)
    np.fill_diagonal(w, 0.0)
    return ResidualPair(v, w)


def residual_bound(n: int, m: float, M: float) -> float:
    """M / (m^2 (n-1)^2), the entrywise bound on W and on its row differences."""
    return M / (m**2 * (n - 1) ** 2)


# -- oracle ----------------------------------------------------------------------------


def _pivot_floor(a: np.ndarray) -> float:
    return a.shape[0] * np.finfo(np.float64).eps * float(np.max(np.abs(np.diagonal(a))))


def _factor_solver(t: DdpMatrix):
    a = t.entries
    n = t.n
    floor = _pivot_floor(a)
    if t.symmetric:
        try:
            c, lower = sla.cho_factor(a, lower=True, check_finite=False)
        except np.linalg.LinAlgError:
            pass
        else:
            if np.min(np.diagonal(c) ** 2) > floor:
                return lambda rhs: sla.cho_solve((c, lower), rhs, check_finite=False)
    with warnings.catch_warnings():
        # singularity is reported below against our own pivot floor
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(a, check_finite=False)
    u_diag = np.abs(np.diagonal(lu))
    if np.min(u_diag) <= floor:
        k = int(np.argmin(u_diag))
        raise SingularMatrix(f"pivot {k + 1} of {n} is {u_diag[k]:.3g}, below {floor:.3g}")
    return lambda rhs: sla.lu_solve((lu, piv), rhs, check_finite=False)


def exact_inverse(t: DdpMatrix) -> np.ndarray:
    """Dense T^{-1} by factorization plus one step of iterative refinement.

    Cholesky when T is symmetric (falls back to LU if that fails), partial
    pivoting LU otherwise.
    """
    solve = _factor_solver(t)
    eye = np.eye(t.n)
    x = solve(eye)
    x += solve(eye - t.entries @ x)
    return x


# -- error report ------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ErrorReport:
    f_matrix: np.ndarray
    max_norm: float
    bound: BoundOutcome
    ratio: float | None
    inverse_nonpositive_offdiag: bool

    @property
    def violated(self) -> bool:
        return self.ratio is not None and self.ratio > 1 + 1e-9


def error_report(t: DdpMatrix, inverse: np.ndarray | None = None) -> ErrorReport:
    """Measure ||T^{-1} - S|| against the explicit bound.

    The bound's derivation mixes row and column sums, so asymmetric T is
    refused. ``inverse`` may be passed to reuse an oracle inverse.
    """
    if not t.symmetric:
        i, j = np.argwhere(t.entries != t.entries.T)[0]
        raise NotSymmetric(i + 1, j + 1)
    x = exact_inverse(t) if inverse is None else inverse
    f = x - np.diag(1.0 / t.diag)
    norm = max_norm(f)
    p = dominance_params(t)
    outcome = theorem1_bound(t.n, p.m, p.M)
    ratio = norm / outcome.bound if outcome.applicable else None
    off = ~np.eye(t.n, dtype=bool)
    return ErrorReport(f, norm, outcome, ratio, bool(np.all(x[off] <= 0)))


def check_recursion_identity(t: DdpMatrix) -> float:
    """||F - (F V + W)|| with F from the oracle and V, W from closed form."""
    f = exact_inverse(t) - np.diag(1.0 / t.diag)
    r = residuals(t)
    return max_norm(f - (f @ r.v + r.w))


def check_hold_identity(t: DdpMatrix) -> float:
    """max_i |sum_k f_ik t_ki|, which vanishes identically."""
    f = exact_inverse(t) - np.diag(1.0 / t.diag)
    return float(np.max(np.abs(np.einsum("ik,ki->i", f, t.entries))))


# -- worst-case family ------------------------------------------------------------------------


def printed_worst_case_inverse(n: int, m: float, M: float) -> np.ndarray:
    """The entrywise inverse formulas printed for the worst-case family.

    Kept only as a diagnostic: they do not agree with direct inversion.
    Column n for rows i < n is filled by symmetry.
    """
    q = (n - 1) * M - m
    idx = np.arange(n)
    delta = (idx[:, None] == idx[None, :]).astype(float)
    x = delta / q - m / q**2
    x[-1, :] = delta[-1, :] / ((n - 2) * m) - 1 / ((n - 2) * q)
    x[:-1, -1] = x[-1, :-1]
    return x


@dataclass(frozen=True)
class DiscussionReport:
    n: int
    m: float
    M: float
    error: float
    scaled_error: float
    paper_closed_form_gap: float


def discussion_example_report(n: int, m: float, M: float) -> DiscussionReport:
    """Error of S on the worst-case family, scaled by (n-1)^2 m."""
    if n < 3 or not m > 0 or not M >= m:
        raise InvalidParams(f"need n >= 3 and 0 < m <= M, got n={n}, m={m}, M={M}")
    t = worst_case_example(n, m, M)
    x = exact_inverse(t)
    err = max_norm(x - np.diag(1.0 / t.diag))
    gap = max_norm(x - printed_worst_case_inverse(n, m, M))
    return DiscussionReport(n, m, M, err, err * (n - 1) ** 2 * m, gap)
