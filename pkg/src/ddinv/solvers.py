"""Iterative solvers that use S as a cheap approximate inverse.

``jacobi_solve`` runs the stationary iteration x <- x + S (b - T x);
``pcg_solve`` is conjugate gradients with S (or the identity) as
preconditioner. Both start from x = 0 and record the true residual
||b - T x||_2 recomputed from scratch at every step.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from .approx import diag_approx
from .errors import DimensionMismatch, InvalidParams, NotPositiveDefinite, NotSymmetric
from .matrix import DdpMatrix, is_positive_definite

__all__ = ["SolveReport", "jacobi_solve", "pcg_solve", "make_preconditioner"]

Method = Literal["jacobi", "cg", "pcg-diag"]


@dataclass
class SolveReport:
    solution: np.ndarray
    iterations: int
    converged: bool
    method: Method
    residual_history: list[float] = field(default_factory=list)

    @property
    def final_residual(self) -> float:
        return self.residual_history[-1]

    @property
    def relative_residual(self) -> float:
        b0 = self.residual_history[0]
        return self.final_residual / b0 if b0 > 0 else 0.0


def _check_inputs(t: DdpMatrix, b, tol: float, max_iter: int) -> np.ndarray:
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (t.n,):
        raise DimensionMismatch(f"rhs has shape {b.shape}, matrix has order {t.n}")
    if not tol > 0 or max_iter < 1:
        raise InvalidParams(f"need tol > 0 and max_iter >= 1, got tol={tol}, max_iter={max_iter}")
    return b


def make_preconditioner(t: DdpMatrix, use_diag: bool) -> Callable[[np.ndarray], np.ndarray]:
    if use_diag:
        return diag_approx(t).apply
    return lambda r: r.copy()


def jacobi_solve(t: DdpMatrix, b, tol: float = 1e-10, max_iter: int = 10_000) -> SolveReport:
    b = _check_inputs(t, b, tol, max_iter)
    s = diag_approx(t)
    a = t.entries
    x = np.zeros(t.n)
    bnorm = float(np.linalg.norm(b))
    r = b.copy()
    history = [bnorm]
    if bnorm == 0.0:
        return SolveReport(x, 0, True, "jacobi", history)
    k = 0
    converged = False
    while k < max_iter:
        x += s.apply(r)
        r = b - a @ x
        k += 1
        rn = float(np.linalg.norm(r))
        history.append(rn)
        if rn <= tol * bnorm:
            converged = True
            break
        if not np.isfinite(rn):
            break
    return SolveReport(x, k, converged, "jacobi", history)


def pcg_solve(
    t: DdpMatrix,
    b,
    use_diag_precond: bool = True,
    tol: float = 1e-10,
    max_iter: int = 10_000,
) -> SolveReport:
    """Preconditioned conjugate gradients; plain CG when ``use_diag_precond`` is false."""
    if not t.symmetric:
        i, j = np.argwhere(t.entries != t.entries.T)[0]
        raise NotSymmetric(i + 1, j + 1)
    if not is_positive_definite(t):
        raise NotPositiveDefinite("conjugate gradients needs a positive definite matrix")
    b = _check_inputs(t, b, tol, max_iter)
    method: Method = "pcg-diag" if use_diag_precond else "cg"
    precond = make_preconditioner(t, use_diag_precond)
    a = t.entries

    x = np.zeros(t.n)
    r = b.copy()
    bnorm = float(np.linalg.norm(b))
    history = [bnorm]
    if bnorm == 0.0:
        return SolveReport(x, 0, True, method, history)

    z = precond(r)
    p = z.copy()
    rz = float(r @ z)
    k = 0
    converged = False
    while k < max_iter:
        ap = a @ p
        alpha = rz / float(p @ ap)
        x += alpha * p
        r -= alpha * ap
        k += 1
        true_res = float(np.linalg.norm(b - a @ x))
        history.append(true_res)
        if true_res <= tol * bnorm:
            converged = True
            break
        z = precond(r)
        rz_new = float(r @ z)
        p = z + (rz_new / rz) * p
        rz = rz_new
    return SolveReport(x, k, converged, method, history)
