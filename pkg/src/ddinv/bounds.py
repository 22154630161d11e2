"""Scalar error-bound machinery for the diagonal approximate inverse.

Everything here is a closed-form function of (n, m, M). The functions
``f_lambda`` and ``g_lambda`` split the contraction factor that drives the
bound; their maxima are available in closed form and are checked against
dense grids in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InvalidParams

__all__ = [
    "BoundOutcome",
    "c_constant",
    "theorem1_bound",
    "f_lambda",
    "g_lambda",
    "f_max_closed_form",
    "g_max_closed_form",
    "corollary_limit",
]


def _check_mM(m: float, M: float) -> None:
    if not m > 0 or not M >= m:
        raise InvalidParams(f"need 0 < m <= M, got m={m}, M={M}")


def _check(n: int, m: float, M: float) -> None:
    if n < 3:
        raise InvalidParams(f"need n >= 3, got n={n}")
    _check_mM(m, M)


def _c_terms(n: int, m: float, M: float) -> float:
    # fixed left-to-right order; each fraction fully formed before subtracting
    first = 2 * (n - 2) * m / (n * M + (n - 2) * m)
    second = (n - 2) * M * m / (((n - 2) * m + M) * ((n - 2) * m + 2 * M))
    third = M / (m * (n - 1))
    return first - second - third


def c_constant(n: int, m: float, M: float) -> float:
    """The constant C(m, M); the error bound applies only when it is positive.

    >>> round(c_constant(4, 1.0, 1.0), 12)
    0.166666666667
    """
    _check(n, m, M)
    return _c_terms(n, m, M)


@dataclass(frozen=True)
class BoundOutcome:
    n: int
    m: float
    M: float
    c_value: float
    applicable: bool
    bound: float | None

    def __str__(self) -> str:
        b = f"{self.bound:.6g}" if self.applicable else "n/a"
        return f"C={self.c_value:.6g} bound={b}"


def theorem1_bound(n: int, m: float, M: float) -> BoundOutcome:
    """Max-norm bound M / (m^2 (n-1)^2 C) on T^{-1} - S.

    Not applicable when n < 3 or C <= 0; that is reported, not raised.
    n = 2 still gets a c_value from the same formula.
    """
    _check_mM(m, M)
    if n < 2:
        raise InvalidParams(f"need n >= 2, got n={n}")
    c = _c_terms(n, m, M)
    if n >= 3 and c > 0:
        return BoundOutcome(n, m, M, c, True, M / (m**2 * (n - 1) ** 2 * c))
    return BoundOutcome(n, m, M, c, False, None)


def _check_lambda(lam: float, n: int, m: float, M: float) -> None:
    _check(n, m, M)
    if not 1 <= lam <= n - 1:
        raise DomainError(f"lambda={lam} outside [1, {n - 1}]")


def f_lambda(lam: float, n: int, m: float, M: float) -> float:
    _check_lambda(lam, n, m, M)
    return lam * M / (lam * M + (n - 1 - lam) * m) - (lam - 1) * m / ((lam - 1) * m + (n - lam) * M)


def g_lambda(lam: float, n: int, m: float, M: float) -> float:
    """a/b - a/(b + M) with a = (lam-1)m, b = a + (n-lam)M.

    Evaluated as a*M / (b (b + M)); the two fractions are nearly equal for
    large n and subtracting them directly loses most significant digits.
    """
    _check_lambda(lam, n, m, M)
    a = (lam - 1) * m
    b = a + (n - lam) * M
    return a * M / (b * (b + M))


def f_max_closed_form(n: int, m: float, M: float) -> float:
    """Maximum of f over [1, n-1], attained at lambda = n/2.

    The M == m case is an exact comparison; f is constant 1/(n-1) there.
    """
    _check(n, m, M)
    if M == m:
        return 1 / (n - 1)
    return (n * M - (n - 2) * m) / (n * M + (n - 2) * m)


def g_max_closed_form(n: int, m: float, M: float) -> float:
    """g(n-1); g is increasing so this is its maximum on [1, n-1]."""
    _check(n, m, M)
    return (n - 2) * M * m / (((n - 2) * m + M) * ((n - 2) * m + 2 * M))


def corollary_limit(m: float, M: float) -> float:
    """Large-n limit 2m / (M + m) of C(m, M) when M/m = o(n)."""
    _check_mM(m, M)
    return 2 * m / (M + m)
