"""Dense positive diagonally dominant matrices: validation, parameters, generators, text I/O.

Plain ``numpy.ndarray`` (2-D, float64) plays the role of an unvalidated dense
matrix. :class:`DdpMatrix` wraps one that has passed :func:`validate_ddp` and
freezes it.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np
import scipy.linalg as sla

from .errors import (
    DominanceViolated,
    InvalidMatrix,
    InvalidParams,
    MalformedHeader,
    NonFiniteEntry,
    NonNumericToken,
    NonPositiveEntry,
    NotSymmetric,
    OrderTooSmall,
    RowLengthMismatch,
    TooFewRows,
    TrailingData,
)

__all__ = [
    "DdpMatrix",
    "DominanceParams",
    "parse_matrix",
    "format_matrix",
    "parse_vector",
    "format_vector",
    "validate_ddp",
    "dominance_params",
    "worst_case_example",
    "random_ddp",
    "is_positive_definite",
    "offdiag_row_sums",
]


@dataclass(frozen=True, eq=False)
class DdpMatrix:
    """A validated matrix T with t_ij > 0 and t_ii >= sum_{j != i} t_ij.

    ``symmetric`` records whether T equals its transpose exactly. It is
    always computed, whether or not symmetry was required at validation.
    """

    entries: np.ndarray
    symmetric: bool

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def diag(self) -> np.ndarray:
        return np.diagonal(self.entries)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)

    def __repr__(self) -> str:
        return f"DdpMatrix(n={self.n}, symmetric={self.symmetric})"


@dataclass(frozen=True, eq=False)
class DominanceParams:
    """m (smallest off-diagonal entry), M, and the row slacks delta."""

    m: float
    M: float
    delta: np.ndarray


# -- text format -----------------------------------------------------------------


def _data_lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _parse_floats(lineno: int, line: str) -> list[float]:
    values = []
    for col, token in enumerate(line.split(), start=1):
        try:
            x = float(token)
        except ValueError:
            raise NonNumericToken(lineno, col, token) from None
        if not math.isfinite(x):
            raise NonNumericToken(lineno, col, token)
        values.append(x)
    return values


def _read_header(lines) -> int:
    try:
        _, header = next(lines)
    except StopIteration:
        raise MalformedHeader() from None
    try:
        n = int(header)
    except ValueError:
        raise MalformedHeader(header) from None
    if n < 1:
        raise MalformedHeader(header)
    return n


def parse_matrix(text: str | TextIO) -> np.ndarray:
    """Parse the whitespace-separated matrix text format.

    ``#`` lines and blank lines are ignored. The first data line holds n,
    followed by exactly n rows of n decimal literals.
    """
    if not isinstance(text, str):
        text = text.read()
    lines = iter(_data_lines(text))
    n = _read_header(lines)
    rows = []
    for lineno, line in lines:
        if len(rows) == n:
            raise TrailingData(lineno)
        values = _parse_floats(lineno, line)
        if len(values) != n:
            raise RowLengthMismatch(len(rows) + 1, n, len(values))
        rows.append(values)
    if len(rows) < n:
        raise TooFewRows(n, len(rows))
    return np.array(rows, dtype=np.float64).reshape(n, n)


def format_matrix(a: np.ndarray | DdpMatrix, comment: str | None = None) -> str:
    """Inverse of :func:`parse_matrix`; 17 significant digits round-trip exactly."""
    a = np.asarray(a, dtype=np.float64)
    out = io.StringIO()
    if comment:
        for line in comment.splitlines():
            out.write(f"# {line}\n")
    out.write(f"{a.shape[0]}\n")
    for row in a:
        out.write(" ".join(f"{x:.17g}" for x in row))
        out.write("\n")
    return out.getvalue()


def parse_vector(text: str | TextIO) -> np.ndarray:
    """Vector format: header line n, then n decimal literals across any number of lines."""
    if not isinstance(text, str):
        text = text.read()
    lines = iter(_data_lines(text))
    n = _read_header(lines)
    values: list[float] = []
    for lineno, line in lines:
        if len(values) >= n:
            raise TrailingData(lineno)
        values.extend(_parse_floats(lineno, line))
    if len(values) != n:
        raise RowLengthMismatch(1, n, len(values))
    return np.array(values, dtype=np.float64)


def format_vector(v: np.ndarray) -> str:
    v = np.asarray(v, dtype=np.float64)
    return f"{v.shape[0]}\n" + "".join(f"{x:.17g}\n" for x in v)


# -- validation ---------------------------------------------------------------------


def offdiag_row_sums(a: np.ndarray) -> np.ndarray:
    """Correctly rounded off-diagonal row sums.

    ``math.fsum`` makes the result independent of summation order, so the
    dominance test and the generators agree bit for bit.
    """
    rows = a.tolist()
    return np.array([math.fsum(r[:i] + r[i + 1 :]) for i, r in enumerate(rows)])


def validate_ddp(a, require_symmetric: bool = True) -> DdpMatrix:
    """Check positivity and row diagonal dominance; return a frozen :class:`DdpMatrix`.

    Comparisons are exact binary64, no tolerance. Checks run in the order
    order -> positivity -> dominance -> symmetry, each scanning row-major,
    so the first violation reported is deterministic.
    """
    a = np.array(a, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidMatrix(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    bad = np.argwhere(~np.isfinite(a))
    if bad.size:
        i, j = bad[0]
        raise NonFiniteEntry(i + 1, j + 1)
    if n < 2:
        raise OrderTooSmall(n)

    bad = np.argwhere(a <= 0)
    if bad.size:
        i, j = bad[0]
        raise NonPositiveEntry(i + 1, j + 1, float(a[i, j]))

    sums = offdiag_row_sums(a)
    diag = np.diagonal(a)
    bad = np.flatnonzero(diag < sums)
    if bad.size:
        i = bad[0]
        raise DominanceViolated(i + 1, float(sums[i]), float(diag[i]))

    symmetric = bool(np.array_equal(a, a.T))
    if require_symmetric and not symmetric:
        i, j = np.argwhere(a != a.T)[0]
        raise NotSymmetric(i + 1, j + 1)

    a.setflags(write=False)
    return DdpMatrix(a, symmetric)


def dominance_params(t: DdpMatrix) -> DominanceParams:
    """m = min off-diagonal, delta_i = row slack, M = max(max off-diagonal, max delta).

    Both triangles are scanned, so for asymmetric T this is the minimum over
    all off-diagonal entries, not only the upper triangle.
    """
    a = t.entries
    off = a[~np.eye(t.n, dtype=bool)]
    delta = np.diagonal(a) - offdiag_row_sums(a)
    delta.setflags(write=False)
    return DominanceParams(
        m=float(off.min()),
        M=float(max(off.max(), delta.max())),
        delta=delta,
    )


# -- generators -----------------------------------------------------------------------


def worst_case_example(n: int, m: float, M: float) -> DdpMatrix:
    """Off-diagonal m, diagonal (n-1)M except the last entry (n-1)m.

    This family attains the 1/(n-1)^2 rate of the max-norm error.
    """
    if n < 3 or not m > 0 or not M >= m:
        raise InvalidParams(f"need n >= 3 and 0 < m <= M, got n={n}, m={m}, M={M}")
    a = np.full((n, n), float(m))
    np.fill_diagonal(a, (n - 1) * float(M))
    a[-1, -1] = (n - 1) * float(m)
    return validate_ddp(a, require_symmetric=True)


def random_ddp(n: int, m: float, off_max: float, slack_max: float, seed: int) -> DdpMatrix:
    """Random symmetric instance with off-diagonals in [m, off_max] and slacks in [0, slack_max].

    The diagonal is built as (off-diagonal row sum) + slack, so dominance
    holds by construction.
    """
    if n < 2 or not 0 < m <= off_max or not slack_max >= 0:
        raise InvalidParams(
            f"need n >= 2, 0 < m <= off_max, slack_max >= 0; "
            f"got n={n}, m={m}, off_max={off_max}, slack_max={slack_max}"
        )
    rng = np.random.default_rng(seed)
    a = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    a[iu] = rng.uniform(m, off_max, size=iu[0].size)
    a += a.T
    slack = rng.uniform(0.0, slack_max, size=n)
    np.fill_diagonal(a, offdiag_row_sums(a) + slack)
    return validate_ddp(a, require_symmetric=True)


# -- definiteness ------------------------------------------------------------------------


def is_positive_definite(t: DdpMatrix) -> bool:
    """Cholesky with a pivot floor of n * eps * max(diag)."""
    if not t.symmetric:
        i, j = np.argwhere(t.entries != t.entries.T)[0]
        raise NotSymmetric(i + 1, j + 1)
    try:
        chol = sla.cholesky(t.entries, lower=True, check_finite=False)
    except np.linalg.LinAlgError:
        return False
    floor = t.n * np.finfo(np.float64).eps * float(t.diag.max())
    return bool(np.min(np.diagonal(chol) ** 2) > floor)
