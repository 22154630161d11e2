"""Exception hierarchy.

Matrix indices carried by exceptions are 1-based, matching how rows and
columns are reported to users on the command line.
"""


class DdinvError(Exception):
    """Base class for all package errors."""


class InvalidParams(DdinvError, ValueError):
    pass


class DomainError(DdinvError, ValueError):
    pass


class DimensionMismatch(DdinvError, ValueError):
    pass


# -- text format ---------------------------------------------------------------


class MatrixFormatError(DdinvError, ValueError):
    pass


class MalformedHeader(MatrixFormatError):
    def __init__(self, line: str | None = None):
        self.line = line
        what = "missing" if line is None else repr(line)
        super().__init__(f"MalformedHeader: expected a positive integer order, got {what}")


class RowLengthMismatch(MatrixFormatError):
    def __init__(self, row: int, expected: int, got: int):
        self.row, self.expected, self.got = row, expected, got
        super().__init__(f"RowLengthMismatch({row}): expected {expected} entries, got {got}")


class NonNumericToken(MatrixFormatError):
    def __init__(self, line: int, column: int, token: str):
        self.line, self.column, self.token = line, column, token
        super().__init__(f"NonNumericToken({line},{column}): {token!r}")


class TooFewRows(MatrixFormatError):
    def __init__(self, expected: int, got: int):
        self.expected, self.got = expected, got
        super().__init__(f"TooFewRows: expected {expected} rows, got {got}")


class TrailingData(MatrixFormatError):
    def __init__(self, line: int):
        self.line = line
        super().__init__(f"TrailingData: unexpected data on line {line}")


# -- validity of T -------------------------------------------------------------


class InvalidMatrix(DdinvError, ValueError):
    """T violates the positivity / diagonal dominance conditions."""


class OrderTooSmall(InvalidMatrix):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"OrderTooSmall: n={n}, need n >= 2 so that m is defined")


class NonPositiveEntry(InvalidMatrix):
    def __init__(self, i: int, j: int, value: float):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"NonPositiveEntry({i},{j}): t[{i},{j}] = {value!r} is not positive")


class DominanceViolated(InvalidMatrix):
    def __init__(self, i: int, row_sum: float, diag: float):
        self.i, self.row_sum, self.diag = i, row_sum, diag
        super().__init__(
            f"DominanceViolated({i}, {row_sum:.17g}, {diag:.17g}): "
            f"off-diagonal row sum exceeds the diagonal"
        )


class NotSymmetric(InvalidMatrix):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"NotSymmetric({i},{j}): t[{i},{j}] != t[{j},{i}]")


class NonFiniteEntry(InvalidMatrix):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"NonFiniteEntry({i},{j})")


# -- numerical -------------------------------------------------------------------


class SingularMatrix(DdinvError, ArithmeticError):
    pass


class NotPositiveDefinite(DdinvError, ArithmeticError):
    pass
