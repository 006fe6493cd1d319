"""Exception hierarchy.

Errors split into two families so the command line can map them to exit
codes: :class:`UsageError` (bad request, exit 1) and :class:`DataError`
(inputs or computation could not support the request, exit 2).
"""


class DefsieveError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(DefsieveError, ValueError):
    pass


class DataError(DefsieveError):
    pass


class UnsupportedWeight(UsageError):
    def __init__(self, k, allowed=None):
        self.k = k
        msg = f"unsupported weight k={k}"
        if allowed:
            msg += f" (supported: {', '.join(map(str, sorted(allowed)))})"
        super().__init__(msg)


class NonIntegralCoefficient(UsageError):
    pass


class PrimalityUnknown(DataError):
    """Input too large for the deterministic Miller-Rabin witness set."""


class BudgetExceeded(DataError):
    def __init__(self, cofactor, effort):
        self.cofactor = cofactor
        self.effort = effort
        super().__init__(f"cofactor {cofactor} resisted factoring with effort {effort}")


class OutOfPrecision(DataError, IndexError):
    def __init__(self, n, precision):
        self.n = n
        self.precision = precision
        super().__init__(f"coefficient {n} requested from series known to precision {precision}")


class InsufficientPrecision(DataError):
    pass


class InsufficientData(DataError):
    def __init__(self, message, p=None):
        self.p = p
        super().__init__(message)


class DetectionUnstable(DataError):
    pass


class NotApplicable(DataError):
    pass


class DegenerateScreen(DataError):
    def __init__(self, p):
        self.p = p
        super().__init__(f"screen integer vanishes at p={p}; eigenvalue data is probably wrong")


class ParseError(DataError):
    def __init__(self, message, line, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class MissingPrime(DataError):
    def __init__(self, p):
        self.p = p
        super().__init__(f"missing eigenvalue row for prime {p}")


class NonPrimeIndex(DataError):
    def __init__(self, n, line=None):
        self.n = n
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"row index {n} is not prime{where}")
