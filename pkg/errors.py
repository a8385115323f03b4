"""Exception hierarchy shared by every qstirling module.

Identity failures found by the verification suites are NOT raised; they are
collected as report entries. Exceptions are for broken preconditions and for
arithmetic that cannot be carried out exactly.
"""


class QStirlingError(Exception):
    """Base class for all library errors (mapped to exit code 2 by the CLI)."""


class NonExactDivision(QStirlingError, ArithmeticError):
    """Laurent-polynomial division left a nonzero remainder."""


class ZeroAtNegativeExponent(QStirlingError, ZeroDivisionError):
    """Evaluation at q=0 of a polynomial carrying negative exponents."""


class NonInvertibleSeries(QStirlingError, ZeroDivisionError):
    """Power series with zero constant term has no reciprocal."""


class TruncationExceeded(QStirlingError, IndexError):
    """Coefficient requested beyond the truncation order, or mixed orders."""


class IndexOutOfTriangle(QStirlingError, IndexError):
    """Triangle index (n, k) outside 0 <= k <= n."""


class DomainError(QStirlingError, ValueError):
    """Parameter outside the admissible domain (q, z, n ...)."""


class IdentityViolation(QStirlingError, AssertionError):
    """A closed form assembled to something that cannot be a table entry."""


class ParseError(QStirlingError, ValueError):
    """Malformed rational, polynomial or table document."""
