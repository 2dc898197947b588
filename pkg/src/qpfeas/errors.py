"""Exception types raised across the package."""


class QpFeasError(Exception):
    """Base class for all package errors."""


class SingularMatrix(QpFeasError, ArithmeticError):
    pass


class NotPositiveDefinite(QpFeasError, ArithmeticError):
    pass


class InconsistentRows(QpFeasError):
    """Row elimination produced ``0 = nonzero``; the equality system has no solution."""


class NumericalBreakdown(QpFeasError, RuntimeError):
    """The simplex hit its iteration cap or lost a usable basis."""


class InfeasibleQp(QpFeasError):
    """No point satisfies the (possibly sign-flipped) constraints of the QP."""


class OutOfOracleRange(QpFeasError, ValueError):
    pass


class PremiseViolated(QpFeasError, ValueError):
    pass


class NoFeasibleConfiguration(QpFeasError):
    """Every configuration visited by a search was infeasible."""


class InvalidConfiguration(QpFeasError, ValueError):
    pass
