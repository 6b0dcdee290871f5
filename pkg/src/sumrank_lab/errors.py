"""Exception hierarchy shared by every module of the package."""


class SumRankLabError(Exception):
    """Base class for all errors raised by sumrank_lab."""


class PreconditionViolation(SumRankLabError, ValueError):
    """An operation was called outside the parameter range it is defined on."""


class BudgetExceeded(SumRankLabError):
    """An exhaustive enumeration would exceed its configured budget."""


# field-core
class NonPrimeCharacteristic(SumRankLabError, ValueError):
    pass


class EvenCharacteristic(SumRankLabError, ValueError):
    pass


class ReducibleModulus(SumRankLabError, ValueError):
    pass


class FieldMismatch(SumRankLabError, TypeError):
    pass


class DivisionByZero(SumRankLabError, ZeroDivisionError):
    pass


class ZeroPolynomial(SumRankLabError, ValueError):
    pass


class NonMonicPolynomial(SumRankLabError, ValueError):
    pass


class IndexOutOfRange(SumRankLabError, IndexError):
    pass


# matrix-fq
class DimensionMismatch(SumRankLabError, ValueError):
    pass


class SingularMatrix(SumRankLabError, ValueError):
    pass


class OrderCapExceeded(SumRankLabError):
    pass


class NotCompanionOfGivenPolynomial(SumRankLabError, ValueError):
    pass


# ortho-groups
class NotOrthogonal(SumRankLabError, ValueError):
    pass


class IdenticalGenerators(SumRankLabError, ValueError):
    pass


# rank-codes / sum-rank codes
class OrbitNotLinear(SumRankLabError):
    pass


class ShapeMismatch(SumRankLabError, ValueError):
    pass


class InvalidDistance(SumRankLabError, ValueError):
    pass


class InvalidDimension(SumRankLabError, ValueError):
    pass


class BadFirstBlock(SumRankLabError, ValueError):
    pass


class BasisSizeMismatch(SumRankLabError, ValueError):
    pass


class TooManyRows(SumRankLabError, ValueError):
    pass


class NotExtensionLinear(SumRankLabError, ValueError):
    pass


# aliases matching the names used in reports
EnumerationBudgetExceeded = BudgetExceeded
DistanceOutOfRange = InvalidDistance
RankOutOfRange = PreconditionViolation
RadiusOutOfRange = PreconditionViolation
