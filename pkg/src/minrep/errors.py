"""Exception types shared across the package."""


class MinrepError(Exception):
    """Base class for all package errors."""


class HypothesisViolated(MinrepError, ValueError):
    pass


class NonIntegralB(MinrepError, ValueError):
    pass


class DeltaUndefined(MinrepError, ValueError):
    pass


class PoleInFormula(MinrepError, ArithmeticError):
    pass


class ZeroLambda(MinrepError, ZeroDivisionError):
    pass


class SignUndefined(MinrepError, ValueError):
    pass


class NoConvergence(MinrepError, ArithmeticError):
    pass


class PoleC(MinrepError, ValueError):
    pass


class ArgumentNearOne(MinrepError, ValueError):
    pass


class WindowTooNoisy(MinrepError, ArithmeticError):
    pass


class NotOnSphere(MinrepError, ValueError):
    pass


class NotOnHyperboloid(MinrepError, ValueError):
    pass


class SignatureMismatch(MinrepError, ValueError):
    pass


class NotInRegion(MinrepError, ValueError):
    pass


class TangencyViolated(MinrepError, ValueError):
    pass


class ChartMismatch(MinrepError, ValueError):
    pass


class NotTabulated(MinrepError, KeyError):
    pass


class ToleranceNotMet(MinrepError, ArithmeticError):
    pass


class TruncationInsufficient(MinrepError, ArithmeticError):
    pass


class NotInKernel(MinrepError, ValueError):
    pass


class NotInMPlus(NotInRegion):
    pass


class NotInMMinus(NotInRegion):
    pass
