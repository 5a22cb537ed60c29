"""Exception hierarchy shared across the package."""


class BispectralError(Exception):
    """Base class for all package errors."""


# exact arithmetic
class DivisionByZero(BispectralError, ZeroDivisionError):
    pass


class InexactDivision(BispectralError, ArithmeticError):
    pass


class VariableMismatch(BispectralError, ValueError):
    pass


class PoleAtPoint(BispectralError, ValueError):
    pass


# operator algebra
class NotSymmetric(BispectralError, ValueError):
    pass


class NotInBaseAlgebra(BispectralError, ValueError):
    pass


# parsing
class ParseError(BispectralError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)
        self.position = position


class UnboundParameter(ParseError):
    pass


class ReservedSymbolMisuse(ParseError):
    pass


# contexts
class UnsupportedContext(BispectralError, ValueError):
    pass


class ContextMismatch(BispectralError, ValueError):
    pass


class NotInFourierAlgebra(BispectralError, ValueError):
    pass


# Darboux data
class DarbouxError(BispectralError, ValueError):
    pass


class NonPolynomialLeadingCoefficient(DarbouxError):
    pass


class FactorizationFails(DarbouxError):
    pass


class NotSelfAdjoint(DarbouxError):
    pass


class QMismatch(DarbouxError):
    pass


class PMismatch(DarbouxError):
    pass


# solver
class EndpointAtPole(BispectralError, ValueError):
    pass


class NotSigmaInvariant(BispectralError, ValueError):
    pass


# Grassmannian
class NotLagrangian(BispectralError, ValueError):
    pass


class NotSigmaStable(BispectralError, ValueError):
    pass


class NotConstant(BispectralError, ValueError):
    pass


class NotInKernel(BispectralError, ValueError):
    pass


class NotFormallySymmetric(BispectralError, ValueError):
    pass


class DependentKernel(BispectralError, ValueError):
    pass


class NotRationalKernel(BispectralError, ValueError):
    """The monic annihilator of V has non-rational coefficients."""
