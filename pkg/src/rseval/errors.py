"""Exception hierarchy shared across the package."""


class RSEvalError(Exception):
    """Base class for every error raised by rseval."""


# algebra
class NotPrimePower(RSEvalError, ValueError):
    pass


class ReducibleModulus(RSEvalError, ValueError):
    pass


class DependentBasis(RSEvalError, ValueError):
    pass


class DuplicatePoint(RSEvalError, ValueError):
    pass


class ZeroModulus(RSEvalError, ZeroDivisionError):
    pass


# rscode
class LengthMismatch(RSEvalError, ValueError):
    pass


class DuplicatePosition(RSEvalError, ValueError):
    pass


class InconsistentSymbols(RSEvalError, ValueError):
    pass


# scheme machinery
class NotAScheme(RSEvalError, ValueError):
    pass


class TooLargeForExhaustive(RSEvalError, ValueError):
    pass


class MissingResponse(RSEvalError, KeyError):
    pass


class BadTripleShape(RSEvalError, ValueError):
    pass


class NotGood(RSEvalError, ValueError):
    pass


class SupportOutOfWindow(RSEvalError, ValueError):
    pass


class InsufficientFreedom(RSEvalError, ValueError):
    pass


class DimensionTooLarge(RSEvalError, ValueError):
    pass


class ParamConstraintViolated(RSEvalError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class TooManyErasures(RSEvalError, ValueError):
    pass


# bounds
class DegenerateArgument(RSEvalError, ValueError):
    pass


class NotApplicable(RSEvalError, ValueError):
    pass


# simulator
class InsufficientSurvivors(RSEvalError, RuntimeError):
    pass


class NodeUnavailable(RSEvalError, RuntimeError):
    """A failed node was asked for data."""


class CoefficientNotInBase(RSEvalError, ValueError):
    pass


# cli
class ParseError(RSEvalError, ValueError):
    def __init__(self, message, line=None, key=None):
        self.line, self.key = line, key
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class ConstraintError(RSEvalError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
