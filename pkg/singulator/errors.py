"""
Exception hierarchy shared by the library and the CLI.

Every exception carries an ``exit_code``; the library only raises, the CLI
maps the code to the process exit status.
"""

from typing import Optional


class SingulatorError(Exception):
    """Base class for all errors raised by singulator"""

    exit_code = 5


# ---------- Input errors (exit 2) ----------

class InputError(SingulatorError):
    exit_code = 2


class PolynomialSyntaxError(InputError):
    """Malformed polynomial expression"""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownVariableError(PolynomialSyntaxError):
    """Identifier (or variable argument) that is not a declared variable"""

    def __init__(self, name: str, position: Optional[int] = None):
        self.name = name
        super().__init__(f"unknown variable '{name}'", position)


class ExponentError(PolynomialSyntaxError):
    """Negative or non-integer exponent"""


class VariableMismatchError(InputError):
    """Operands live over incompatible variable lists"""


class FamilySpecError(InputError):
    pass


class CoincidentPointsError(InputError):
    pass


# ---------- Singularity errors ----------

class SingularityError(SingulatorError):
    """The input violates a precondition on the singularity itself"""

    exit_code = 2


class NonIsolatedSingularityError(SingularityError):
    exit_code = 3


class ResolutionError(SingulatorError):
    """A blowup center is not a rational point"""

    exit_code = 4

    def __init__(self, message: str, center_polynomial: Optional[str] = None):
        self.center_polynomial = center_polynomial
        if center_polynomial:
            message = f"{message} (center cluster defined by {center_polynomial})"
        super().__init__(message)


# ---------- Internal / precondition errors (exit 5) ----------

class InconsistencyError(SingulatorError):
    """Two computation paths disagree; signals a bug"""


class NotSeparatingError(SingulatorError):
    pass


class WeightError(SingulatorError):
    pass


class DegenerateCrossingError(SingulatorError):
    pass


class PathMismatchError(SingulatorError):
    pass


class UnknownDivisorError(SingulatorError):
    exit_code = 2
