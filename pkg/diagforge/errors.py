"""This file contains the exception hierarchy shared by all diagforge packages."""


class DiagforgeError(Exception):
    """Base class for every error raised on purpose by diagforge."""


class FieldMismatchError(DiagforgeError, ValueError):
    """Raised when two field elements from different number fields are combined."""


class NotOnCurveError(DiagforgeError, ValueError):
    """Raised when a point does not satisfy the equation of the curve it is used with."""


class SingularCurveError(DiagforgeError, ValueError):
    """Raised for singular cubics, non-squarefree quartics, degenerate pencils and degenerate conics."""


class IndeterminateError(DiagforgeError, ArithmeticError):
    """Raised when a birational map is evaluated on its exceptional locus."""


class InadmissibleParameterError(DiagforgeError, ValueError):
    """Raised when a family is instantiated with parameters violating its admissibility predicate."""

    def __init__(self, family: str, parameter: str, predicate: str):
        """Stores the family id, the offending parameter name and the violated predicate."""
        self.family = family
        self.parameter = parameter
        self.predicate = predicate
        super().__init__(f"family {family}: parameter {parameter} violates {predicate}")


class UnknownFamilyError(DiagforgeError, KeyError):
    """Raised for family ids that are not registered."""

    def __str__(self) -> str:
        """KeyError quotes its argument, we want the plain message."""
        return str(self.args[0]) if self.args else ""


class UnknownFixtureError(DiagforgeError, KeyError):
    """Raised for fixture ids missing from the corpus."""

    def __str__(self) -> str:
        """KeyError quotes its argument, we want the plain message."""
        return str(self.args[0]) if self.args else ""


class FixtureFormatError(DiagforgeError, ValueError):
    """Raised when a fixture file cannot be parsed."""

    def __init__(self, source: str, line: int, message: str):
        """Stores where parsing failed."""
        self.source = source
        self.line = line
        super().__init__(f"{source}:{line}: {message}")


class TrivialPointError(DiagforgeError, ValueError):
    """Raised when a solution has two or more zero coordinates."""
