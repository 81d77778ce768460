"""
Custom exceptions for qdiff-lab.

Every error raised by the library derives from QDiffLabError. The command
line front end maps them to process exit codes: malformed input is a
ParseError (exit code 2), a violated mathematical precondition is a
DomainError (exit code 3).
"""
from typing import Any, Dict, Optional


class QDiffLabError(Exception):
    """
    Base exception class for all qdiff-lab errors.

    Attributes:
        message: Human-readable error message
        exit_code: Process exit code used by the CLI
        details: Extra structured data about the failure (if available)
    """

    exit_code_default = 3

    def __init__(
        self,
        message: str,
        exit_code: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.exit_code = exit_code if exit_code is not None else self.exit_code_default
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.details:
            extra = ", ".join(f"{k}={v}" for k, v in sorted(self.details.items()))
            return f"{self.message} ({extra})"
        return self.message


class ParseError(QDiffLabError):
    """
    Raised when textual input cannot be parsed.

    This includes:
    - Malformed operator expressions
    - Unreadable coefficient files or matrices
    - Mixed operator forms in one expression
    """
    exit_code_default = 2


class UnknownCatalogEntryError(ParseError):
    """
    Raised when a catalog name or alias does not exist.

    Attributes:
        name: The requested name
    """

    def __init__(self, name: str, known: Optional[list] = None):
        self.name = name
        super().__init__(
            f"Unknown catalog entry '{name}'",
            details={"known": ",".join(known)} if known else None
        )


class DomainError(QDiffLabError, ValueError):
    """
    Raised when a mathematical precondition is violated.

    Examples: division by zero, k > n in a q-binomial, a zero input to a
    norm, an operator of the wrong form for a transform.
    """
    exit_code_default = 3


class BadReductionError(DomainError):
    """
    Raised when a value cannot be reduced modulo a cyclotomic polynomial.

    Attributes:
        modulus: Order m of the cyclotomic polynomial
        entry: Description of the offending value
    """

    def __init__(self, message: str, modulus: int, entry: Optional[str] = None):
        self.modulus = modulus
        self.entry = entry
        details = {"m": modulus}
        if entry is not None:
            details["entry"] = entry
        super().__init__(message, details=details)


class TruncationUnderflowError(DomainError):
    """
    Raised when a computation would need more known terms than available.

    Attributes:
        requested: Number of terms needed
        available: Number of terms known
    """

    def __init__(self, message: str, requested: int, available: int):
        self.requested = requested
        self.available = available
        super().__init__(message, details={"requested": requested, "available": available})


class NotInImageConeError(DomainError):
    """
    Raised by the inverse q#-Fourier transform when a coefficient has
    too high a degree in 1/z for its σ_p power.

    Attributes:
        index: The σ_p power i
        degree: The degree in 1/z of its coefficient
    """

    def __init__(self, index: int, degree: int):
        self.index = index
        self.degree = degree
        super().__init__(
            "operator is not in the image cone of the q#-Fourier transform",
            details={"index": index, "degree": degree}
        )


class HypothesisViolationError(DomainError):
    """
    Raised when an operator fails a structural hypothesis.

    Attributes:
        point: Offending point of the base orbit (if any)
        slope: Offending Newton polygon slope (if any)
    """

    def __init__(self, message: str, point: Any = None, slope: Any = None):
        self.point = point
        self.slope = slope
        details = {}
        if point is not None:
            details["point"] = point
        if slope is not None:
            details["slope"] = slope
        super().__init__(message, details=details)


class NoSolutionError(DomainError):
    """
    Raised when an exact linear system or search has no solution.
    """
    pass


class IncompatibleFormsError(DomainError):
    """
    Raised when operators of different forms, steps or variables are combined.
    """
    pass


class IncompatibleRadicalError(DomainError):
    """
    Raised when a q-power exponent is not representable in the current field.

    Attributes:
        required: Denominator the exponent needs
        field_root: Radical index r of the field
    """

    def __init__(self, message: str, required: int, field_root: int):
        self.required = required
        self.field_root = field_root
        super().__init__(message, details={"required": required, "r": field_root})
