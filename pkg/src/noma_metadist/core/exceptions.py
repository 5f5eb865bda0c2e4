"""Custom exceptions for noma-metadist.

This module defines the exception hierarchy for the package, providing clear error
messages and the numeric context needed to diagnose each failure.
"""

from collections.abc import Sequence
from typing import Any


def format_validation_error(validation_error: Any) -> str:
    """Format Pydantic validation errors into user-friendly messages.

    Args:
        validation_error: Pydantic ValidationError or error details

    Returns:
        Formatted, human-readable error message with hints
    """
    if hasattr(validation_error, "errors"):
        errors = validation_error.errors()

        messages = []
        for error in errors:
            loc = error.get("loc") or ("model",)
            field = str(loc[-1])
            error_type = error.get("type", "unknown")
            msg = error.get("msg", "Validation failed")
            input_value = error.get("input", "N/A")

            base_msg = f"Invalid parameter '{field}': {msg}"
            hint = _get_validation_hint(field, error_type, input_value)
            if hint:
                base_msg += f"\nHint: {hint}"

            messages.append(base_msg)

        return "\n".join(messages)

    return str(validation_error)


def _get_validation_hint(field: str, error_type: str, input_value: Any) -> str | None:
    """Get helpful hint for common validation errors.

    Args:
        field: Parameter name that failed validation
        error_type: Type of validation error
        input_value: The invalid input value

    Returns:
        Helpful hint string or None
    """
    if field in ("eta", "path_loss_exponent") and error_type == "greater_than":
        return "The path-loss exponent must exceed 2 so that delta = 2/eta lies in (0, 1)"

    if field == "beta_sic":
        return "The residual SIC fraction is a share of the canceled power, between 0 and 1"

    if field in ("powers", "thresholds") and error_type == "value_error":
        return "Give one value per NOMA user; powers must be positive and sum to 1"

    if error_type in ("float_type", "float_parsing"):
        return f"Expected a real number, got {type(input_value).__name__}"

    if error_type in ("int_type", "int_parsing"):
        return f"Expected integer, got {type(input_value).__name__}"

    if error_type in ("greater_than", "greater_than_equal"):
        return "Value must be positive"

    if error_type == "missing":
        return f"Parameter '{field}' is required"

    if error_type == "extra_forbidden":
        return f"'{field}' is not a recognised parameter"

    return None


class NomaMetaDistError(Exception):
    """Base exception for all noma-metadist errors.

    All custom exceptions in the package inherit from this base class, making it
    easy to catch any library error.
    """


class DomainError(NomaMetaDistError, ValueError):
    """Raised when an argument lies outside the domain of an operation.

    Examples are negative distances, a rank outside 1..N, or k > n in a binomial.
    """


class ConfigurationError(NomaMetaDistError):
    """Raised when a runtime setting (usually an environment variable) is malformed.

    Attributes:
        variable: Name of the offending setting
        value: The raw value that could not be interpreted
    """

    def __init__(self, variable: str, value: str, message: str | None = None) -> None:
        """Initialize the ConfigurationError.

        Args:
            variable: Name of the offending setting
            value: The raw value that could not be interpreted
            message: Optional custom message (default will be generated)
        """
        self.variable = variable
        self.value = value
        if message is None:
            message = f"Cannot interpret {variable}={value!r}"
        super().__init__(message)


class ParameterValidationError(NomaMetaDistError):
    """Raised when a parameter model fails Pydantic validation.

    It wraps the underlying Pydantic ValidationError to provide context about which
    object could not be constructed.

    Attributes:
        message: A human-readable error message describing the validation failure
        validation_errors: The underlying Pydantic validation error details
    """

    def __init__(self, message: str, validation_errors: Any | None = None) -> None:
        """Initialize a validation error.

        Args:
            message: A human-readable error message
            validation_errors: The underlying Pydantic ValidationError or error details
        """
        if validation_errors:
            formatted = format_validation_error(validation_errors)
            message = f"{message}\n\n{formatted}"

        super().__init__(message)
        self.message = message
        self.validation_errors = validation_errors

    def __str__(self) -> str:
        """Return a string representation of the validation error."""
        return self.message

    def __repr__(self) -> str:
        """Return a detailed representation of the validation error."""
        return (
            f"ParameterValidationError(message={self.message!r}, "
            f"validation_errors={self.validation_errors!r})"
        )


class NumericalFailureError(NomaMetaDistError):
    """Raised when a series, continued fraction or quadrature does not converge.

    The library never returns a value it could not certify to the requested
    tolerance; this error is raised instead.

    Attributes:
        routine: Name of the numerical routine that failed
        message: A human-readable error message
        detail: Optional diagnostic payload (error estimates, term counts, ...)
    """

    def __init__(self, routine: str, message: str, detail: Any | None = None) -> None:
        """Initialize a numerical failure.

        Args:
            routine: Name of the numerical routine that failed
            message: A human-readable error message
            detail: Optional diagnostic payload
        """
        super().__init__(message)
        self.routine = routine
        self.message = message
        self.detail = detail

    def __str__(self) -> str:
        """Return a string representation of the error."""
        return f"[{self.routine}] {self.message}"

    def __repr__(self) -> str:
        """Return a detailed representation of the error."""
        return (
            f"NumericalFailureError(routine={self.routine!r}, "
            f"message={self.message!r}, detail={self.detail!r})"
        )


class InfeasibleAllocationError(NomaMetaDistError):
    """Raised when an allocation leaves a non-positive power margin P̃_j.

    A non-positive margin means SIC can never decode the message of UE_j, so the
    conditional coverage probability of every UE that must decode it is zero.

    Attributes:
        rank: The 1-based rank j of the first infeasible message
        tilde_p: The full vector of effective power margins
    """

    def __init__(self, rank: int, tilde_p: Sequence[float], message: str | None = None) -> None:
        """Initialize the InfeasibleAllocationError.

        Args:
            rank: The 1-based rank of the first infeasible message
            tilde_p: The effective power margins P̃_1..P̃_N
            message: Optional custom message (default will be generated)
        """
        self.rank = rank
        self.tilde_p = tuple(tilde_p)
        if message is None:
            message = (
                f"Allocation is infeasible: effective power margin of UE_{rank} is "
                f"{self.tilde_p[rank - 1]:.6g} (must be positive). The CCP is zero."
            )
        super().__init__(message)


class InvalidMomentsError(NomaMetaDistError):
    """Raised when a moment pair cannot belong to a distribution on [0, 1].

    Attributes:
        m1: The first moment
        m2: The second moment
    """

    def __init__(self, m1: float, m2: float, message: str | None = None) -> None:
        """Initialize the InvalidMomentsError.

        Args:
            m1: The first moment
            m2: The second moment
            message: Optional custom message (default will be generated)
        """
        self.m1 = m1
        self.m2 = m2
        if message is None:
            message = (
                f"Moments (m1={m1:.12g}, m2={m2:.12g}) violate m1^2 <= m2 <= m1 <= 1 "
                f"and cannot describe a random variable on [0, 1]"
            )
        super().__init__(message)


class PlacementError(NomaMetaDistError):
    """Raised when UEs cannot be placed in the tagged Voronoi cell.

    This happens when the tagged cell is not closed inside the simulation window or
    rejection sampling exhausts its attempts. The simulator recovers by resampling
    the network.
    """


class InfeasibleTmrError(NomaMetaDistError):
    """Raised when no power split and threshold reach the threshold minimum rate.

    Attributes:
        tmr: The requested threshold minimum rate (nats/s/Hz)
        scheme: The UE placement scheme
        best_rate: The largest UE_2 rate found by the search
    """

    def __init__(
        self, tmr: float, scheme: str, best_rate: float, message: str | None = None
    ) -> None:
        """Initialize the InfeasibleTmrError.

        Args:
            tmr: The requested threshold minimum rate
            scheme: The UE placement scheme
            best_rate: The largest UE_2 rate found by the search
            message: Optional custom message (default will be generated)
        """
        self.tmr = tmr
        self.scheme = scheme
        self.best_rate = best_rate
        if message is None:
            message = (
                f"No allocation reaches TMR={tmr:.6g} for {scheme}; "
                f"the largest achievable UE_2 rate is {best_rate:.6g}"
            )
        super().__init__(message)
