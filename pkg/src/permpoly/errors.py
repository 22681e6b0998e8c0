"""Exception hierarchy for permpoly."""


class PermPolyError(Exception):
    """Base exception for permpoly errors."""

    def __init__(self, message: str, condition: str | None = None):
        """Initialize the exception.

        Args:
            message: Error message
            condition: Tag of the theorem condition involved, if any
        """
        super().__init__(message)
        self.condition = condition


class FieldDomainError(PermPolyError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class DegenerateElementError(FieldDomainError):
    """An element lies in the subfield where a decomposition needs it outside."""


class FieldMismatchError(FieldDomainError):
    """Polynomials or elements from different fields were combined."""


class ResourceGuardError(PermPolyError):
    """An explicit size guard was exceeded."""
