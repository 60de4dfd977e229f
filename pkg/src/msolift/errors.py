class MsoliftError(Exception):
    """Base class for every error raised by msolift."""


class DomainError(MsoliftError, ValueError):
    """Input outside the domain of an operation (unknown id, element outside the universe)."""


class ContractError(MsoliftError):
    """A precondition or interface contract does not hold."""


class CapacityError(MsoliftError):
    """A configured cap would be exceeded."""

    def __init__(self, message: str, cap: int | None = None):
        super().__init__(message)
        self.cap = cap


class FormulaSyntaxError(DomainError):
    """Formula text does not conform to the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EvaluationError(ContractError):
    """Unbound variable or order atom evaluated without an order."""


class ConfigError(MsoliftError):
    """Invalid configuration value."""
