"""Exception hierarchy shared by every layer of the toolkit."""


class WeakrelError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(WeakrelError, ValueError):
    """Operands do not live on the same carrier/universe, or violate a precondition."""


class ValidationError(WeakrelError, ValueError):
    """Invalid input data. ``kind`` names the offending component (order, E, alpha, ...)."""

    def __init__(self, kind, message):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.message = message


class ResourceError(WeakrelError, RuntimeError):
    """A size cap or search budget was exceeded."""

    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class EmptyRelationError(WeakrelError, ValueError):
    """A member was requested from a relation that has none."""


class ContractError(WeakrelError, ValueError):
    """A caller handed in data that violates an operation's precondition."""


class WitnessSearchError(WeakrelError, RuntimeError):
    """No composition witness was found within the search budget."""
