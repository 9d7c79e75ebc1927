"""Exception types shared across the library."""


class PreconditionError(ValueError):
    """A named precondition of an operation does not hold."""


class InstanceFormatError(ValueError):
    """An instance file or in-memory instance is malformed."""


class CapExceededError(ValueError):
    """An exhaustive-search input is larger than the desk-scale cap."""


class BudgetExhaustedError(RuntimeError):
    """A bounded search ran out of its node budget before finishing.

    Distinct from a completed search that found nothing: budget exhaustion
    says nothing about existence.
    """


class InternalInconsistencyError(RuntimeError):
    """A state that the construction guarantees impossible was reached.

    Raised instead of silently failing so that a bug in the constructive
    machinery is loud rather than masked as "no solution".
    """
