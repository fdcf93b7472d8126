"""Shared exception types."""


class InputError(ValueError):
    """Malformed or incompatible input data."""


class NonFiniteDimensionalError(InputError):
    """A quiver presentation admits infinitely many relation-free paths."""


class HypothesisError(RuntimeError):
    """A theorem hypothesis failed on the given instance."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalConsistencyError(RuntimeError):
    """An invariant that should hold by construction was violated."""
