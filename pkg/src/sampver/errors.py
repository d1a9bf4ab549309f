"""Exception types raised across the toolkit."""


class SampverError(Exception):
    """Base class for all toolkit errors."""


class SpecError(SampverError, ValueError):
    """A set, network or polytope description is malformed or inconsistent."""


class InputError(SampverError, ValueError):
    """Sample data or query points are unusable (empty, non-finite, unparsable)."""


class ParameterError(SampverError, ValueError):
    """A numeric parameter is outside its admissible range."""


class StateError(SampverError, RuntimeError):
    """An operation was called before the object was ready for it."""


class ConvergenceError(SampverError, RuntimeError):
    """An iterative solver exhausted its budget without converging."""


class NumericError(SampverError, ArithmeticError):
    """A computation produced a non-finite intermediate value."""

    def __init__(self, message, layer=None):
        super().__init__(message)
        self.layer = layer


class InsufficientSamplesWarning(UserWarning):
    """Fewer samples were supplied than the sample bound requires."""
