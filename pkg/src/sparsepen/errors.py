"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for sparsepen errors."""


class DataError(ToolkitError):
    """Raised for unusable input data: parse failures, bad shapes,
    non-finite cells, zero-variance predictors."""


class NumericError(ToolkitError):
    """Raised when a computation degenerates numerically, e.g. a lambda
    grid requested on data whose largest workable lambda is zero."""
