class HochschildError(Exception):
    pass


class UsageError(HochschildError, ValueError):
    """Bad arguments: mismatched objects, out-of-range slots, unknown names."""


class UnsupportedOperation(HochschildError):
    """The operation needs structure the input does not have (e.g. no trace form)."""


class TruncationError(HochschildError):
    """A computation needs degrees beyond the truncation depth."""


class ValidationError(HochschildError):
    """An identity that the input must satisfy failed."""

    def __init__(self, message, identity=None):
        super().__init__(message)
        self.identity = identity


class ResourceError(HochschildError):
    """A configured size budget would be exceeded."""
