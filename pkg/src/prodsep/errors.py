"""Shared exception types."""


class CapExceeded(RuntimeError):
    """An enumeration outgrew its resource cap.

    Never a silent truncation: the message says what was being enumerated
    and how large it was allowed to get.
    """

    def __init__(self, message, limit=None):
        super().__init__(message)
        self.limit = limit


class InternalInvariantError(AssertionError):
    """A step the underlying theory guarantees has failed.

    Raising this means the implementation is wrong, not the input.
    """
