"""Base exception shared by every ginlex module."""


class GinlexError(Exception):
    """Raised when a computation cannot produce a trustworthy answer."""

    def __init__(self, reason: str = ""):
        self.reason = reason
        super().__init__(reason)
