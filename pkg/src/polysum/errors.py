"""Shared exception types."""


class SearchExhausted(RuntimeError):
    """An exhaustive search came up empty where existence is guaranteed.

    Raising this always indicates an implementation bug, never bad input.
    """


class PipelineFailure(RuntimeError):
    """A witness pipeline step could not be applied.

    Carries the identifier of the failing step; like SearchExhausted this
    signals a bug, since the construction is guaranteed to go through.
    """

    def __init__(self, step: str, detail: str = ""):
        self.step = step
        self.detail = detail
        super().__init__(f"{step}: {detail}" if detail else step)


class CertificateError(ValueError):
    """A certificate document is malformed.  `where` locates the offending field."""

    def __init__(self, where: str, detail: str):
        self.where = where
        self.detail = detail
        super().__init__(f"{where}: {detail}")
