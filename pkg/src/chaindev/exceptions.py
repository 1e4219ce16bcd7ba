"""Exception classes raised by chaindev."""


class InvalidSpaceError(ValueError):
    """Raised when a dissimilarity matrix fails validation.

    The offending :class:`~chaindev.metric.ValidationReport` is kept on
    ``report`` so callers can inspect every violation.
    """

    def __init__(self, report):
        self.report = report
        first = report.violations[0] if report.violations else None
        msg = "invalid space"
        if first is not None:
            msg = f"invalid space: {first.kind} at {first.indices} ({first.detail})"
        super().__init__(msg)


class NotUltrametricError(ValueError):
    pass


class CapExceededError(ValueError):
    """Raised when a generator or truncation would exceed the leaf cap."""
