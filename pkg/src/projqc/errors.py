class HypothesisError(ValueError):
    """A theorem's numerical hypothesis fails, so the computation is refused.

    ``bound`` names the failed inequality in plain arithmetic, e.g.
    ``"c1 < 2r (5 < 4)"``.
    """

    def __init__(self, message: str, bound: str | None = None):
        super().__init__(message)
        self.bound = bound or message


class InvariantViolation(RuntimeError):
    """Two independent computations disagreed, or an internal identity broke."""


class SpecMismatch(ValueError):
    """Operands belong to different bundles."""
