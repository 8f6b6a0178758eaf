"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematically supported domain."""


class PoleError(DomainError):
    """Evaluation was requested exactly at a pole."""


class RangeError(DomainError):
    """A parameter exceeds the configured numerical operating range.

    Raised instead of silently degrading accuracy (e.g. imaginary parts
    beyond the Euler-Maclaurin cap).
    """
