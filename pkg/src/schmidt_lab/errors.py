"""Exception types shared across the package."""

from __future__ import annotations


class NormalizationError(ValueError):
    """A state vector or coefficient set is not normalized within tolerance.

    Carries the measured deficit |norm - 1| so callers can report how far
    off the input was instead of silently renormalizing.
    """

    def __init__(self, deficit: float, what: str = "state"):
        self.deficit = float(deficit)
        self.what = what
        super().__init__(
            f"{what} is not normalized: |norm - 1| = {self.deficit:.3e}"
        )


class DegenerateDimensionError(ValueError):
    """Normalized entanglement measures are undefined for n = 1 systems.

    Every normalized formula divides by n - 1; raising beats inventing a
    value that would mask misuse.
    """

    def __init__(self, message: str = "normalized measures require n >= 2"):
        super().__init__(message)
