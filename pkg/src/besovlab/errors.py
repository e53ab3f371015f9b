"""Exception types shared across the package."""


class BesovLabError(Exception):
    """Base class for all package-specific errors."""


class GridMismatchError(BesovLabError, ValueError):
    """Two objects that must live on the same grid do not."""


class ConfigurationError(BesovLabError, ValueError):
    """A grid/cutoff/family configuration violates a stated tolerance."""


class UnsupportedIndexError(BesovLabError, ValueError):
    """Besov index outside the supported range (e.g. r = inf)."""


class ResourceCapError(BesovLabError, RuntimeError):
    """A recommended grid would exceed the configured size cap."""

    def __init__(self, message, limiting_n=None):
        super().__init__(message)
        self.limiting_n = limiting_n


class BlowUpError(BesovLabError, RuntimeError):
    """Integration aborted on blow-up indicators (NaN/overflow or sup-norm growth)."""

    def __init__(self, message, last_good_time):
        super().__init__(message)
        self.last_good_time = last_good_time


class ResolutionError(BesovLabError, RuntimeError):
    """Spectral energy reached the top third of the resolved modes."""
