"""Exception types shared across the package."""


class KakutaniError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(KakutaniError, ValueError):
    """An argument fell outside the domain of an operation."""


class ResourceLimitError(KakutaniError, RuntimeError):
    """A requested patch would exceed the configured tile cap."""


class NumericError(KakutaniError, RuntimeError):
    """An iterative numeric procedure failed to reach its tolerance."""
