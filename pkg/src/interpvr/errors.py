"""Exception types shared across the package."""


class InvalidSpecError(ValueError):
    """A parameter lies outside its admissible domain."""


class InsufficientDataError(ValueError):
    """A series is too short for the requested operation."""


class DegenerateSeriesError(ValueError):
    """A series has zero one-period variance, so ratios are undefined."""
