"""Exception types shared across the package."""


class PulseforgeError(Exception):
    """Base class for all pulseforge errors."""


class OutOfBoundsError(PulseforgeError, ValueError):
    """The free parameter c1 lies outside its admissible interval (cos(phi2 - phi1) would fall below -1)."""


class InvalidIndicesError(PulseforgeError, ValueError):
    """Family winding indices produce a non-positive flip angle or violate their range constraints."""


class NoConvergenceError(PulseforgeError, RuntimeError):
    """The multi-start Newton verification solver found no valid root."""


class FloorReachedError(PulseforgeError, ValueError):
    """An infidelity fell below the numerical noise floor; shrink the f range."""
