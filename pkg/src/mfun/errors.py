"""Exception types shared across the library."""


class MfunError(Exception):
    """Base class for all library errors."""


class ZeroTableError(MfunError):
    """Malformed or inconsistent zero-ordinate input."""


class AmbiguousBracketError(MfunError):
    """Two sign changes of the Hardy Z-function persist in the bracket."""

    def __init__(self, gamma, roots):
        self.gamma = gamma
        self.roots = tuple(roots)
        super().__init__(
            f"bracket around {gamma} contains two sign changes; "
            f"candidate roots {self.roots}")


class RangeError(MfunError):
    """Argument outside the range covered by the available data."""


class PrecisionError(MfunError):
    """Requested accuracy is below what the available zero table supports."""


class QuadratureError(MfunError):
    """Numerical quadrature failed to meet its error target."""
