"""Exception hierarchy shared by all quatreg modules."""


class QuatRegError(Exception):
    """Base class for all quatreg errors."""


class OnRealAxis(QuatRegError):
    """Operation needs a nonzero imaginary part, but the point sits on the real axis."""


class ZeroDivisor(QuatRegError):
    """Multiplicative inverse of a (numerically) zero quaternion."""


class DegenerateChart(QuatRegError):
    """Spherical chart is singular here (sin beta below the configured floor)."""


class DomainError(QuatRegError):
    """Point lies outside the domain of the function being evaluated."""


class OrderTooHigh(QuatRegError):
    """Requested jet order exceeds the supported maximum."""


class BasisMismatch(QuatRegError):
    """Jet operands do not share the same order/variable basis."""


class IndexTooDeep(QuatRegError):
    """Multi-index exceeds the jet's truncation order."""


class TouchesRealAxis(QuatRegError):
    """Hypersurface (or its interior) intersects the real axis where it must not."""


class UnknownFunction(QuatRegError):
    """Catalog lookup with an unrecognized function name."""


class BadParams(QuatRegError):
    """Catalog lookup with malformed parameters."""


class ConfigError(QuatRegError):
    """Suite configuration could not be parsed or validated."""
