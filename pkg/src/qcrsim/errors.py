"""Exception types raised by the numerical routines."""


class QcrsimError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(QcrsimError):
    """A run configuration failed validation; the message names the field path."""


class QuadratureNotConverged(QcrsimError):
    """An adaptive quadrature could not reach the requested tolerance."""


class DegenerateNetwork(QcrsimError):
    """A capacitance-network reduction hit a vanishing denominator."""


class TruncationInsufficient(QcrsimError):
    """Enlarging the Fock-space truncation moved the result by more than allowed."""


class RateUnderflow(QcrsimError):
    """A transition-rate sum underflowed the positivity floor."""


class CutoffNotConverged(QcrsimError):
    """Doubling the frequency cutoff changed the shift integral too much."""


class PVSingularityError(QcrsimError):
    """The principal-value integrand is not finite at the pole."""


class FixedPointDiverged(QcrsimError):
    """The self-consistent drive iteration failed to converge."""


class NonPhysical(QcrsimError):
    """An intermediate quantity left its physical domain (e.g. total damping <= 0)."""


class FitFailed(QcrsimError):
    """A least-squares trace fit did not converge."""


class IllConditioned(QcrsimError):
    """The trace is too shallow relative to the noise floor to fit reliably."""


class UnboundedInterval(UserWarning):
    """Confidence-interval criterion was not violated within the search range.

    Emitted as a warning; the clamped interval is still returned.
    """


class RootNotFound(QcrsimError):
    """An implicit-equation solve failed to locate a root."""
