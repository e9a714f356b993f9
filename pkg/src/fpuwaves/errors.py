"""Exception types shared across the package."""

from __future__ import annotations


class FpuWavesError(Exception):
    """Base class for all errors raised by this package."""


class CommensurabilityError(FpuWavesError):
    """Grid spacing does not tile the requested domain or window exactly."""


class DomainTooSmallError(FpuWavesError):
    """Requested shape does not fit on the given grid."""


class GridMismatchError(FpuWavesError):
    """Two profiles or grids that must agree do not."""


class HatOperatorDomainError(FpuWavesError):
    """The mean-free averaging operator needs a periodic domain."""


class RadiusExceededError(FpuWavesError):
    """Profile norm exceeds the radius the potential was certified on."""


class PotentialInvariantError(FpuWavesError):
    """Potential violates normalisation or convexity on the working radius."""


class UnknownPotentialError(FpuWavesError):
    """No builtin potential with that name."""


class PotentialParamsError(FpuWavesError):
    """Bad or missing parameters for a builtin potential."""


class SeedDescriptorError(FpuWavesError):
    """Seed descriptor string could not be parsed."""


class TrivialMinimiserError(FpuWavesError):
    """Iteration started at (or fell onto) a zero-energy profile."""


class ZeroGradientError(FpuWavesError):
    """Energy gradient vanished although the energy did not."""


class NotGenuinelySuperquadraticError(FpuWavesError):
    """Witness margin is not positive, so no soliton is promised."""


class PeriodError(FpuWavesError):
    """Chain length 2L is not a positive integer."""


class IntegrationUnstableError(FpuWavesError):
    """Time integration produced non-finite values."""
