"""Averaged potential energy and its gradient.

The functional is P(W) = integral of Phi(A W), with A one of the window
averages.  Because A is self-adjoint in the cell inner product, the
gradient of the discrete functional is exactly A Phi'(A W); no
quadrature mismatch separates the energy from its gradient, which is
what makes the improvement iteration monotone to rounding accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .averaging import AvgOperator, apply_avg
from .errors import RadiusExceededError
from .grid import Profile, inner, norm_half_sq
from .potentials import Potential, validate_potential

# Relative slack on the radius guard; iterates sit on the sphere up to rounding.
_RADIUS_SLACK = 1e-10


@dataclass(frozen=True)
class EnergyContext:
    """A potential bound to an operator and a certified radius.

    Construction validates normalisation and convexity of the potential
    on |r| <= sqrt(2 gamma_max); energies of profiles outside that ball
    are refused rather than clamped.
    """

    potential: Potential
    op: AvgOperator
    gamma_max: float

    def __post_init__(self) -> None:
        if not self.gamma_max > 0:
            raise ValueError("gamma_max must be positive")
        validate_potential(self.potential, self.gamma_max)

    @property
    def grid(self):
        return self.op.grid

    @property
    def radius(self) -> float:
        return math.sqrt(2.0 * self.gamma_max)


def _check_radius(ctx: EnergyContext, w: Profile) -> None:
    half = norm_half_sq(w)
    if half > ctx.gamma_max * (1.0 + _RADIUS_SLACK):
        raise RadiusExceededError(
            f"profile has half-norm {half:g}, certified only up to {ctx.gamma_max:g}"
        )


def potential_energy(ctx: EnergyContext, w: Profile) -> float:
    """P(W), the cell quadrature of Phi(A W); nonnegative by convexity."""
    _check_radius(ctx, w)
    avg = apply_avg(ctx.op, w)
    vals = np.asarray(ctx.potential.phi(avg.samples), dtype=float)
    return float(ctx.grid.h * np.sum(vals))


def harmonic_energy(ctx: EnergyContext, w: Profile) -> float:
    """The quadratic part (beta / 2) ||A W||^2 of the energy."""
    _check_radius(ctx, w)
    avg = apply_avg(ctx.op, w)
    return float(0.5 * ctx.potential.beta * ctx.grid.h * np.dot(avg.samples, avg.samples))


def gradient(ctx: EnergyContext, w: Profile) -> Profile:
    """The L2 gradient A Phi'(A W) of the discrete functional."""
    _check_radius(ctx, w)
    avg = apply_avg(ctx.op, w)
    slope = avg.with_samples(np.asarray(ctx.potential.dphi(avg.samples), dtype=float))
    return apply_avg(ctx.op, slope)


def gradient_pairing_check(ctx: EnergyContext, w: Profile) -> tuple[float, float]:
    """Return (<dP(W), W>, 2 P(W)).

    For super-quadratic potentials the first entry dominates the second;
    the pair is returned rather than the verdict so callers can assert
    the inequality at their own tolerance.
    """
    return inner(gradient(ctx, w), w), 2.0 * potential_energy(ctx, w)


__all__ = [
    "EnergyContext",
    "potential_energy",
    "harmonic_energy",
    "gradient",
    "gradient_pairing_check",
]
