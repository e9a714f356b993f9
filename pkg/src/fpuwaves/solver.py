"""Norm-constrained improvement iteration.

One step maps W to sqrt(2 gamma) * dP(W) / ||dP(W)||, i.e. it follows
the energy gradient back onto the sphere of half-squared-norm gamma.
Fixed points solve sigma^2 W = A Phi'(A W) with the multiplier
sigma^2 = ||dP(W)|| / sqrt(2 gamma), which is the profile equation of a
travelling wave with unit wave number and speed sigma.

Each step increases the energy by at least (m / 2) ||A W_new - A W||^2
with m the sampled infimum of Phi'' on the working radius, so the
energy is a strict Lyapunov function: the iteration cannot cycle, and
the two-part stopping rule below (iterate distance plus energy
increment) certifies a fixed point.  Evenness, unimodality and (for the
plain window average) nonnegativity are preserved exactly, so cone
membership is monitored, not enforced.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .energy import EnergyContext
from .errors import SeedDescriptorError, TrivialMinimiserError, ZeroGradientError
from .averaging import apply_avg
from .grid import (
    Grid,
    Profile,
    is_even,
    is_nonnegative,
    is_unimodal,
    l2_norm,
    norm_half_sq,
)
from .potentials import monotonicity_constant

CONE_EVEN_UNIMODAL = "U"
CONE_EVEN_UNIMODAL_NONNEG = "UN"

_TINY = 1e-300


@dataclass(frozen=True)
class SolverConfig:
    """Iteration parameters; defaults suit the desk-scale experiments."""

    gamma: float
    cone: str = CONE_EVEN_UNIMODAL_NONNEG
    max_iter: int = 100_000
    tol_fp: float = 1e-10
    tol_energy: float = 1e-13
    seed_profile: str = "cosine_bump"
    tail_tol: float = 1e-6
    track_monotonicity: bool = True

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if self.cone not in (CONE_EVEN_UNIMODAL, CONE_EVEN_UNIMODAL_NONNEG):
            raise ValueError(f"unknown cone {self.cone!r}")


@dataclass
class WaveResult:
    """Outcome of a run; ``profile`` is the last certified iterate.

    ``residual`` is the fixed-point defect ||sigma^2 W - dP(W)|| scaled
    by ||dP(W)||; at a reported convergence it equals the final iterate
    distance divided by sqrt(2 gamma), so converged implies
    residual <= tol_fp.
    """

    profile: Profile
    sigma2: float
    energy: float
    residual: float
    iterations: int
    converged: bool
    energy_history: np.ndarray
    residual_history: np.ndarray
    cone_violations: int
    max_norm_drift: float
    min_improve_gap: Optional[float] = None
    tail_mass: Optional[float] = None
    truncation_suspect: bool = False
    message: str = ""


def seed(descriptor: str, grid: Grid, gamma: float, cone: str = CONE_EVEN_UNIMODAL_NONNEG) -> Profile:
    """Build a cone seed on the sphere of half-squared-norm gamma.

    Descriptors: ``cosine_bump``, ``tent``, ``wcl``, ``gaussian(width)``
    (also accepted as ``gaussian:width=...``).  The shape is clamped to
    the cone (symmetrised, sorted onto unimodal order, nonnegative part
    for cone UN) and then scaled onto the sphere.
    """
    name, params = _parse_descriptor(descriptor)
    phi = grid.centers()
    if name == "cosine_bump":
        s = np.cos(np.pi * phi / (2.0 * grid.half_length))
    elif name == "tent":
        s = 1.0 - np.abs(phi) / grid.half_length
    elif name == "wcl":
        from .grid import make_wcl

        s = make_wcl(grid).samples.copy()
    elif name == "gaussian":
        width = params.get("width", 1.0)
        if not width > 0:
            raise SeedDescriptorError("gaussian width must be positive")
        s = np.exp(-0.5 * (phi / width) ** 2)
    else:
        raise SeedDescriptorError(f"unknown seed descriptor {descriptor!r}")
    if cone == CONE_EVEN_UNIMODAL_NONNEG:
        s = np.maximum(s, 0.0)
    s = _onto_cone(s, phi)
    half = 0.5 * grid.h * float(np.dot(s, s))
    if half <= 0:
        raise SeedDescriptorError(f"seed {descriptor!r} vanishes on this grid")
    return Profile(grid, s * math.sqrt(gamma / half))


def _parse_descriptor(descriptor: str) -> tuple[str, dict]:
    d = descriptor.strip()
    m = re.fullmatch(r"([a-z_]+)\(([^)]*)\)", d)
    if m:
        name, arg = m.group(1), m.group(2).strip()
        if name != "gaussian":
            raise SeedDescriptorError(f"descriptor {descriptor!r} takes no argument")
        try:
            return name, {"width": float(arg)}
        except ValueError:
            raise SeedDescriptorError(f"bad width in {descriptor!r}") from None
    if ":" in d:
        name, _, rest = d.partition(":")
        params = {}
        for part in rest.split(","):
            key, _, val = part.partition("=")
            try:
                params[key.strip()] = float(val)
            except ValueError:
                raise SeedDescriptorError(f"bad parameter {part!r} in {descriptor!r}") from None
        return name, params
    return d, {}


def _onto_cone(s: np.ndarray, phi: np.ndarray) -> np.ndarray:
    order = np.argsort(np.abs(phi), kind="stable")
    out = np.empty_like(s)
    out[order] = np.sort(s)[::-1]
    return 0.5 * (out + out[::-1])


def improve(ctx: EnergyContext, w: Profile, gamma: float) -> Profile:
    """One improvement step; the result sits exactly on the sphere."""
    state = _Step.compute(ctx, w)
    _guard_nontrivial(state)
    return w.with_samples(math.sqrt(2.0 * gamma) / state.grad_norm * state.grad)


def residual(ctx: EnergyContext, w: Profile, sigma2: float) -> float:
    """Fixed-point defect ||sigma^2 W - dP(W)||, scaled by ||dP(W)||."""
    state = _Step.compute(ctx, w)
    h = ctx.grid.h
    defect = math.sqrt(h) * float(np.linalg.norm(sigma2 * w.samples - state.grad))
    return defect / max(math.sqrt(h) * float(np.linalg.norm(state.grad)), _TINY)


@dataclass
class _Step:
    """Averaged profile, energy and gradient of one iterate."""

    avg: np.ndarray
    energy: float
    grad: np.ndarray
    grad_norm: float

    @staticmethod
    def compute(ctx: EnergyContext, w: Profile) -> "_Step":
        h = ctx.grid.h
        avg = apply_avg(ctx.op, w).samples
        energy = float(h * np.sum(np.asarray(ctx.potential.phi(avg), dtype=float)))
        slope = Profile(ctx.grid, np.asarray(ctx.potential.dphi(avg), dtype=float))
        grad = apply_avg(ctx.op, slope).samples
        grad_norm = math.sqrt(h) * float(np.linalg.norm(grad))
        return _Step(avg=avg, energy=energy, grad=grad, grad_norm=grad_norm)


def _guard_nontrivial(state: "_Step") -> None:
    """Refuse to iterate without a direction.

    Steep flat potentials make tiny energies legitimate (|r|^100 of a
    unit-size average), so the test is on the gradient: it vanishes only
    at the flat bottom of a convex potential.
    """
    if state.grad_norm > _TINY:
        return
    if state.energy <= _TINY:
        raise TrivialMinimiserError(
            "profile sits at the trivial minimiser: zero energy and zero gradient"
        )
    raise ZeroGradientError("gradient vanished away from the trivial minimiser")


def _in_cone(w: Profile, cone: str) -> bool:
    ok = is_even(w) and is_unimodal(w)
    if cone == CONE_EVEN_UNIMODAL_NONNEG:
        ok = ok and is_nonnegative(w)
    return ok


def solve(ctx: EnergyContext, cfg: SolverConfig, seed_profile: Optional[Profile] = None) -> WaveResult:
    """Iterate the improvement step to a fixed point on the sphere.

    Stops when the iterate distance drops below tol_fp * sqrt(2 gamma)
    and the relative energy increment below tol_energy, in which case
    the *certified* iterate (the one whose defect was measured) is
    returned.  Hitting max_iter returns converged = False with the
    diagnostics intact; no exception, because non-convergence is an
    informative outcome here, not a failure of the machinery.

    On line grids the boundary mass of the result is compared against
    tail_tol * gamma; a violation marks the run truncation-suspect and
    withdraws the convergence claim, since a profile leaning on the
    artificial boundary approximates no solitary wave.
    """
    gamma = cfg.gamma
    sqrt2g = math.sqrt(2.0 * gamma)
    grid = ctx.grid

    if seed_profile is None:
        w = seed(cfg.seed_profile, grid, gamma, cfg.cone)
    else:
        if seed_profile.grid != grid:
            raise SeedDescriptorError("warm-start profile lives on the wrong grid")
        half = norm_half_sq(seed_profile)
        if half <= 0:
            raise SeedDescriptorError("warm-start profile has zero norm")
        w = seed_profile.with_samples(seed_profile.samples * math.sqrt(gamma / half))

    m_const = monotonicity_constant(ctx.potential, gamma) if cfg.track_monotonicity else None

    state = _Step.compute(ctx, w)
    _guard_nontrivial(state)

    energies = [state.energy]
    residuals: list[float] = []
    cone_violations = 0 if _in_cone(w, cfg.cone) else 1
    max_drift = abs(norm_half_sq(w) / gamma - 1.0)
    min_gap: Optional[float] = None
    h = grid.h

    converged = False
    iterations = 0
    sigma2 = state.grad_norm / sqrt2g
    dist = math.inf

    for it in range(1, cfg.max_iter + 1):
        _guard_nontrivial(state)
        sigma2 = state.grad_norm / sqrt2g
        w_next = w.with_samples(sqrt2g / state.grad_norm * state.grad)
        state_next = _Step.compute(ctx, w_next)

        dist = math.sqrt(h) * float(np.linalg.norm(w_next.samples - w.samples)) / sqrt2g
        residuals.append(dist)
        if m_const is not None:
            gain = state_next.energy - state.energy
            quad = 0.5 * m_const * h * float(
                np.dot(state_next.avg - state.avg, state_next.avg - state.avg)
            )
            gap = gain - quad
            min_gap = gap if min_gap is None else min(min_gap, gap)
        if not _in_cone(w_next, cfg.cone):
            cone_violations += 1
        max_drift = max(max_drift, abs(norm_half_sq(w_next) / gamma - 1.0))

        iterations = it
        energy_step_ok = (state_next.energy - state.energy) <= cfg.tol_energy * max(
            abs(state.energy), _TINY
        )
        if dist <= cfg.tol_fp and energy_step_ok:
            converged = True
            break

        w, state = w_next, state_next
        energies.append(state.energy)

    if not converged and state.grad_norm > 0:
        # Report the multiplier and defect of the profile actually returned.
        sigma2 = state.grad_norm / sqrt2g
        hyp = sqrt2g / state.grad_norm * state.grad
        dist = math.sqrt(h) * float(np.linalg.norm(hyp - w.samples)) / sqrt2g

    result = WaveResult(
        profile=w,
        sigma2=sigma2,
        energy=state.energy,
        residual=dist if math.isfinite(dist) else math.inf,
        iterations=iterations,
        converged=converged,
        energy_history=np.asarray(energies),
        residual_history=np.asarray(residuals),
        cone_violations=cone_violations,
        max_norm_drift=max_drift,
        min_improve_gap=min_gap,
        message="",
    )

    if grid.mode == "line":
        tail = float(h * np.sum(w.samples[np.abs(grid.centers()) > grid.half_length - 1.0] ** 2))
        result.tail_mass = tail
        if tail > cfg.tail_tol * gamma:
            result.truncation_suspect = True
            if result.converged:
                result.converged = False
                result.message = (
                    f"truncation suspect: boundary mass {tail:.3e} exceeds "
                    f"{cfg.tail_tol:g} * gamma; profile leans on the domain edge"
                )
    if not result.converged and not result.message:
        if iterations >= cfg.max_iter:
            result.message = (
                f"no fixed point within {cfg.max_iter} steps; residual stalled at {dist:.3e}"
            )
    if converged:
        result.message = result.message or "converged"
    return result


__all__ = [
    "CONE_EVEN_UNIMODAL",
    "CONE_EVEN_UNIMODAL_NONNEG",
    "SolverConfig",
    "WaveResult",
    "seed",
    "improve",
    "residual",
    "solve",
]
