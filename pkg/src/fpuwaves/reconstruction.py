"""From sphere profiles to distance and velocity fields.

A fixed point W with multiplier sigma^2 becomes a travelling wave
through

    R(phi - 1/2) = r_offset + (A W)(phi),      V(phi) = v_offset + omega W(phi),

with omega = sigma * k and unit wave number k = 1.  Wave trains use the
mean-free average (R then fluctuates around r_offset exactly); solitary
waves use the plain average over a background r_offset.

The half-unit shift maps cell centres to cell centres (M cells), so R
is sampled exactly on the same grid as W; no dual grid or interpolation
enters.  The (r, v) trace pairs R and V at equal phases; the half shift
between them is what opens the curve into a loop with interior (both
A W and W alone are even, so pairing those would fold the loop onto an
arc).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .averaging import BAR, HAT, apply_avg, make_operator
from .errors import CommensurabilityError, GridMismatchError, HatOperatorDomainError
from .grid import Grid, Profile, make_grid, embed
from .potentials import Potential

MEAN = "mean"
BACKGROUND = "background"


@dataclass(frozen=True)
class WaveField:
    """Travelling-wave fields sampled at cell centres.

    ``averaged`` keeps r_offset + (A W) at unshifted phases; ``r`` is the
    same data advanced by half a unit, which is where the distance field
    of the lattice actually sits.
    """

    w: Profile
    averaged: Profile
    r: Profile
    v: Profile
    k: float
    omega: float
    sigma2: float
    r_offset: float
    v_offset: float
    normalization: str


@dataclass(frozen=True)
class Trace:
    """Closed (r, v) curve of a wave field, one point per cell."""

    phi: np.ndarray
    r: np.ndarray
    v: np.ndarray
    closed: bool


def reconstruct(
    w: Profile,
    sigma2: float,
    offsets: tuple[float, float] = (0.0, 0.0),
    normalization: str = MEAN,
    omega_sign: int = 1,
) -> WaveField:
    """Build the travelling-wave fields for a solved profile.

    ``normalization`` picks the averaging convention: ``mean`` (wave
    trains, mean-free average, periodic grids only) or ``background``
    (solitary waves, plain average, the offset is the asymptotic
    distance).  ``omega_sign`` selects the propagation direction; both
    signs solve the lattice equations with the same distance field.
    """
    if normalization not in (MEAN, BACKGROUND):
        raise ValueError(f"unknown normalization {normalization!r}")
    if omega_sign not in (1, -1):
        raise ValueError("omega_sign must be +1 or -1")
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    if normalization == MEAN and not w.grid.periodic:
        raise HatOperatorDomainError("mean-free reconstruction needs a periodic grid")
    r_off, v_off = offsets
    grid = w.grid
    m = grid.half_window_cells
    kind = HAT if normalization == MEAN else BAR

    if grid.periodic:
        avg = apply_avg(make_operator(kind, grid), w).samples
        shifted = np.roll(avg, -m)
    else:
        # Zero extension: evaluate the average half a unit beyond the rim
        # so the shifted field is exact up to the last cell.
        ext_grid = make_grid(grid.half_length + 0.5, m, mode="line")
        ext = embed(w, ext_grid)
        avg_ext = apply_avg(make_operator(BAR, ext_grid), ext).samples
        avg = avg_ext[m:-m]
        shifted = avg_ext[2 * m :]

    omega = omega_sign * math.sqrt(sigma2)
    return WaveField(
        w=w,
        averaged=Profile(grid, r_off + avg),
        r=Profile(grid, r_off + shifted),
        v=Profile(grid, v_off + omega * w.samples),
        k=1.0,
        omega=omega,
        sigma2=float(sigma2),
        r_offset=float(r_off),
        v_offset=float(v_off),
        normalization=normalization,
    )


def trace(field: WaveField) -> Trace:
    return Trace(
        phi=field.w.grid.centers(),
        r=field.r.samples.copy(),
        v=field.v.samples.copy(),
        closed=field.w.grid.periodic,
    )


def recover_shape(field: WaveField) -> Profile:
    """Invert the velocity relation; reproduces W exactly."""
    return field.v.with_samples((field.v.samples - field.v_offset) / field.omega)


def rescale_solution(w: Profile, sigma2: float, lam: float) -> tuple[Profile, float, float]:
    """Map a unit-window solution to the window 1/lam.

    Returns (profile, multiplier, window).  The profile W(phi) becomes
    lam W(lam phi) on the grid shrunk by lam (same cells, relabelled),
    the multiplier drops by lam^2 and the averaging window becomes
    1/lam; the physical wave speed is unchanged.  Exact on this grid
    class, not merely to discretisation order.
    """
    grid = w.grid
    new_cpu_exact = lam * grid.cells_per_unit
    new_cpu = int(round(new_cpu_exact))
    if abs(new_cpu_exact - new_cpu) > 1e-9 or new_cpu < 2 or new_cpu % 2:
        raise CommensurabilityError(
            f"lambda = {lam} does not map {grid.cells_per_unit} cells per unit to an even count"
        )
    new_grid = Grid(
        half_length=grid.half_length / lam, cells_per_unit=new_cpu, mode=grid.mode
    )
    return Profile(new_grid, lam * w.samples), sigma2 / lam**2, 1.0 / lam


def rescale_field(field: WaveField, lam: float) -> WaveField:
    """Rescaled wave field: same samples, relabelled grid, k -> k/lam."""
    w_new, sigma2_new, window = rescale_solution(field.w, field.sigma2, lam)
    g = w_new.grid
    return WaveField(
        w=w_new,
        averaged=Profile(g, field.averaged.samples.copy()),
        r=Profile(g, field.r.samples.copy()),
        v=Profile(g, field.v.samples.copy()),
        k=field.k / lam,
        omega=field.omega / lam,
        sigma2=sigma2_new,
        r_offset=field.r_offset,
        v_offset=field.v_offset,
        normalization=field.normalization,
    )


def equation_residual(field: WaveField, potential: Potential) -> float:
    """Defect of the advance-delay system on the reconstructed pair.

    Checks omega R' = V(phi + k) - V(phi) and
    omega V' = Phi'(R(phi)) - Phi'(R(phi - k)) with central difference
    quotients and exact unit shifts (k / h cells).  Second order in h
    for smooth profiles because of the central quotients.
    """
    grid = field.w.grid
    h = grid.h
    shift = int(round(field.k / h))
    if abs(field.k / h - shift) > 1e-9:
        raise CommensurabilityError("wave number is not a whole number of cells")
    r = field.r.samples
    v = field.v.samples
    slope = np.asarray(potential.dphi(r - field.r_offset), dtype=float)

    if grid.periodic:
        dr = (np.roll(r, -1) - np.roll(r, 1)) / (2.0 * h)
        dv = (np.roll(v, -1) - np.roll(v, 1)) / (2.0 * h)
        eq1 = field.omega * dr - (np.roll(v, -shift) - v)
        eq2 = field.omega * dv - (slope - np.roll(slope, shift))
        return float(max(np.max(np.abs(eq1)), np.max(np.abs(eq2))))

    n = r.size
    lo, hi = shift + 1, n - shift - 1
    if hi <= lo:
        raise GridMismatchError("line grid too small for the unit shift")
    idx = np.arange(lo, hi)
    dr = (r[idx + 1] - r[idx - 1]) / (2.0 * h)
    dv = (v[idx + 1] - v[idx - 1]) / (2.0 * h)
    eq1 = field.omega * dr - (v[idx + shift] - v[idx])
    eq2 = field.omega * dv - (slope[idx] - slope[idx - shift])
    return float(max(np.max(np.abs(eq1)), np.max(np.abs(eq2))))


def write_field_csv(field: WaveField, path: str | Path) -> None:
    """CSV (phi, R, V) at cell centres plus a JSON metadata sidecar."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["phi", "R", "V"])
        for phi, rr, vv in zip(field.w.grid.centers(), field.r.samples, field.v.samples):
            writer.writerow([f"{phi:.17g}", f"{rr:.17g}", f"{vv:.17g}"])
    meta = {
        "L": field.w.grid.half_length,
        "M": field.w.grid.half_window_cells,
        "mode": field.w.grid.mode,
        "k": field.k,
        "omega": field.omega,
        "sigma2": field.sigma2,
        "r_offset": field.r_offset,
        "v_offset": field.v_offset,
        "normalization": field.normalization,
    }
    path.with_suffix(".json").write_text(json.dumps(meta, indent=2) + "\n")


def write_trace_csv(tr: Trace, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["phi", "r", "v"])
        for phi, rr, vv in zip(tr.phi, tr.r, tr.v):
            writer.writerow([f"{phi:.17g}", f"{rr:.17g}", f"{vv:.17g}"])


__all__ = [
    "MEAN",
    "BACKGROUND",
    "WaveField",
    "Trace",
    "reconstruct",
    "trace",
    "recover_shape",
    "rescale_solution",
    "rescale_field",
    "equation_residual",
    "write_field_csv",
    "write_trace_csv",
]
