"""Uniform cell grids and the profiles that live on them.

A profile W is stored as its values on the cell centres
``phi_i = -L + (i + 1/2) h`` with spacing ``h = 1/(2M)``, i.e. as the
piecewise constant function taking value ``W_i`` on cell ``i``.  Two
facts make this representation the backbone of the whole package:

* ``h`` divides 1/2 exactly, so half-unit shifts map cell centres to
  cell centres and the unit averaging window always splits exactly two
  boundary cells in half;
* integrals of piecewise constant functions are plain weighted sums, so
  the midpoint quadrature used everywhere is exact on the stored class.

Periodic grids identify ``phi = -L`` with ``phi = L``; line grids treat
the stored window as a truncation of the real line and extend by zero.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import CommensurabilityError, DomainTooSmallError, GridMismatchError

PERIODIC = "periodic"
LINE = "line"

# Cone membership is decided up to rounding noise, scaled by max|W|.
CONE_RTOL = 1e-12

# Slack when matching grid geometry that was reconstructed from floats.
_GEOM_TOL = 1e-9


@dataclass(frozen=True)
class Grid:
    """Uniform midpoint grid on [-L, L].

    ``cells_per_unit`` is 2M, the number of cells that tile one phase
    unit; it is kept even so that a half unit is a whole number of cells.
    """

    half_length: float
    cells_per_unit: int
    mode: str = PERIODIC

    @property
    def h(self) -> float:
        return 1.0 / self.cells_per_unit

    @property
    def half_window_cells(self) -> int:
        """M, the number of cells covered by a half-unit shift."""
        return self.cells_per_unit // 2

    @property
    def n_cells(self) -> int:
        return int(round(2.0 * self.half_length * self.cells_per_unit))

    @property
    def periodic(self) -> bool:
        return self.mode == PERIODIC

    def centers(self) -> np.ndarray:
        n = self.n_cells
        return -self.half_length + (np.arange(n) + 0.5) * self.h


def make_grid(half_length: float, cells_half_unit: int, mode: str = PERIODIC) -> Grid:
    """Build a grid with M = ``cells_half_unit`` cells per half unit.

    Rejects geometry where the cells do not tile [-L, L] exactly, since
    every exactness statement in this package hangs on that.
    """
    if mode not in (PERIODIC, LINE):
        raise ValueError(f"unknown grid mode {mode!r}")
    m = int(cells_half_unit)
    if m < 1 or m != cells_half_unit:
        raise ValueError("cells_half_unit must be a positive integer")
    if not half_length > 0:
        raise ValueError("half_length must be positive")
    n_exact = 4.0 * half_length * m
    if abs(n_exact - round(n_exact)) > _GEOM_TOL or round(n_exact) < 1:
        raise CommensurabilityError(
            f"2L = {2 * half_length} is not an integer multiple of h = 1/{2 * m}"
        )
    return Grid(half_length=float(half_length), cells_per_unit=2 * m, mode=mode)


@dataclass(frozen=True)
class Profile:
    """Immutable samples on the cells of a grid."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.samples, dtype=float)
        if arr.shape != (self.grid.n_cells,):
            raise GridMismatchError(
                f"expected {self.grid.n_cells} samples, got shape {arr.shape}"
            )
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    def with_samples(self, samples: np.ndarray) -> "Profile":
        return Profile(self.grid, samples)


@dataclass(frozen=True)
class ConeFlags:
    even: bool
    unimodal: bool
    nonnegative: bool


def sample_function(grid: Grid, fn: Callable[[np.ndarray], np.ndarray]) -> Profile:
    """Profile whose cell values are ``fn`` evaluated at the centres."""
    return Profile(grid, np.asarray(fn(grid.centers()), dtype=float))


def zeros(grid: Grid) -> Profile:
    return Profile(grid, np.zeros(grid.n_cells))


def inner(a: Profile, b: Profile) -> float:
    _same_grid(a, b)
    return float(a.grid.h * np.dot(a.samples, b.samples))


def norm_half_sq(w: Profile) -> float:
    """Half the squared L2 norm, the conserved quantity of the iteration."""
    return float(0.5 * w.grid.h * np.dot(w.samples, w.samples))


def l2_norm(w: Profile) -> float:
    # sqrt of the summed square keeps exact values (1 for the unit
    # indicator) exact; sqrt(h) * norm would round twice.
    return math.sqrt(w.grid.h * float(np.dot(w.samples, w.samples)))


def l2_distance(a: Profile, b: Profile) -> float:
    _same_grid(a, b)
    d = a.samples - b.samples
    return math.sqrt(a.grid.h * float(np.dot(d, d)))


def sup_norm(w: Profile) -> float:
    return float(np.max(np.abs(w.samples))) if w.samples.size else 0.0


def _cone_tol(s: np.ndarray) -> float:
    scale = float(np.max(np.abs(s))) if s.size else 0.0
    return CONE_RTOL * max(scale, 1e-300)


def is_even(w: Profile) -> bool:
    s = w.samples
    return bool(np.max(np.abs(s - s[::-1]), initial=0.0) <= _cone_tol(s))


def is_unimodal(w: Profile) -> bool:
    """Non-decreasing up to the centre, non-increasing after it."""
    s = w.samples
    n = s.size
    if n < 3:
        return True
    tol = _cone_tol(s)
    left = s[: (n + 1) // 2]
    right = s[n // 2 :]
    ok_left = bool(np.min(np.diff(left), initial=0.0) >= -tol)
    ok_right = bool(np.max(np.diff(right), initial=0.0) <= tol)
    return ok_left and ok_right


def is_nonnegative(w: Profile) -> bool:
    return bool(np.min(w.samples, initial=0.0) >= -_cone_tol(w.samples))


def cone_flags(w: Profile) -> ConeFlags:
    return ConeFlags(even=is_even(w), unimodal=is_unimodal(w), nonnegative=is_nonnegative(w))


def make_wcl(grid: Grid) -> Profile:
    """Indicator of [-1/2, 1/2], the completely localised limit profile.

    Its unit average is the tent function max(1 - |phi|, 0) and half its
    squared norm is exactly 1/2; both identities are exact on any grid
    because the jumps sit on cell edges.
    """
    if 2.0 * grid.half_length < 1.0 - _GEOM_TOL:
        raise DomainTooSmallError("indicator of width 1 needs 2L >= 1")
    return Profile(grid, np.where(np.abs(grid.centers()) < 0.5, 1.0, 0.0))


def make_harmonic_sequence(grid: Grid, n: int, gamma: float) -> Profile:
    """Cosine bump of half-width ``n`` carrying half-squared-norm ``gamma``.

    The profile is sqrt(2 gamma / n) cos(pi phi / (2 n)) on |phi| <= n and
    zero outside.  The family approaches, without attaining, the harmonic
    energy ceiling beta * gamma as n grows.
    """
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    if grid.half_length < n + 1 - _GEOM_TOL:
        raise DomainTooSmallError(f"need L >= n + 1 = {n + 1}, have L = {grid.half_length}")
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    phi = grid.centers()
    amp = np.sqrt(2.0 * gamma / n)
    vals = np.where(np.abs(phi) <= n, amp * np.cos(np.pi * phi / (2.0 * n)), 0.0)
    return Profile(grid, vals)


def embed(w: Profile, target: Grid) -> Profile:
    """Copy ``w`` onto a wider grid, extending by zero outside [-L, L].

    Cell centres must line up exactly: same spacing, and the widening
    must be a whole number of cells.  The L2 norm is preserved exactly.
    """
    src = w.grid
    if target.cells_per_unit != src.cells_per_unit:
        raise GridMismatchError("embedding requires identical cell spacing")
    if target.half_length < src.half_length - _GEOM_TOL:
        raise GridMismatchError("target grid must cover the source domain")
    shift_exact = (target.half_length - src.half_length) * src.cells_per_unit
    shift = int(round(shift_exact))
    if abs(shift_exact - shift) > _GEOM_TOL:
        raise GridMismatchError("domain widening is not a whole number of cells")
    out = np.zeros(target.n_cells)
    out[shift : shift + src.n_cells] = w.samples
    return Profile(target, out)


def save_profile(w: Profile, path: str | Path) -> None:
    """Write samples as CSV (phi, w) plus a JSON sidecar with the geometry."""
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["phi", "w"])
        for phi, val in zip(w.grid.centers(), w.samples):
            writer.writerow([f"{phi:.17g}", f"{val:.17g}"])
    meta = {
        "L": w.grid.half_length,
        "M": w.grid.half_window_cells,
        "mode": w.grid.mode,
    }
    path.with_suffix(".json").write_text(json.dumps(meta, indent=2) + "\n")


def load_profile(path: str | Path) -> Profile:
    path = Path(path)
    meta = json.loads(path.with_suffix(".json").read_text())
    grid = make_grid(meta["L"], meta["M"], meta["mode"])
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    vals = np.array([float(r["w"]) for r in rows])
    return Profile(grid, vals)


def _same_grid(a: Profile, b: Profile) -> None:
    if a.grid != b.grid:
        raise GridMismatchError("profiles live on different grids")
