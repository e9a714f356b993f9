"""Shared builders for the test suite.

Random profiles are drawn inside the even unimodal nonnegative cone by
construction (sorted magnitudes mirrored around the centre), so cone
invariance tests exercise the operators, not the generator.
"""

from __future__ import annotations

import numpy as np

from fpuwaves import Profile


def random_cone_profile(grid, rng, scale: float = 1.0) -> Profile:
    """Even, unimodal, nonnegative profile with random cell values."""
    half = np.sort(rng.random(grid.n_cells // 2) * scale)[::-1]
    return Profile(grid, np.concatenate([half[::-1], half]))


def random_profile(grid, rng, scale: float = 1.0) -> Profile:
    """Unconstrained random profile, zero-mean-ish, for adjointness checks."""
    return Profile(grid, rng.standard_normal(grid.n_cells) * scale)
