"""Window average operators: spectrum, adjointness, cone invariance.

The analytic anchor is the plane-wave symbol sin(rho)/rho: sampled
cosines are exact eigenvectors of the discrete operator, and the
discrete eigenvalues converge to the symbol at second order in the cell
width.  Everything else is exact algebra on piecewise constants and is
tested to rounding accuracy.
"""

from __future__ import annotations

import numpy as np
import pytest

import fpuwaves as fw
from conftest import random_cone_profile, random_profile

try:
    from hypothesis import given, settings
    from hypothesis import strategies as st

    HAVE_HYPOTHESIS = True
except ModuleNotFoundError:  # pragma: no cover
    HAVE_HYPOTHESIS = False


def test_symbol_values():
    assert fw.averaging_symbol(0.0) == 1.0
    assert fw.averaging_symbol(np.pi) == pytest.approx(0.0, abs=1e-16)
    assert fw.averaging_symbol(np.pi / 2) == pytest.approx(2.0 / np.pi, rel=1e-15)


def test_sampled_cosines_are_exact_discrete_eigenvectors():
    g = fw.make_grid(2.0, 32)
    op = fw.make_operator(fw.BAR, g)
    for m in (0, 1, 2, 3, 5):
        v = fw.Profile(g, np.cos(m * np.pi * g.centers() / g.half_length))
        av = fw.apply_avg(op, v)
        lam = fw.spectrum_probe(g, m)[0]
        np.testing.assert_allclose(av.samples, lam * v.samples, rtol=0, atol=1e-13)


def test_constant_mode_eigenvalue_exactly_one():
    g = fw.make_grid(2.0, 64)
    measured, analytic = fw.spectrum_probe(g, 0)
    assert measured == 1.0
    assert analytic == 1.0


def test_spectrum_converges_second_order():
    errs = {}
    for M in (32, 64):
        g = fw.make_grid(2.0, M)
        rows = fw.spectrum_table(g, range(9))
        errs[M] = max(r["abs_err"] for r in rows)
    assert errs[32] <= 5e-3
    assert errs[32] / errs[64] == pytest.approx(4.0, abs=0.2)


def test_bar_average_of_indicator_is_the_tent():
    # exact on the stored piecewise constant class, not merely close
    g = fw.make_grid(2.0, 64)
    op = fw.make_operator(fw.BAR, g)
    tent = np.maximum(1.0 - np.abs(g.centers()), 0.0)
    avg = fw.apply_avg(op, fw.make_wcl(g))
    np.testing.assert_allclose(avg.samples, tent, rtol=0, atol=5e-16)


def test_hat_annihilates_constants():
    g = fw.make_grid(2.0, 16)
    op = fw.make_operator(fw.HAT, g)
    c = fw.Profile(g, np.full(g.n_cells, 3.7))
    out = fw.apply_avg(op, c)
    np.testing.assert_allclose(out.samples, 0.0, atol=1e-14)


def test_hat_equals_bar_minus_mean():
    g = fw.make_grid(2.0, 16)
    rng = np.random.default_rng(2)
    w = random_profile(g, rng)
    bar = fw.apply_avg(fw.make_operator(fw.BAR, g), w).samples
    hat = fw.apply_avg(fw.make_operator(fw.HAT, g), w).samples
    mean = g.h * w.samples.sum() / (2.0 * g.half_length)
    np.testing.assert_allclose(hat, bar - mean, rtol=0, atol=1e-15)


def test_hat_requires_periodic_grid():
    g = fw.make_grid(2.0, 16, fw.LINE)
    with pytest.raises(fw.HatOperatorDomainError):
        fw.make_operator(fw.HAT, g)


def test_window_must_be_commensurable():
    g = fw.make_grid(2.0, 16)
    with pytest.raises(fw.CommensurabilityError):
        fw.make_operator(fw.BAR, g, window=1.0 / 3.0)
    with pytest.raises(fw.CommensurabilityError):
        fw.make_operator(fw.BAR, fw.make_grid(0.25, 16))  # window wider than period


def test_operator_grid_mismatch_is_refused():
    op = fw.make_operator(fw.BAR, fw.make_grid(2.0, 16))
    w = fw.zeros(fw.make_grid(2.0, 32))
    with pytest.raises(fw.CommensurabilityError):
        fw.apply_avg(op, w)


def test_adjointness_loop():
    rng = np.random.default_rng(42)
    g = fw.make_grid(2.0, 16)
    for kind in (fw.BAR, fw.HAT):
        op = fw.make_operator(kind, g)
        for _ in range(200):
            a, b = fw.adjoint_check(op, random_profile(g, rng), random_profile(g, rng))
            assert a == pytest.approx(b, rel=1e-12, abs=1e-13)


def test_adjointness_on_line_grids():
    rng = np.random.default_rng(43)
    g = fw.make_grid(3.0, 8, fw.LINE)
    op = fw.make_operator(fw.BAR, g)
    for _ in range(100):
        a, b = fw.adjoint_check(op, random_profile(g, rng), random_profile(g, rng))
        assert a == pytest.approx(b, rel=1e-12, abs=1e-13)


def test_contraction_loop():
    rng = np.random.default_rng(44)
    for mode in (fw.PERIODIC, fw.LINE):
        g = fw.make_grid(2.0, 8, mode)
        op = fw.make_operator(fw.BAR, g)
        for _ in range(200):
            w = random_profile(g, rng)
            assert fw.l2_norm(fw.apply_avg(op, w)) <= fw.l2_norm(w) * (1.0 + 1e-14)


def test_cone_invariance_loop():
    # 1000 random cone members; bar keeps all three flags, hat loses
    # nonnegativity but keeps evenness and unimodality
    rng = np.random.default_rng(45)
    g = fw.make_grid(2.0, 8)
    bar = fw.make_operator(fw.BAR, g)
    hat = fw.make_operator(fw.HAT, g)
    for _ in range(1000):
        w = random_cone_profile(g, rng)
        fb = fw.cone_flags(fw.apply_avg(bar, w))
        assert fb.even and fb.unimodal and fb.nonnegative
        fh = fw.cone_flags(fw.apply_avg(hat, w))
        assert fh.even and fh.unimodal


def test_cone_invariance_on_line_grids():
    rng = np.random.default_rng(46)
    g = fw.make_grid(3.0, 8, fw.LINE)
    bar = fw.make_operator(fw.BAR, g)
    for _ in range(300):
        f = fw.cone_flags(fw.apply_avg(bar, random_cone_profile(g, rng)))
        assert f.even and f.unimodal and f.nonnegative


def test_average_at_edges_matches_exact_tent():
    g = fw.make_grid(2.0, 32)
    op = fw.make_operator(fw.BAR, g)
    edges = -g.half_length + g.h * np.arange(g.n_cells)
    vals = fw.average_at_edges(op, fw.make_wcl(g))
    np.testing.assert_allclose(vals, np.maximum(1.0 - np.abs(edges), 0.0), rtol=0, atol=5e-16)


def test_prefix_sum_path_agrees_with_convolution(monkeypatch):
    g = fw.make_grid(2.0, 64)
    rng = np.random.default_rng(47)
    w = random_profile(g, rng)
    direct = fw.apply_avg(fw.make_operator(fw.BAR, g), w).samples
    monkeypatch.setattr(fw.averaging, "_CONVOLVE_WORK_LIMIT", 0)
    fast = fw.apply_avg(fw.make_operator(fw.BAR, g), w).samples
    np.testing.assert_allclose(fast, direct, rtol=0, atol=1e-12)


if HAVE_HYPOTHESIS:

    @settings(max_examples=50, deadline=None)
    @given(data=st.data())
    def test_adjointness_property(data):
        g = fw.make_grid(2.0, 4)
        n = g.n_cells
        vals = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
        s1 = np.asarray(data.draw(st.lists(vals, min_size=n, max_size=n)))
        s2 = np.asarray(data.draw(st.lists(vals, min_size=n, max_size=n)))
        op = fw.make_operator(fw.BAR, g)
        a, b = fw.adjoint_check(op, fw.Profile(g, s1), fw.Profile(g, s2))
        assert a == pytest.approx(b, rel=1e-12, abs=1e-10)

    @settings(max_examples=50, deadline=None)
    @given(data=st.data())
    def test_unimodality_preserved_property(data):
        g = fw.make_grid(2.0, 4)
        half = g.n_cells // 2
        vals = st.floats(min_value=0.0, max_value=100.0, allow_nan=False)
        tail = sorted(data.draw(st.lists(vals, min_size=half, max_size=half)), reverse=True)
        s = np.asarray(tail[::-1] + tail)
        out = fw.apply_avg(fw.make_operator(fw.BAR, g), fw.Profile(g, s))
        f = fw.cone_flags(out)
        assert f.even and f.unimodal and f.nonnegative
