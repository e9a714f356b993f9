"""End-to-end acceptance checks, one per headline capability.

Each test prints a single summary line with its measured numbers; run
with -s to see them on success.  The eleven checks cover: the averaging
spectrum, the indicator profile, the harmonic energy ceiling, wave
train existence and supersonic speeds, monotone improvement, gradient
consistency, localisation under steepening powers, continuation to a
solitary wave, dynamical rigidity on the chain, the potential
classification table, and the absence of harmonic solitary waves.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

import fpuwaves as fw
from conftest import random_cone_profile

_TOTAL = 11


def _report(idx: int, label: str, failures: list, detail: str = "") -> None:
    state = "PASS" if not failures else "FAIL"
    extra = f" ({detail})" if detail else ""
    print(f"[{idx}/{_TOTAL}] {label}: {state}{extra}")
    assert not failures, "; ".join(failures)


@pytest.fixture(scope="module")
def cosh_family():
    """Wave trains of the exponential chain at three constraint levels."""
    runs = {}
    g = fw.make_grid(2.0, 64)
    for gamma in (0.1, 1.0, 10.0):
        ctx = fw.EnergyContext(
            potential=fw.builtin("cosh"), op=fw.make_operator(fw.BAR, g), gamma_max=gamma
        )
        runs[gamma] = fw.solve(ctx, fw.SolverConfig(gamma=gamma))
    return runs


def test_averaging_spectrum_matches_the_symbol():
    t0 = time.monotonic()
    errs = {}
    for M in (32, 64):
        g = fw.make_grid(2.0, M)
        errs[M] = max(
            abs(fw.spectrum_probe(g, m)[0] - fw.spectrum_probe(g, m)[1]) for m in range(9)
        )
    ratio = errs[32] / errs[64]
    failures = []
    if errs[32] > 5e-3:
        failures.append(f"coarse error {errs[32]:.2e} exceeds 5e-3")
    if not 3.5 < ratio < 4.5:
        failures.append(f"refinement ratio {ratio:.3f} not second order")
    if time.monotonic() - t0 > 1.0:
        failures.append("took longer than 1 s")
    _report(1, "averaging spectrum, second-order symbol error", failures,
            f"err32 {errs[32]:.2e}, ratio {ratio:.2f}")


def test_indicator_profile_is_exact_and_carries_unit_energy():
    failures = []
    for M in (4, 64, 16384):
        g = fw.make_grid(2.0, M)
        w = fw.make_wcl(g)
        if fw.norm_half_sq(w) != 0.5:
            failures.append(f"M={M}: half norm {fw.norm_half_sq(w)!r} != 0.5")
        tent = fw.sample_function(g, lambda x: np.maximum(0.0, 1.0 - np.abs(x)))
        avg = fw.apply_avg(fw.make_operator(fw.BAR, g), w)
        gap = float(np.abs(avg.samples - tent.samples).max())
        if gap > 5e-16:
            failures.append(f"M={M}: averaged indicator misses the tent by {gap:.1e}")
    g = fw.make_grid(2.0, 16384)
    w1 = fw.make_wcl(g)  # amplitude sqrt(2 gamma) = 1 at gamma = 1/2
    defects = {}
    for q in (4.0, 10.0, 100.0):
        ctx = fw.EnergyContext(
            potential=fw.builtin("homogeneous", q=q),
            op=fw.make_operator(fw.BAR, g),
            gamma_max=0.5,
        )
        defects[q] = abs(fw.potential_energy(ctx, w1) - 1.0)
        if defects[q] > 1e-6:
            failures.append(f"q={q}: witness energy off the unit value by {defects[q]:.2e}")
    _report(2, "indicator profile: exact norm, tent average, unit witness energy",
            failures, f"worst energy defect {max(defects.values()):.2e}")


def test_harmonic_energies_approach_but_never_beat_the_ceiling():
    t0 = time.monotonic()
    outcome = fw.harmonic_benchmark(1.0, 0.5, [4, 8, 16, 32])
    s = outcome.summary
    failures = []
    if not s["defects_positive"]:
        failures.append("a cosine bump reached the ceiling")
    if not s["defects_decreasing"]:
        failures.append("defects fail to decrease with n")
    if not s["ceiling_respected"]:
        failures.append("ceiling violated beyond 1e-9")
    if not -2.3 < s["fit_exponent"] < -1.7:
        failures.append(f"defect slope {s['fit_exponent']:.3f} not like n^-2")
    if time.monotonic() - t0 > 5.0:
        failures.append("took longer than 5 s")
    _report(3, "harmonic ceiling approached at rate n^-2", failures,
            f"slope {s['fit_exponent']:.3f}, smallest defect {outcome.records[-1].defect:.2e}")


def test_wave_trains_exist_and_run_supersonic(cosh_family):
    failures = []
    for gamma, res in sorted(cosh_family.items()):
        flags = fw.cone_flags(res.profile)
        if not res.converged:
            failures.append(f"gamma={gamma}: {res.message}")
        if res.residual > 1e-9:
            failures.append(f"gamma={gamma}: residual {res.residual:.2e}")
        if not res.sigma2 > 1.0:
            failures.append(f"gamma={gamma}: sigma2 {res.sigma2:.6f} not above beta")
        if not (flags.even and flags.unimodal and flags.nonnegative):
            failures.append(f"gamma={gamma}: profile left the cone")
        if res.cone_violations:
            failures.append(f"gamma={gamma}: {res.cone_violations} cone violations en route")
    sig = ", ".join(f"{g}: {r.sigma2:.4f}" for g, r in sorted(cosh_family.items()))
    _report(4, "wave trains at three constraint levels, all supersonic", failures,
            f"sigma2 {{{sig}}}")


def test_improvement_never_lowers_the_energy(cosh_family):
    failures = []
    worst = math.inf
    for gamma, res in sorted(cosh_family.items()):
        e = res.energy_history
        drops = np.min(np.diff(e) / np.maximum(np.abs(e[:-1]), 1e-300))
        worst = min(worst, res.min_improve_gap, drops)
        if res.min_improve_gap < -1e-9:
            failures.append(f"gamma={gamma}: quantified gain {res.min_improve_gap:.2e}")
        if drops < -1e-13:
            failures.append(f"gamma={gamma}: energy history dips by {drops:.2e}")
    _report(5, "energy is monotone along the iteration", failures,
            f"worst signed gap {worst:.2e}")


def test_energy_gradient_agrees_with_finite_differences():
    g = fw.make_grid(2.0, 32)
    rng = np.random.default_rng(7)
    names = [("cosh", {}), ("homogeneous", {"q": 4}), ("toda_reflected", {})]
    worst = 0.0
    failures = []
    for name, kw in names:
        ctx = fw.EnergyContext(
            potential=fw.builtin(name, **kw), op=fw.make_operator(fw.BAR, g), gamma_max=2.0
        )
        for _ in range(100):
            w = random_cone_profile(g, rng)
            d = fw.Profile(g, rng.standard_normal(g.n_cells))
            grad = fw.gradient(ctx, w)
            lhs = fw.inner(grad, d)
            eps = 1e-6
            up = fw.potential_energy(ctx, w.with_samples(w.samples + eps * d.samples))
            dn = fw.potential_energy(ctx, w.with_samples(w.samples - eps * d.samples))
            fd = (up - dn) / (2.0 * eps)
            err = abs(lhs - fd) / max(abs(fd), 1e-9)
            worst = max(worst, err)
            if err > 1e-6:
                failures.append(f"{name}: directional derivative off by {err:.2e}")
    _report(6, "gradient consistent with finite differences (300 probes)", failures,
            f"worst relative error {worst:.2e}")


def test_steepening_powers_localize_toward_the_indicator():
    t0 = time.monotonic()
    outcome = fw.localization_sweep([4.0, 6.0, 10.0, 20.0, 50.0, 100.0])
    s = outcome.summary
    failures = []
    if not s["all_converged"]:
        failures.append("a row failed to converge")
    if not s["distances_strictly_decreasing"]:
        failures.append(f"distances {s['distances']} not strictly decreasing")
    if s["dominance_margin_min"] < -1e-8:
        failures.append(f"maximiser trails the witness by {-s['dominance_margin_min']:.2e}")
    if time.monotonic() - t0 > 120.0:
        failures.append("took longer than 120 s")
    _report(7, "steepening powers: maximisers concentrate on the indicator", failures,
            f"distances {np.array2string(np.asarray(s['distances']), precision=3)}")


def test_growing_periods_continue_to_a_solitary_wave():
    t0 = time.monotonic()
    outcome = fw.continuation_to_soliton(
        fw.builtin("homogeneous", q=4), 0.5, [4.0, 8.0, 16.0, 32.0, 64.0]
    )
    s = outcome.summary
    fin = s["final"]
    failures = []
    if not s["all_stages_converged"]:
        failures.append("a periodic stage failed to converge")
    if s["right_gap_min"] < -1e-9:
        failures.append(f"extension energy beats the periodic one by {-s['right_gap_min']:.2e}")
    if not s["defects_nonincreasing"]:
        failures.append(f"stage defects {s['defects']} grow somewhere")
    if not s["embed_distances_nonincreasing"]:
        failures.append("embedded stage distances grow somewhere")
    if not fin["converged"] or outcome.final.residual > 1e-8:
        failures.append(f"final line solve: {fin['message']}")
    if not fin["supersonic"] or fin["sigma2"] <= 0:
        failures.append(f"final speed squared {fin['sigma2']:.4f} not supersonic")
    if not fin["cone_ok"]:
        failures.append("final profile left the cone")
    if fin["tail_mass"] > 1e-6 * 0.5:
        failures.append(f"tail mass {fin['tail_mass']:.2e} leans on the rim")
    if time.monotonic() - t0 > 300.0:
        failures.append("took longer than 300 s")
    _report(8, "continuation: wave trains settle into a solitary wave", failures,
            f"final sigma2 {fin['sigma2']:.6f}, last defect {s['final_defect']:.2e}")


def test_reconstructed_wave_rides_the_chain_rigidly(cosh_family):
    t0 = time.monotonic()
    res = cosh_family[10.0]
    pot = fw.builtin("cosh")
    field = fw.reconstruct(res.profile, res.sigma2, normalization=fw.BACKGROUND)
    report = fw.validate_wave(field, pot, dt=1e-4)
    failures = []
    if report["rigidity_error"] > 1e-3:
        failures.append(f"rigidity {report['rigidity_error']:.2e}")
    if report["momentum_drift"] > 1e-12:
        failures.append(f"momentum drift {report['momentum_drift']:.2e}")
    dts = np.array([4e-4, 2e-4, 1e-4])
    drifts = np.array(
        [fw.validate_wave(field, pot, dt=d)["energy_drift"] for d in dts]
    )
    slope = float(np.polyfit(np.log(dts), np.log(drifts), 1)[0])
    if not 1.8 < slope < 2.2:
        failures.append(f"energy drift slope {slope:.3f} not second order")
    fake = fw.reconstruct(
        res.profile.with_samples(res.profile.samples * 1.1),
        res.sigma2,
        normalization=fw.BACKGROUND,
    )
    ratio = fw.rigidity_error(fake, pot, dt=1e-4) / report["rigidity_error"]
    if ratio < 10.0:
        failures.append(f"corrupted control only {ratio:.1f}x worse")
    if time.monotonic() - t0 > 10.0:
        failures.append("took longer than 10 s")
    _report(9, "chain dynamics: the wave translates without deforming", failures,
            f"rigidity {report['rigidity_error']:.2e}, drift slope {slope:.2f}, "
            f"control ratio {ratio:.0f}x")


def test_potential_classification_table():
    failures = []

    def expect(cond, msg):
        if not cond:
            failures.append(msg)

    cosh = fw.builtin("cosh")
    rep = fw.check_superquadratic(cosh, 0.5)
    expect(rep.c1 and rep.c2 and rep.c3 and rep.beta_phi_monotone, "cosh flags")
    expect(fw.genuine_margin(cosh, 0.5) < 0 < fw.genuine_margin(cosh, 8.0),
           "cosh margin should change sign between 0.5 and 8")

    toda = fw.builtin("toda")
    rep = fw.check_superquadratic(toda, 0.5)
    expect(not rep.c1 and not rep.beta_phi_monotone, "one-sided exponential flags")
    expect(abs(rep.min_margin_c1 - (-0.103638323514327)) < 1e-9,
           f"frozen margin moved: {rep.min_margin_c1!r}")

    refl = fw.builtin("toda_reflected")
    rep = fw.check_superquadratic(refl, 0.5)
    expect(rep.c1 and rep.c2 and rep.c3, "reflected exponential flags")
    expect(fw.genuine_margin(refl, 0.25) < 0 < fw.genuine_margin(refl, 1.25),
           "reflected margin should change sign between 0.25 and 1.25")

    harm = fw.builtin("harmonic", beta=1.0)
    rep = fw.check_superquadratic(harm, 0.5)
    expect(rep.c1 and rep.min_margin_c1 == 0.0, "harmonic is the borderline case")
    expect(all(fw.genuine_margin(harm, g) < 0 for g in (0.25, 0.5, 2.0, 8.0)),
           "harmonic never beats its own ceiling")

    hom = fw.builtin("homogeneous", q=4)
    expect(abs(fw.genuine_margin(hom, 0.5) - 1.0) < 1e-5,
           "degree-4 witness energy at gamma=1/2 is the unit value")

    catalogue = [cosh, toda, refl, harm, hom, fw.builtin("logweak"), fw.builtin("arctanweak")]
    for pot in catalogue:
        for g in (0.25, 0.5, 2.0):
            rep = fw.check_superquadratic(pot, g)
            expect(not rep.c3 or rep.c2, f"{pot.name} g={g}: c3 without c2")
            expect(not rep.c2 or rep.c1, f"{pot.name} g={g}: c2 without c1")
    rep = fw.check_superquadratic(fw.builtin("arctanweak"), 2.0)
    expect(rep.c2 and not rep.c3, "arctan example should separate c2 from c3")
    _report(10, "classification table and implication chain", failures)


def test_harmonic_chain_has_no_solitary_wave():
    g = fw.make_grid(40.0, 8, fw.LINE)
    ctx = fw.EnergyContext(
        potential=fw.builtin("harmonic", beta=1.0), op=fw.make_operator(fw.BAR, g), gamma_max=0.5
    )
    res = fw.solve(
        ctx, fw.SolverConfig(gamma=0.5, max_iter=2000, seed_profile="gaussian(4.0)")
    )
    failures = []
    if res.converged:
        failures.append("iteration claims a harmonic solitary wave")
    if res.residual <= 1e-6:
        failures.append(f"residual {res.residual:.2e} did not stall above 1e-6")
    if not res.sigma2 < 1.0:
        failures.append(f"speed squared {res.sigma2:.8f} reached the sonic value")
    _report(11, "sonic ceiling: no harmonic solitary wave emerges", failures,
            f"residual stalled at {res.residual:.2e}, sigma2 {res.sigma2:.8f} < 1")
