"""Command-line surface.

Every subcommand resolves its inputs, runs the underlying library call
and writes a self-contained output directory (config.json plus the
command's artifacts), so a run can be reproduced from what it left on
disk.  Exit codes separate the mathematical outcome from plumbing:
0 means converged/ok, 2 means the iteration did not certify a fixed
point, 1 means the invocation or configuration was unusable.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path
from typing import Optional

from . import _io
from .averaging import BAR, HAT, make_operator, spectrum_table, write_spectrum_csv
from .energy import EnergyContext
from .errors import FpuWavesError
from .experiments import (
    continuation_to_soliton,
    gamma_sweep,
    harmonic_benchmark,
    localization_sweep,
    rescaled_localization_sweep,
)
from .grid import LINE, PERIODIC, make_grid, save_profile
from .lattice import stable_dt, validate_wave
from .potentials import (
    Potential,
    builtin,
    check_superquadratic,
    genuine_margin,
)
from .reconstruction import BACKGROUND, MEAN, reconstruct, trace, write_field_csv, write_trace_csv
from .solver import (
    CONE_EVEN_UNIMODAL,
    CONE_EVEN_UNIMODAL_NONNEG,
    SolverConfig,
    WaveResult,
    solve,
)

_ENV_OUT = "FPUWAVES_OUT"


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with code 1.

    The default argparse exit code (2) is reserved here for runs that
    finished but did not converge.
    """

    def error(self, message: str):  # noqa: D401 - argparse hook
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _float_list(text: str) -> list[float]:
    vals = [float(tok) for tok in text.split(",") if tok.strip()]
    if not vals:
        raise ValueError("empty list")
    return vals


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _potential(spec: str) -> Potential:
    """Parse ``name`` or ``name:key=val,key=val`` into a potential."""
    name, _, rest = spec.partition(":")
    params: dict = {}
    if rest:
        for part in rest.split(","):
            key, eq, val = part.partition("=")
            if not eq or not key.strip():
                raise FpuWavesError(f"bad potential parameter {part!r} in {spec!r}")
            val = val.strip()
            try:
                params[key.strip()] = float(val)
            except ValueError:
                params[key.strip()] = val
    return builtin(name.strip(), **params)


def _resolve_out(explicit: Optional[str], command: str) -> Path:
    if explicit:
        return Path(explicit)
    return Path(os.environ.get(_ENV_OUT, "fpuwaves-out")) / command


def _result_payload(res: WaveResult, potential: Potential) -> dict:
    return {
        "sigma2": res.sigma2,
        "energy": res.energy,
        "residual": res.residual,
        "iterations": res.iterations,
        "converged": res.converged,
        "cone_violations": res.cone_violations,
        "max_norm_drift": res.max_norm_drift,
        "min_improve_gap": res.min_improve_gap,
        "tail_mass": res.tail_mass,
        "truncation_suspect": res.truncation_suspect,
        "supersonic": bool(res.sigma2 > potential.beta),
        "beta": potential.beta,
        "message": res.message,
    }


def _print_result(res: WaveResult) -> None:
    print(
        f"sigma2={res.sigma2:.12g} energy={res.energy:.12g} "
        f"residual={res.residual:.3e} iterations={res.iterations} "
        f"converged={res.converged}"
    )
    if res.message and res.message != "converged":
        print(res.message)


def _solve_from_args(args) -> tuple[WaveResult, Potential]:
    pot = _potential(args.potential)
    grid = make_grid(args.L, args.M, args.mode)
    ctx = EnergyContext(potential=pot, op=make_operator(args.op, grid), gamma_max=args.gamma)
    cfg = SolverConfig(
        gamma=args.gamma,
        cone=args.cone,
        max_iter=args.max_iter,
        tol_fp=args.tol,
        seed_profile=args.seed,
        tail_tol=args.tail_tol,
    )
    return solve(ctx, cfg), pot


def _solver_config_payload(args, command: str) -> dict:
    return {
        "command": command,
        "potential": args.potential,
        "gamma": args.gamma,
        "L": args.L,
        "M": args.M,
        "mode": args.mode,
        "op": args.op,
        "cone": args.cone,
        "seed": args.seed,
        "max_iter": args.max_iter,
        "tol": args.tol,
        "tail_tol": args.tail_tol,
    }


def cmd_solve(args) -> int:
    res, pot = _solve_from_args(args)
    out = _io.prepare_dir(_resolve_out(args.out, "solve"))
    _io.dump_json(out / "config.json", _solver_config_payload(args, "solve"))
    save_profile(res.profile, out / "profile.csv")
    normalization = MEAN if args.op == HAT else BACKGROUND
    field = reconstruct(res.profile, res.sigma2, normalization=normalization)
    write_field_csv(field, out / "field.csv")
    write_trace_csv(trace(field), out / "trace.csv")
    _io.dump_json(out / "result.json", _result_payload(res, pot))
    _print_result(res)
    print(f"artifacts in {out}")
    return 0 if res.converged else 2


def cmd_sweep(args) -> int:
    pot = _potential(args.potential)
    out = _resolve_out(args.out, "sweep")
    outcome = gamma_sweep(
        pot,
        args.gammas,
        half_length=args.L,
        cells_half_unit=args.M,
        cone=args.cone,
        op_kind=args.op,
        max_iter=args.max_iter,
        tol_fp=args.tol,
        warm_start=not args.cold_start,
        out_dir=out,
    )
    for rec in outcome.records:
        print(
            f"gamma={rec.key_value:g} sigma2={rec.sigma2:.9g} energy={rec.energy:.9g} "
            f"residual={rec.residual:.3e} converged={rec.converged}"
        )
    print(f"traces nested: {outcome.summary['traces_nested']}")
    print(f"artifacts in {out}")
    return 0 if outcome.summary["all_converged"] else 2


def cmd_localize(args) -> int:
    out = _resolve_out(args.out, "localize")
    outcome = localization_sweep(
        args.q,
        gamma=args.gamma,
        half_length=args.L,
        cells_half_unit=args.M,
        max_iter=args.max_iter,
        tol_fp=args.tol,
        jobs=args.jobs,
        out_dir=out,
    )
    for rec in outcome.records:
        print(
            f"q={rec.key_value:g} distance={rec.distance:.9g} energy={rec.energy:.9g} "
            f"sigma2={rec.sigma2:.9g} converged={rec.converged}"
        )
    print(f"distances strictly decreasing: {outcome.summary['distances_strictly_decreasing']}")
    print(f"artifacts in {out}")
    return 0 if outcome.summary["all_converged"] else 2


def cmd_rescaled_localize(args) -> int:
    pot = _potential(args.potential)
    out = _resolve_out(args.out, "rescaled-localize")
    outcome = rescaled_localization_sweep(
        pot,
        args.gammas,
        half_length=args.L,
        cells_half_unit=args.M,
        max_iter=args.max_iter,
        tol_fp=args.tol,
        jobs=args.jobs,
        out_dir=out,
    )
    for rec in outcome.records:
        print(
            f"gamma={rec.key_value:g} distance={rec.distance:.9g} "
            f"sigma2={rec.sigma2:.9g} converged={rec.converged}"
        )
    print(f"distances decreasing: {outcome.summary['distances_decreasing']}")
    print(f"artifacts in {out}")
    return 0 if outcome.summary["all_converged"] else 2


def cmd_continue(args) -> int:
    pot = _potential(args.potential)
    out = _resolve_out(args.out, "continue")
    outcome = continuation_to_soliton(
        pot,
        args.gamma,
        args.L,
        cells_half_unit=args.M,
        max_iter=args.max_iter,
        tol_fp=args.tol,
        final_line_solve=not args.no_final_line,
        out_dir=out,
    )
    for rec in outcome.records:
        gap = rec.energy - rec.embedded_energy
        print(
            f"L={rec.half_length:g} energy={rec.energy:.12g} right_gap={gap:.3e} "
            f"defect={rec.defect if rec.defect is not None else '-'} converged={rec.converged}"
        )
    final = outcome.final
    field = reconstruct(final.profile, final.sigma2, normalization=BACKGROUND)
    write_field_csv(field, Path(out) / "field_final.csv")
    _io.dump_json(Path(out) / "soliton.json", outcome.summary["final"])
    _print_result(final)
    print(f"artifacts in {out}")
    ok = outcome.summary["all_stages_converged"] and final.converged
    return 0 if ok else 2


def cmd_benchmark_harmonic(args) -> int:
    out = _resolve_out(args.out, "benchmark-harmonic")
    outcome = harmonic_benchmark(
        args.beta, args.gamma, args.n, cells_half_unit=args.M, out_dir=out
    )
    for rec in outcome.records:
        print(f"n={rec.n} energy={rec.energy:.12g} defect={rec.defect:.6e}")
    print(
        f"ceiling={outcome.summary['ceiling']:g} "
        f"fit_exponent={outcome.summary['fit_exponent']}"
    )
    print(f"artifacts in {out}")
    return 0


def cmd_validate(args) -> int:
    res, pot = _solve_from_args(args)
    out = _io.prepare_dir(_resolve_out(args.out, "validate"))
    _io.dump_json(out / "config.json", {**_solver_config_payload(args, "validate"),
                                        "dt": args.dt, "periods": args.periods})
    _io.dump_json(out / "result.json", _result_payload(res, pot))
    if not res.converged:
        _print_result(res)
        print("refusing to validate an uncertified wave", file=sys.stderr)
        return 2
    normalization = MEAN if args.op == HAT else BACKGROUND
    field = reconstruct(res.profile, res.sigma2, normalization=normalization)
    t_end = args.periods * 2.0 * args.L / abs(field.omega)
    # Stability cap from the distances the orbit actually visits, with
    # headroom for transient excursions.
    r_max = 1.5 * float(abs(field.r.samples).max()) + 1.0
    dt_cap = stable_dt(pot, r_max)
    report = validate_wave(field, pot, dt=min(args.dt, dt_cap), t_end=t_end)
    _io.dump_json(out / "validation.json", report)
    for key, val in report.items():
        print(f"{key}={val:.6e}" if isinstance(val, float) else f"{key}={val}")
    print(f"artifacts in {out}")
    return 0


def cmd_check_potential(args) -> int:
    pot = _potential(args.name)
    report = check_superquadratic(pot, args.gamma)
    report = dataclasses.replace(report, genuine_margin=genuine_margin(pot, args.gamma))
    payload = report.to_dict()
    print(json.dumps(payload, indent=2, sort_keys=True))
    if args.out:
        out = _io.prepare_dir(args.out)
        _io.dump_json(out / "report.json", payload)
    return 0


def cmd_spectrum_probe(args) -> int:
    grid = make_grid(args.L, args.M, PERIODIC)
    rows = spectrum_table(grid, range(args.m_max + 1))
    out = _io.prepare_dir(_resolve_out(args.out, "spectrum-probe"))
    _io.dump_json(out / "config.json", {"command": "spectrum-probe", "L": args.L, "M": args.M,
                                        "m_max": args.m_max})
    write_spectrum_csv(out / "spectrum.csv", rows)
    for r in rows:
        print(
            f"m={r['m']} analytic={r['analytic']:.12g} measured={r['measured']:.12g} "
            f"abs_err={r['abs_err']:.3e}"
        )
    print(f"max abs_err = {max(r['abs_err'] for r in rows):.3e}")
    print(f"artifacts in {out}")
    return 0


def _add_grid_flags(p: argparse.ArgumentParser, default_l: float = 2.0, default_m: int = 64) -> None:
    p.add_argument("--L", type=float, default=default_l,
                   help=f"half period / half domain length in phase units (default {default_l:g})")
    p.add_argument("--M", type=int, default=default_m,
                   help=f"cells per half averaging window; spacing h = 1/(2M) (default {default_m})")


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--potential", required=True,
                   help="potential spec, e.g. cosh, harmonic:beta=1, homogeneous:q=4")
    p.add_argument("--gamma", type=float, required=True,
                   help="half squared L2 norm of the profile (dimensionless)")
    p.add_argument("--cone", choices=[CONE_EVEN_UNIMODAL, CONE_EVEN_UNIMODAL_NONNEG],
                   default=CONE_EVEN_UNIMODAL_NONNEG,
                   help="profile cone: U (even unimodal) or UN (also nonnegative)")
    p.add_argument("--op", choices=[BAR, HAT], default=BAR,
                   help="window average: bar (plain) or hat (mean-free, periodic only)")
    p.add_argument("--mode", choices=[PERIODIC, LINE], default=PERIODIC,
                   help="domain type (default periodic)")
    p.add_argument("--seed", default="cosine_bump",
                   help="seed descriptor: cosine_bump, tent, wcl, gaussian(width)")
    p.add_argument("--max-iter", type=int, default=100_000, help="iteration cap")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="fixed-point tolerance on the scaled iterate distance")
    p.add_argument("--tail-tol", type=float, default=1e-6,
                   help="line grids: allowed boundary mass fraction of gamma")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fpuwaves",
                     description="Wave trains and solitons of convex FPU chains "
                                 "by norm-constrained energy improvement.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("solve", help="compute a single wave profile")
    _add_solver_flags(p)
    _add_grid_flags(p)
    p.add_argument("--out", help="output directory (default $FPUWAVES_OUT/solve)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="family of wave trains over a gamma list")
    p.add_argument("--potential", required=True, help="potential spec")
    p.add_argument("--gammas", type=_float_list, required=True,
                   help="comma-separated gamma values, e.g. 0.1,1,10")
    _add_grid_flags(p)
    p.add_argument("--cone", choices=[CONE_EVEN_UNIMODAL, CONE_EVEN_UNIMODAL_NONNEG],
                   default=CONE_EVEN_UNIMODAL_NONNEG, help="profile cone")
    p.add_argument("--op", choices=[BAR, HAT], default=BAR, help="window average")
    p.add_argument("--max-iter", type=int, default=100_000, help="iteration cap per row")
    p.add_argument("--tol", type=float, default=1e-10, help="fixed-point tolerance")
    p.add_argument("--cold-start", action="store_true",
                   help="disable warm starts between consecutive gammas")
    p.add_argument("--out", help="output directory (default $FPUWAVES_OUT/sweep)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("localize", help="distance to the indicator profile for steepening powers")
    p.add_argument("--q", type=_float_list, required=True,
                   help="comma-separated degrees > 2, e.g. 4,6,10,20,50,100")
    p.add_argument("--gamma", type=float, default=0.5, help="constraint level (default 0.5)")
    _add_grid_flags(p)
    p.add_argument("--max-iter", type=int, default=100_000, help="iteration cap per row")
    p.add_argument("--tol", type=float, default=1e-10, help="fixed-point tolerance")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker threads for independent rows (default: cpu count)")
    p.add_argument("--out", help="output directory (default $FPUWAVES_OUT/localize)")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("rescaled-localize",
                       help="localisation of the rescaled potential family at growing gamma")
    p.add_argument("--potential", default="cosh", help="base potential spec (default cosh)")
    p.add_argument("--gammas", type=_float_list, required=True,
                   help="comma-separated gamma values, e.g. 1,10,100,1000")
    _add_grid_flags(p)
    p.add_argument("--max-iter", type=int, default=100_000, help="iteration cap per row")
    p.add_argument("--tol", type=float, default=1e-10, help="fixed-point tolerance")
    p.add_argument("--jobs", type=int, default=None, help="worker threads")
    p.add_argument("--out", help="output directory (default $FPUWAVES_OUT/rescaled-localize)")
    p.set_defaults(func=cmd_rescaled_localize)

    p = sub.add_parser("continue", help="grow the period toward a solitary wave")
    p.add_argument("--potential", required=True, help="potential spec")
    p.add_argument("--gamma", type=float, required=True, help="constraint level")
    p.add_argument("--L", type=_float_list, required=True,
                   help="increasing half-length schedule, e.g. 4,8,16,32")
    p.add_argument("--M", type=int, default=16,
                   help="cells per half window (default 16; every stage shares it)")
    p.add_argument("--max-iter", type=int, default=100_000, help="iteration cap per stage")
    p.add_argument("--tol", type=float, default=1e-10, help="fixed-point tolerance")
    p.add_argument("--no-final-line", action="store_true",
                   help="skip the final line-grid solve; report the last stage instead")
    p.add_argument("--out", help="output directory (default $FPUWAVES_OUT/continue)")
    p.set_defaults(func=cmd_continue)

    p = sub.add_parser("benchmark-harmonic", help="cosine family against the ceiling beta*gamma")
    p.add_argument("--beta", type=float, default=1.0, help="harmonic stiffness (default 1)")
    p.add_argument("--gamma", type=float, default=0.5, help="constraint level (default 0.5)")
    p.add_argument("--n", type=_int_list, default=[4, 8, 16, 32],
                   help="comma-separated half-widths (default 4,8,16,32)")
    p.add_argument("--M", type=int, default=64, help="cells per half window (default 64)")
    p.add_argument("--out", help="output directory (default $FPUWAVES_OUT/benchmark-harmonic)")
    p.set_defaults(func=cmd_benchmark_harmonic)

    p = sub.add_parser("validate", help="integrate the seeded chain and check rigid translation")
    _add_solver_flags(p)
    _add_grid_flags(p)
    p.add_argument("--dt", type=float, default=1e-4,
                   help="integrator step in wave time units (default 1e-4)")
    p.add_argument("--periods", type=float, default=1.0,
                   help="traversal count for the rigidity test (default 1)")
    p.add_argument("--out", help="output directory (default $FPUWAVES_OUT/validate)")
    p.set_defaults(func=cmd_validate)
    # the chain closes over one period, so validation is periodic-only
    p.set_defaults(mode=PERIODIC)

    p = sub.add_parser("check-potential", help="convexity and super-quadraticity report")
    p.add_argument("--name", required=True, help="potential spec, e.g. toda or homogeneous:q=4")
    p.add_argument("--gamma", type=float, required=True,
                   help="working radius parameter; conditions are sampled on (0, sqrt(2 gamma)]")
    p.add_argument("--out", help="also write report.json to this directory")
    p.set_defaults(func=cmd_check_potential)

    p = sub.add_parser("spectrum-probe", help="discrete averaging spectrum against sin(rho)/rho")
    _add_grid_flags(p, default_m=32)
    p.add_argument("--m-max", type=int, default=8, help="largest cosine mode (default 8)")
    p.add_argument("--out", help="output directory (default $FPUWAVES_OUT/spectrum-probe)")
    p.set_defaults(func=cmd_spectrum_probe)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FpuWavesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
