"""The harmonic chain as the negative control.

Quadratic potentials sit exactly at the borderline: the constrained
energy has supremum beta * gamma but the supremum is not attained, so
there is no solitary wave and every speed stays below sound.  Two
experiments make that concrete.

First, wide cosine bumps push the energy toward the ceiling with a
defect falling like n^-2; the fitted log-log slope lands near -2 and
nothing ever crosses.  Second, the improvement iteration on a long line
segment keeps spreading mass forever: the residual stalls well above
the fixed-point tolerance while sigma^2 creeps toward 1 from below.
"""

from pathlib import Path

import fpuwaves as fw

OUT = Path(__file__).resolve().parent / "out" / "harmonic_ceiling"


def main():
    bench = fw.harmonic_benchmark(1.0, 0.5, [4, 8, 16, 32], out_dir=OUT)
    print("cosine family vs ceiling beta*gamma = 0.5")
    print(f"{'n':>4} {'energy':>14} {'defect':>12}")
    for rec in bench.records:
        print(f"{rec.n:4d} {rec.energy:14.10f} {rec.defect:12.3e}")
    print("fitted defect slope:", f"{bench.summary['fit_exponent']:.4f}")
    print("ceiling respected:", bench.summary["ceiling_respected"])
    print()

    g = fw.make_grid(40.0, 8, fw.LINE)
    ctx = fw.EnergyContext(
        potential=fw.builtin("harmonic", beta=1.0),
        op=fw.make_operator(fw.BAR, g),
        gamma_max=0.5,
    )
    res = fw.solve(
        ctx, fw.SolverConfig(gamma=0.5, max_iter=2000, seed_profile="gaussian(4.0)")
    )
    print("line-segment solve, L = 40, 2000 iterations:")
    print("  converged:", res.converged)
    print("  message:  ", res.message)
    print("  sigma2:   ", f"{res.sigma2:.8f}  (sonic value is 1)")
    print("the stall is the expected outcome; there is nothing to find")


if __name__ == "__main__":
    main()
