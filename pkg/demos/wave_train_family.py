"""A family of wave trains for the exponential chain.

Sweeps the constraint level gamma on a fixed period, solving one wave
train per level with the plain window average on the nonnegative cone.
Small levels give the constant profile (the degenerate member of the
family); past gamma of roughly five the maximiser detaches into a
localised bump and the speed climbs well above the sound speed.

The (r, v) traces of consecutive members nest inside each other, which
is worth seeing once on a screen rather than as a boolean in a summary
file.  Outputs land in demos/out/wave_train_family/.
"""

import json
from pathlib import Path

import numpy as np

import fpuwaves as fw

OUT = Path(__file__).resolve().parent / "out" / "wave_train_family"
GAMMAS = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0]


def main():
    outcome = fw.gamma_sweep(fw.builtin("cosh"), GAMMAS, out_dir=OUT)
    print(f"potential cosh, L=2, M=64, gammas {GAMMAS}")
    print(f"{'gamma':>7} {'sigma2':>12} {'speed':>9} {'max|W|':>9} {'iters':>6}")
    for rec in outcome.records:
        print(
            f"{rec.key_value:7.2f} {rec.sigma2:12.8f} {rec.sigma2 ** 0.5:9.5f}"
            f" {rec.max_abs:9.5f} {rec.iterations:6d}"
        )
    print("all converged:", outcome.summary["all_converged"])
    print("traces nested:", outcome.summary["traces_nested"])
    print("wrote", OUT)

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available, skipping the figure")
        return

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    for g, prof in zip(GAMMAS, outcome.profiles):
        ax1.plot(prof.grid.centers(), prof.samples, label=f"gamma={g}")
    ax1.set_xlabel("phi")
    ax1.set_ylabel("W")
    ax1.legend(fontsize=7)
    ax1.set_title("profiles")
    for i in range(len(GAMMAS)):
        tr = np.loadtxt(OUT / f"trace_{i:03d}.csv", delimiter=",", skiprows=1)
        ax2.plot(np.append(tr[:, 1], tr[0, 1]), np.append(tr[:, 2], tr[0, 2]), lw=0.8)
    ax2.set_xlabel("r")
    ax2.set_ylabel("v")
    ax2.set_title("nested (r, v) traces")
    fig.tight_layout()
    fig.savefig(OUT / "family.png", dpi=150)
    print("wrote", OUT / "family.png")


if __name__ == "__main__":
    main()
