"""Concentration of the maximisers under steepening potentials.

Two sweeps.  The first raises the degree q of the power-law potential
and watches the maximiser close in on the scaled indicator of width
one; the second rescales a fixed potential (here the exponential one)
to growing gamma, which steepens it in the same way after the energy
is renormalised.  Both distances shrink, the first strictly.

The indicator is the profile of the high-energy limit: one stretched
bond per window.  Distances are plain L2 norms against the witness.
"""

from pathlib import Path

import fpuwaves as fw

OUT = Path(__file__).resolve().parent / "out" / "localization_limit"


def main():
    q_list = [4.0, 6.0, 10.0, 20.0, 50.0, 100.0]
    loc = fw.localization_sweep(q_list, out_dir=OUT / "powers")
    print("steepening power-law potentials, gamma = 0.5")
    print(f"{'q':>7} {'distance':>12} {'sigma2':>12} {'energy':>12}")
    for rec in loc.records:
        print(f"{rec.key_value:7.1f} {rec.distance:12.8f} {rec.sigma2:12.6f} {rec.energy:12.8f}")
    print("strictly decreasing:", loc.summary["distances_strictly_decreasing"])
    print("worst dominance margin:", f"{loc.summary['dominance_margin_min']:.3e}")
    print()

    gammas = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0]
    res = fw.rescaled_localization_sweep(fw.builtin("cosh"), gammas, out_dir=OUT / "rescaled")
    print("rescaled exponential potential at growing gamma")
    print(f"{'gamma':>7} {'distance':>12} {'sigma2':>12}")
    for rec in res.records:
        print(f"{rec.key_value:7.2f} {rec.distance:12.8f} {rec.sigma2:12.6f}")
    print("decreasing:", res.summary["distances_decreasing"])
    print("wrote", OUT)

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        return

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogx([r.key_value for r in loc.records], [r.distance for r in loc.records],
                "o-", label="degree q sweep")
    ax.semilogx([r.key_value for r in res.records], [r.distance for r in res.records],
                "s--", label="rescaled, gamma sweep")
    ax.set_xlabel("q or gamma")
    ax.set_ylabel("L2 distance to the indicator")
    ax.legend()
    fig.tight_layout()
    fig.savefig(OUT / "distances.png", dpi=150)
    print("wrote", OUT / "distances.png")


if __name__ == "__main__":
    main()
