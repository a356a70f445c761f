"""Spread profile of a three-point space with two very different distances.

The space has a close pair (distance 1) with a third point far away
(distance 1000 from both).  Scaling it sweeps through three regimes: at tiny
scales everything is fused and the spread is near 1; at intermediate scales
the far point is resolved but the pair is not, giving a plateau near 2; at
large scales all three points are resolved and the spread saturates at 3.
"""

import numpy as np

import metric_spread as ms
from _common import maybe_pyplot, output_path, write_csv


def main():
    space = ms.three_point_r()
    grid = ms.log_grid(1e-5, 1e3, points_per_decade=25)
    profile = ms.spread_profile(space, grid)

    path = write_csv("three_point_profile.csv", "t,spread", [grid, profile.values])
    print(f"wrote {path}")
    for t in (1e-4, 0.03, 1.0, 100.0):
        print(f"  E0 at t={t:g}: {ms.spread0(space, t):.4f}")

    plt = maybe_pyplot()
    if plt is not None:
        fig, ax = plt.subplots(figsize=(6, 3.2))
        ax.semilogx(grid, profile.values, "k-")
        ax.set_xlabel("t")
        ax.set_ylabel("spread")
        ax.set_yticks([0, 1, 2, 3])
        ax.set_title("Spread profile of the three-point space")
        fig.tight_layout()
        fig.savefig(output_path("three_point_profile.png"))
        print("wrote three_point_profile.png")


if __name__ == "__main__":
    main()
