"""Magnitude can blow up where the spread stays perfectly tame.

The five-point metric of the complete bipartite graph K_{3,2} has a
similarity matrix that is exactly singular at scale t = ln(sqrt 2): the
magnitude profile has a pole there (and is negative just below it), while
the spread profile is defined, finite and increasing at every scale.
"""

import math

import numpy as np

import metric_spread as ms
from _common import maybe_pyplot, output_path, write_csv

T_SINGULAR = math.log(math.sqrt(2.0))


def main():
    space = ms.k32()
    grid = ms.log_grid(1e-2, 1e2, points_per_decade=40)

    spread = ms.spread_profile(space, grid)
    mag, report = ms.magnitude_profile(space, grid)
    write_csv("k32_spread.csv", "t,spread", [grid, spread.values])
    write_csv("k32_magnitude.csv", "t,magnitude", [grid, mag.values])
    print(f"singular scale: t = ln(sqrt 2) = {T_SINGULAR:.6f}")
    print(f"scales flagged on this grid: {report}")

    try:
        ms.magnitude(space, T_SINGULAR)
    except ms.NoWeightingError as exc:
        print(f"at the singular scale itself: {exc}")
    for dt in (-0.05, -0.01, 0.01, 0.05):
        t = T_SINGULAR + dt
        print(f"  t* {dt:+.2f}: magnitude {ms.magnitude(space, t).value:+9.4f}   "
              f"spread {ms.spread0(space, t):.4f}")

    plt = maybe_pyplot()
    if plt is not None:
        fig, ax = plt.subplots(figsize=(6, 3.6))
        # mask the wild region so the pole reads as a gap, like a plot of 1/x
        values = np.array(mag.values)
        values[np.abs(values) > 12] = np.nan
        ax.semilogx(grid, values, "k:", lw=2, label="magnitude")
        ax.semilogx(grid, spread.values, "k-", label="spread")
        ax.axvline(T_SINGULAR, color="0.8", lw=1)
        ax.set_ylim(-0.5, 5.2)
        ax.set_xlabel("t")
        ax.legend()
        ax.set_title("K(3,2): singular magnitude, smooth spread")
        fig.tight_layout()
        fig.savefig(output_path("k32_profiles.png"))
        print("wrote k32_profiles.png")


if __name__ == "__main__":
    main()
