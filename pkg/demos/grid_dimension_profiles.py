"""Scale-dependent dimension of rectangular grids of points.

The spread dimension (the log-log growth rate of the spread under scaling)
of a lattice of points depends on how far you stand from it.  A line of
points is 0-dimensional when fused or fully resolved and 1-dimensional in
between; a square grid shows a plateau just under 2; a long thin rectangle
passes through BOTH: line-like at one range of scales, plane-like at
another.  Desk-scale rerun: the grids here are a few thousand points, which
reproduces the shapes (with softer plateaus than million-point runs).  Takes
a minute or two single-threaded; set METRIC_SPREAD_THREADS to speed it up.
"""

import numpy as np

import metric_spread as ms
from _common import maybe_pyplot, output_path, write_csv

GRIDS = [
    ("line 1x3000", ms.grid(1, 3000, 1.0)),
    ("square 55x55", ms.grid(55, 55, 1.0)),
    ("rectangle 5x1200", ms.grid(5, 1200, 1.0)),
]


def main():
    scales = ms.log_grid(1e-4, 1e2, points_per_decade=8)
    columns = [scales]
    names = []
    for name, cloud in GRIDS:
        print(f"computing {name} ({cloud.n} points) ...")
        profile = ms.dimension_profile(cloud, scales)
        columns.append(profile.values)
        names.append(name.split()[0])
        peak = profile.values.max()
        print(f"  peak dimension {peak:.3f}")
    path = write_csv("grid_dimensions.csv",
                     "interpoint_distance," + ",".join(names), columns)
    print(f"wrote {path}")

    plt = maybe_pyplot()
    if plt is not None:
        fig, ax = plt.subplots(figsize=(8, 3.4))
        styles = ["k:", "k--", "k-"]
        for (name, _), values, style in zip(GRIDS, columns[1:], styles):
            ax.semilogx(scales, values, style, label=name)
        ax.axhline(1.0, color="0.85", lw=0.8)
        ax.axhline(2.0, color="0.85", lw=0.8)
        ax.set_xlabel("interpoint distance")
        ax.set_ylabel("spread dimension")
        ax.legend()
        fig.tight_layout()
        fig.savefig(output_path("grid_dimensions.png"))
        print("wrote grid_dimensions.png")


if __name__ == "__main__":
    main()
