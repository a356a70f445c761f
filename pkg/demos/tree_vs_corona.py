"""Two trees the magnitude cannot tell apart, but the spread can.

Every tree on N vertices with unit edges has the same magnitude profile
(N(e^t - 1) + 2)/(e^t + 1).  The path graph and the star (corona) on 10
vertices therefore share it exactly, yet their spreads differ: the path's
grows roughly linearly with scale while the star's saturates much earlier
(its diameter is only 2).  Maximum diversity separates them too: the star's
center must be switched off below t = ln(N - 2).
"""

import math

import numpy as np

import metric_spread as ms
from _common import maybe_pyplot, output_path, write_csv

N = 10


def main():
    path_graph = ms.linear_tree_metric(N)
    star = ms.corona_metric(N)
    grid = ms.log_grid(1e-2, 10, points_per_decade=30)

    magnitude = ms.tree_magnitude(N, grid)
    spread_path = ms.spread_profile(path_graph, grid).values
    spread_star = ms.spread_profile(star, grid).values
    maxdiv_star = ms.corona_maxdiv(N, grid)

    write_csv(
        "tree_vs_corona.csv",
        "t,magnitude,spread_path,spread_star,maxdiv_star",
        [grid, magnitude, spread_path, spread_star, maxdiv_star],
    )

    solver_path = ms.magnitude(path_graph, 1.0).value
    solver_star = ms.magnitude(star, 1.0).value
    print(f"magnitude at t=1: path {solver_path:.6f}, star {solver_star:.6f} (equal)")
    print(f"spread at t=1:    path {spread_path[np.searchsorted(grid, 1.0)]:.4f}, "
          f"star {spread_star[np.searchsorted(grid, 1.0)]:.4f} (path is larger)")
    print(f"star maxdiv breakpoint at ln(N-2) = {math.log(N - 2):.4f}")

    plt = maybe_pyplot()
    if plt is not None:
        fig, axes = plt.subplots(1, 2, figsize=(9, 3.6), sharey=True)
        for ax, spread, maxdiv, label in (
            (axes[0], spread_path, magnitude, "path graph L10"),
            (axes[1], spread_star, maxdiv_star, "star C10"),
        ):
            ax.loglog(grid, np.exp(np.minimum(
                ms.diameter(path_graph if label.startswith("path") else star) * grid, 30)),
                "r-", lw=0.7, label="exp(diameter)")
            ax.loglog(grid, magnitude, "k:", lw=2, label="magnitude")
            if label.startswith("star"):
                ax.loglog(grid, maxdiv, "k--", label="max diversity")
            ax.loglog(grid, spread, "k-", label="spread")
            ax.set_ylim(0.9, 10.5)
            ax.set_xlabel("t")
            ax.set_title(label)
            ax.legend(loc="lower right", fontsize=8)
        fig.tight_layout()
        fig.savefig(output_path("tree_vs_corona.png"))
        print("wrote tree_vs_corona.png")


if __name__ == "__main__":
    main()
