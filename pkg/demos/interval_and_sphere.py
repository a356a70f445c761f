"""Continuous spaces: exact interval and sphere spreads, and their shadows.

The straight interval of length L carrying the uniform measure has spread
arctanh(sqrt(1 - e^-L))/sqrt(1 - e^-L), close to L/2 + ln 2 for long
intervals, while its magnitude is L/2 + 1: same slope, different intercept.
Discretizing the interval by midpoint Riemann sums reproduces the exact
values through the finite machinery.  For the round 2-sphere the exact
spread 2(R^2 + 1)/(1 + e^(-pi R)) is captured, up to exponentially small
terms, by the two-term large-scale form area/(2 pi) t^2 + Euler
characteristic.
"""

import math

import numpy as np

import metric_spread as ms
from _common import maybe_pyplot, output_path, write_csv


def main():
    lengths = ms.log_grid(0.1, 100.0, points_per_decade=15)
    e0 = np.array([ms.interval_spread0(L) for L in lengths])
    e2 = np.array([ms.interval_spread2(L) for L in lengths])
    einf = np.array([ms.interval_spread_inf(L) for L in lengths])
    mag = np.array([ms.interval_magnitude(L) for L in lengths])
    write_csv("interval_sizes.csv", "length,spread0,spread2,spread_inf,magnitude",
              [lengths, e0, e2, einf, mag])

    print("interval, exact vs discretized (midpoint rule, length 10):")
    exact = ms.interval_spread0(10.0)
    for n in (125, 500, 2000):
        approx = ms.spread0(ms.riemann_sum_space(10.0, n))
        print(f"  n={n:5d}: {approx:.8f}   (exact {exact:.8f}, error {abs(approx-exact):.2e})")
    print(f"long-interval shift: E0(40) - 20 = {ms.interval_spread0(40) - 20:.8f} "
          f"vs ln 2 = {math.log(2):.8f}")
    print(f"magnitude intercept: |L|(40) - 20 = {ms.interval_magnitude(40) - 20:.1f}")

    print("\n2-sphere, exact vs asymptotic (area 4 pi R^2, Euler characteristic 2):")
    for radius in (1.0, 3.0, 10.0):
        exact_sphere = ms.sphere_spread0(2, radius)
        approx_sphere = ms.surface_asymptotic_spread(4 * math.pi, 2, radius)
        print(f"  R={radius:4.1f}: exact {exact_sphere:12.6f}   "
              f"asymptotic {approx_sphere:12.6f}   gap {abs(exact_sphere-approx_sphere):.2e}")

    plt = maybe_pyplot()
    if plt is not None:
        fig, ax = plt.subplots(figsize=(6, 3.6))
        ax.plot(lengths, e0, "k-", label="spread (order 0)")
        ax.plot(lengths, e2, "k--", label="order 2")
        ax.plot(lengths, einf, "k:", label="order inf")
        ax.plot(lengths, mag, "r-", lw=0.8, label="magnitude")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("interval length")
        ax.legend()
        ax.set_title("Sizes of the straight-line interval")
        fig.tight_layout()
        fig.savefig(output_path("interval_sizes.png"))
        print("\nwrote interval_sizes.png")


if __name__ == "__main__":
    main()
