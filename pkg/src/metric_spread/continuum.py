"""Closed-form spreads and magnitudes of continuous spaces.

A metric space with a finite mass measure has spread

    E0(X) = integral dmu(x) / integral exp(-d(x,y)) dmu(y),

and for the unit-mass-density interval, spheres with their intrinsic metric,
and (asymptotically) any closed Riemannian manifold the integrals come out in
closed form.  These functions are exact scalar evaluations; the discrete
engine converges to them through :func:`riemann_sum_space`, which is how the
tests tie the two sides together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spaces import PointCloud, WeightedSpace

#: Below this length the interval formulas switch to series about 0,
#: avoiding the 0/0 forms of the closed expressions.
_SERIES_CUTOFF = 1e-6


def _check_length(length) -> float:
    length = float(length)
    if not math.isfinite(length) or length <= 0:
        raise ValueError(f"length must be a positive finite real, got {length}")
    return length


def interval_spread0(length: float) -> float:
    """Spread of the straight-line interval of the given length.

    Equal to arctanh(z)/z with z = sqrt(1 - exp(-length)), evaluated as
    (log1p(z) + length/2)/z, which is cancellation-free for large lengths
    where the naive arctanh form returns infinity.  Approaches length/2 +
    ln 2 from below as the interval grows, and 1 as it shrinks.
    """
    length = _check_length(length)
    u = -math.expm1(-length)
    if length < _SERIES_CUTOFF:
        return 1.0 + u / 3.0 + u * u / 5.0
    z = math.sqrt(u)
    return (math.log1p(z) + length / 2.0) / z


def interval_spread2(length: float) -> float:
    """Order-2 spread of the interval: length^2 / (2 length - 2(1 - exp(-length))).

    Asymptote length/2 + 1/2.
    """
    length = _check_length(length)
    if length < _SERIES_CUTOFF:
        return 1.0 + length / 3.0 + length * length / 36.0
    return length * length / (2.0 * (length + math.expm1(-length)))


def interval_spread_inf(length: float) -> float:
    """Order-infinity spread of the interval: length / (2(1 - exp(-length/2))).

    Asymptote length/2; the infimum of mass over mean similarity is attained
    at the midpoint.
    """
    length = _check_length(length)
    if length < _SERIES_CUTOFF:
        return 1.0 + length / 4.0 + length * length / 48.0
    return length / (2.0 * -math.expm1(-length / 2.0))


def interval_magnitude(length: float) -> float:
    """Magnitude of the interval: length/2 + 1."""
    return _check_length(length) / 2.0 + 1.0


def sphere_spread0(n: int, radius: float) -> float:
    """Spread of the n-sphere of the given radius with its intrinsic metric.

        n even:  2/(1 + e^(-pi R)) * prod_{i=1}^{n/2}   ((R/(2i-1))^2 + 1)
        n odd:   pi R/(1 - e^(-pi R)) * prod_{i=1}^{(n-1)/2} ((R/(2i))^2 + 1)

    Spheres are homogeneous, so this is also their magnitude.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"sphere dimension must be at least 1, got {n}")
    radius = float(radius)
    if not math.isfinite(radius) or radius <= 0:
        raise ValueError(f"radius must be a positive finite real, got {radius}")
    if n % 2 == 0:
        value = 2.0 / (1.0 + math.exp(-math.pi * radius))
        for i in range(1, n // 2 + 1):
            value *= (radius / (2 * i - 1)) ** 2 + 1.0
    else:
        value = math.pi * radius / -math.expm1(-math.pi * radius)
        for i in range(1, (n - 1) // 2 + 1):
            value *= (radius / (2 * i)) ** 2 + 1.0
    return value


def unit_ball_volume(n: int) -> float:
    """Volume of the unit n-ball: pi^(n/2) / Gamma(n/2 + 1)."""
    n = int(n)
    if n < 1:
        raise ValueError(f"dimension must be at least 1, got {n}")
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


@dataclass(frozen=True)
class ManifoldSummary:
    """The data of a closed Riemannian manifold the asymptotics depend on:
    dimension, volume, and total scalar curvature (its integral over the
    manifold)."""

    dim: int
    volume: float
    total_scalar_curvature: float

    def __post_init__(self):
        if int(self.dim) < 1:
            raise ValueError(f"dimension must be at least 1, got {self.dim}")
        if not math.isfinite(float(self.volume)) or float(self.volume) <= 0:
            raise ValueError(f"volume must be a positive finite real, got {self.volume}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "volume", float(self.volume))
        object.__setattr__(self, "total_scalar_curvature", float(self.total_scalar_curvature))


def riemannian_asymptotic_spread(summary: ManifoldSummary, t: float) -> float:
    """Two-term large-scale spread of a closed manifold scaled by ``t``:

        (t^n Vol + (n+1)/6 * t^(n-2) TSC) / (n! * omega_n)

    with omega_n the unit-ball volume.  The neglected remainder decays like
    t^(n-4), so this is only meaningful for large t.
    """
    t = float(t)
    if not math.isfinite(t) or t <= 0:
        raise ValueError(f"scale must be a positive finite real, got {t}")
    n = summary.dim
    leading = t**n * summary.volume
    curvature = (n + 1) / 6.0 * t ** (n - 2) * summary.total_scalar_curvature
    return (leading + curvature) / (math.factorial(n) * unit_ball_volume(n))


def surface_asymptotic_spread(area: float, euler_characteristic: float, t: float) -> float:
    """Large-scale spread of a closed surface: area/(2 pi) t^2 + Euler characteristic.

    The two-dimensional case of :func:`riemannian_asymptotic_spread` with
    total scalar curvature 4 pi chi (Gauss-Bonnet).
    """
    area = float(area)
    t = float(t)
    if not math.isfinite(area) or area <= 0:
        raise ValueError(f"area must be a positive finite real, got {area}")
    if not math.isfinite(t) or t <= 0:
        raise ValueError(f"scale must be a positive finite real, got {t}")
    return area / (2.0 * math.pi) * t * t + float(euler_characteristic)


def riemann_sum_space(length: float, n: int) -> WeightedSpace:
    """Midpoint-rule discretization of the interval: n points of mass length/n.

    Its order-0 spread converges to :func:`interval_spread0` as n grows,
    which the tests use to tie the discrete engine to the closed forms.
    """
    length = _check_length(length)
    n = int(n)
    if n < 2:
        raise ValueError(f"need at least 2 sample points, got {n}")
    x = (np.arange(n) + 0.5) * (length / n)
    return WeightedSpace(space=PointCloud(x), mass=np.full(n, length / n))
