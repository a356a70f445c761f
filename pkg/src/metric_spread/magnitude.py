"""Weightings, magnitude, maximum diversity, and tree/corona closed forms.

A weighting of a space is a vector w with Z w = 1 for the similarity matrix
Z = exp(-t d); the magnitude |X| is the sum of the weights when the system is
solvable.  Unlike the spread, the magnitude can fail to exist: Z can be
exactly singular at isolated scales, which shows up here as
:class:`NoWeightingError`.  The maximum diversity |X|+ is the largest
magnitude over subsets admitting an entrywise non-negative weighting; it is
computed by exhaustive enumeration, which doubles as ground truth for the
closed-form corona profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack

from .diversity import similarity_from_metric
from .spaces import npoints, scale
from .spread import Profile, parallel_map

#: Reciprocal-condition estimate below which the similarity matrix is
#: declared numerically singular: the solve would carry no correct digits.
RCOND_FLOOR = 1e-12

#: Weightings whose recomputed residual max|Zw - 1| exceeds this are flagged
#: as degraded (the scale is near a singular one).
RESIDUAL_FLAG = 1e-8

#: Weight entries above -1e-10 count as non-negative during subset
#: enumeration, so solver noise cannot exclude boundary subsets.
NONNEG_SLACK = -1e-10

#: Default cap on exhaustive subset enumeration (2^n - 1 linear solves).
ENUMERATION_CAP = 20


class NoWeightingError(RuntimeError):
    """The weighting system Z w = 1 is numerically singular at this scale."""

    def __init__(self, t: float, rcond: float):
        super().__init__(
            f"no weighting at scale t={t!r}: similarity matrix is numerically "
            f"singular (reciprocal condition estimate {rcond:.3e})"
        )
        self.t = t
        self.rcond = rcond


@dataclass(frozen=True)
class Weighting:
    """Solution of Z w = 1 with its recomputed residual max|Zw - 1|."""

    w: np.ndarray
    residual: float

    @property
    def degraded(self) -> bool:
        return self.residual > RESIDUAL_FLAG


@dataclass(frozen=True)
class MagnitudeResult:
    """Magnitude value, the weighting behind it, and a conditioning estimate."""

    value: float
    weighting: Weighting
    condition_estimate: float

    @property
    def degraded(self) -> bool:
        return self.weighting.degraded

    def __float__(self) -> float:
        return self.value


def weighting(space, t: float = 1.0) -> Weighting:
    """Solve Z w = 1 by symmetric (Bunch-Kaufman) factorization with pivoting.

    Raises :class:`NoWeightingError` when the factorization hits a zero
    pivot or the reciprocal condition estimate falls below ``RCOND_FLOOR``.
    """
    z = similarity_from_metric(scale_applied(space, t))
    return _solve_weighting(z, t)[0]


def scale_applied(space, t: float):
    """The space at scale ``t``."""
    return space if t == 1.0 else scale(space, t)


def _solve_weighting(z: np.ndarray, t: float) -> tuple[Weighting, float]:
    anorm = np.linalg.norm(z, 1)
    ldu, ipiv, info = lapack.dsytrf(z, lower=1)
    if info != 0:
        raise NoWeightingError(t, 0.0)
    rcond, _ = lapack.dsycon(ldu, ipiv, anorm, lower=1)
    if rcond < RCOND_FLOOR:
        raise NoWeightingError(t, float(rcond))
    w, info = lapack.dsytrs(ldu, ipiv, np.ones(z.shape[0]), lower=1)
    if info != 0:
        raise NoWeightingError(t, float(rcond))
    residual = float(np.abs(z @ w - 1.0).max())
    return Weighting(w=w, residual=residual), float(rcond)


def magnitude(space, t: float = 1.0) -> MagnitudeResult:
    """Magnitude: the sum of the weights of a successful weighting."""
    z = similarity_from_metric(scale_applied(space, t))
    wt, rcond = _solve_weighting(z, t)
    return MagnitudeResult(value=float(wt.w.sum()), weighting=wt, condition_estimate=rcond)


def is_positive_definite(space, t: float = 1.0) -> bool:
    """Whether the similarity matrix is positive definite at scale ``t``.

    True iff every eigenvalue clears the standard rank tolerance
    n * eps * max|eigenvalue|.  Positive definiteness guarantees the
    magnitude exists and dominates the magnitude of every subset.
    """
    z = similarity_from_metric(scale_applied(space, t))
    eigs = np.linalg.eigvalsh(z)
    tol = z.shape[0] * np.finfo(float).eps * float(np.abs(eigs).max())
    return bool(eigs.min() > tol)


def maximum_diversity(space, t: float = 1.0, cap: int = ENUMERATION_CAP,
                      return_subset: bool = False):
    """Largest magnitude over subsets with a non-negative weighting.

    Every subset B is solved exactly (2^n - 1 dense solves, so the point
    count is capped at ``cap``); B qualifies when Z_B w = 1 is solvable with
    residual below ``RESIDUAL_FLAG`` and w entrywise >= ``NONNEG_SLACK``.
    Singletons always qualify with value 1, so the maximum exists.  Exact
    value ties are broken toward the lexicographically smallest index tuple;
    with ``return_subset`` the winning tuple is returned alongside the value.
    """
    n = npoints(space)
    if n > cap:
        raise ValueError(
            f"maximum diversity enumerates all 2^n - 1 subsets; n={n} exceeds the "
            f"cap of {cap}"
        )
    z = similarity_from_metric(scale_applied(space, t))
    ones = np.ones(n)
    best_value = -math.inf
    best_subset: tuple[int, ...] = ()
    for mask in range(1, 1 << n):
        subset, bits = [], mask
        while bits:
            subset.append((bits & -bits).bit_length() - 1)
            bits &= bits - 1
        idx = np.array(subset)
        zb = z[np.ix_(idx, idx)]
        try:
            w = np.linalg.solve(zb, ones[: idx.size])
        except np.linalg.LinAlgError:
            continue
        if w.min() < NONNEG_SLACK:
            continue
        if np.abs(zb @ w - 1.0).max() > RESIDUAL_FLAG:
            continue
        value = float(w.sum())
        subset = tuple(subset)
        if value > best_value or (value == best_value and subset < best_subset):
            best_value, best_subset = value, subset
    return (best_value, best_subset) if return_subset else best_value


def magnitude_profile(space, grid, threads: int | None = None) -> tuple[Profile, dict]:
    """Magnitude over a grid of scales, with singular scales reported.

    Scales where no weighting exists get NaN values and are listed under
    ``"singular"`` in the report; scales whose weighting residual exceeds
    ``RESIDUAL_FLAG`` keep their value but are listed under ``"flagged"``.
    """
    grid = np.asarray(grid, dtype=float)

    def one(t: float):
        try:
            result = magnitude(space, t)
        except NoWeightingError:
            return math.nan, "singular"
        return result.value, ("flagged" if result.degraded else None)

    outcomes = parallel_map(one, grid, threads)
    values = np.array([v for v, _ in outcomes])
    report = {
        "singular": [float(t) for t, (_, tag) in zip(grid, outcomes) if tag == "singular"],
        "flagged": [float(t) for t, (_, tag) in zip(grid, outcomes) if tag == "flagged"],
    }
    return Profile(grid=grid, values=values, quantity="magnitude"), report


def maxdiv_profile(space, grid, cap: int = ENUMERATION_CAP,
                   threads: int | None = None) -> Profile:
    """Maximum diversity over a grid of scales (enumeration at every point)."""
    grid = np.asarray(grid, dtype=float)
    values = parallel_map(lambda t: maximum_diversity(space, t, cap=cap), grid, threads)
    return Profile(grid=grid, values=np.array(values), quantity="maxdiv")


# ---------------------------------------------------------------------------
# Closed forms for trees.  Every tree on N vertices with unit edges has the
# same magnitude profile, while spreads tell the linear tree and the corona
# (star) apart.  All expressions are written in exp(-t) so they stay finite
# for arbitrarily large scales.

def _check_tree_args(n_vertices: int, t, minimum: int) -> tuple[int, np.ndarray]:
    n = int(n_vertices)
    if n < minimum:
        raise ValueError(f"need at least {minimum} vertices, got {n}")
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0) or not np.all(np.isfinite(t)):
        raise ValueError("scale must be a positive finite real")
    return n, t


def tree_magnitude(n_vertices: int, t):
    """Magnitude (N(e^t - 1) + 2) / (e^t + 1) of any unit-edge tree on N vertices."""
    n, t = _check_tree_args(n_vertices, t, 1)
    et = np.exp(-t)
    value = (n * (1.0 - et) + 2.0 * et) / (1.0 + et)
    return float(value) if value.ndim == 0 else value


def linear_tree_spread(n_vertices: int, t):
    """Spread of the path graph: sum_i (e^t - 1)/(1 + e^t - e^(-t(i-1)) - e^(-t(N-i)))."""
    n, t = _check_tree_args(n_vertices, t, 1)
    i = np.arange(1, n + 1)
    tt = np.atleast_1d(t)[..., None]
    et = np.exp(-tt)
    terms = (1.0 - et) / (et + 1.0 - np.exp(-tt * i) - np.exp(-tt * (n - i + 1)))
    value = terms.sum(axis=-1)
    return float(value[0]) if np.ndim(t) == 0 else value


def corona_spread(n_vertices: int, t):
    """Spread of the star with one center and N-1 leaves.

    1/(1 + (N-1)e^-t) + (N-1)/(1 + e^-t + (N-2)e^-2t).
    """
    n, t = _check_tree_args(n_vertices, t, 2)
    et = np.exp(-t)
    value = 1.0 / (1.0 + (n - 1) * et) + (n - 1) / (1.0 + et + (n - 2) * et * et)
    return float(value) if value.ndim == 0 else value


def corona_maxdiv(n_vertices: int, t):
    """Maximum diversity of the star: piecewise in t with breakpoint ln(N-2).

    For t >= ln(N-2) the whole star qualifies and the value is the tree
    magnitude; below the breakpoint the center must be switched off, leaving
    the N-1 leaves at mutual distance 2t with value (N-1)/(1 + (N-2)e^-2t).
    """
    n, t = _check_tree_args(n_vertices, t, 3)
    et2 = np.exp(-2.0 * t)
    leaves = (n - 1) / (1.0 + (n - 2) * et2)
    value = np.where(t >= math.log(n - 2), tree_magnitude(n, t), leaves)
    return float(value) if value.ndim == 0 else value
