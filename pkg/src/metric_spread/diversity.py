"""Generalized power means, similarity matrices, and similarity-sensitive diversity.

The diversity of order q of a community with similarity matrix Z and relative
abundances p (the Leinster-Cobbold index) interpolates the classical Hill
numbers, which are recovered when Z is the identity.  A metric induces a
canonical similarity matrix via Z_ij = exp(-d_ij), which is how the rest of
the package plugs metric spaces into these indices.
"""

from __future__ import annotations

import math

import numpy as np

from .spaces import distance_matrix

#: Absolute tolerance for "the probabilities sum to one".
PROBABILITY_ATOL = 1e-12


def check_order(q) -> float:
    """Validate a diversity/spread order: a real in [0, +inf]."""
    q = float(q)
    if math.isnan(q):
        raise ValueError("order must not be NaN")
    if q < 0:
        raise ValueError(f"negative orders are not supported, got q={q}")
    return q


def _check_weights(weights, n: int) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.shape != (n,):
        raise ValueError(f"need {n} weights, got shape {w.shape}")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be non-negative finite reals")
    if abs(w.sum() - 1.0) > PROBABILITY_ATOL:
        raise ValueError(f"weights must sum to 1, got {w.sum()!r}")
    return w


def power_mean(values, s: float, weights=None) -> float:
    """Power mean of order ``s`` of positive numbers.

    ``((1/N) sum a_i^s)^(1/s)`` for finite nonzero ``s``; the geometric mean
    at ``s = 0`` (computed in log space), the maximum at ``s = +inf`` and the
    minimum at ``s = -inf``.  ``weights`` replaces 1/N by a probability
    vector; entries with zero weight are excluded.
    """
    a = np.asarray(values, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise ValueError("power_mean needs a non-empty 1-d collection")
    if np.any(a <= 0) or not np.all(np.isfinite(a)):
        raise ValueError("power_mean is only defined for positive finite values")
    s = float(s)
    if math.isnan(s):
        raise ValueError("mean order must not be NaN")
    if weights is None:
        w = np.full(a.size, 1.0 / a.size)
    else:
        w = _check_weights(weights, a.size)
        support = w > 0
        a, w = a[support], w[support]

    if s == math.inf:
        return float(a.max())
    if s == -math.inf:
        return float(a.min())
    if s == 0.0:
        return float(math.exp((w * np.log(a)).sum()))
    # Normalize by the extreme element so a^s never overflows.
    m = float(a.max() if s > 0 else a.min())
    ratio = a / m
    return m * float((w * ratio**s).sum() ** (1.0 / s))


def similarity_from_metric(space, limit: int | None = None) -> np.ndarray:
    """Similarity matrix Z_ij = exp(-d_ij) of a (possibly scaled) space.

    Entries lie in (0, 1] with unit diagonal; underflow to exactly 0 for
    huge distances is accepted and means "completely dissimilar".
    """
    z = np.exp(-distance_matrix(space, limit=limit))
    np.fill_diagonal(z, 1.0)
    return z


def _check_similarity(z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if z.ndim != 2 or z.shape[0] != z.shape[1]:
        raise ValueError(f"similarity matrix must be square, got shape {z.shape}")
    if np.any(z < 0) or np.any(z > 1) or not np.all(np.isfinite(z)):
        raise ValueError("similarities must lie in [0, 1]")
    if np.any(np.abs(np.diagonal(z) - 1.0) > 1e-12):
        raise ValueError("similarity of every point with itself must be 1")
    return z


def _check_probabilities(p, n: int) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (n,):
        raise ValueError(f"need {n} probabilities, got shape {p.shape}")
    if np.any(p < 0) or not np.all(np.isfinite(p)):
        raise ValueError("probabilities must be non-negative finite reals")
    if abs(p.sum() - 1.0) > PROBABILITY_ATOL:
        raise ValueError(f"probabilities must sum to 1, got {p.sum()!r}")
    return p


def lc_diversity(z, p, q) -> float:
    """Similarity-sensitive diversity of order ``q`` of abundances ``p``.

    Writing (Zp)_i for the mean similarity of point i to the community,
    the index is ``(sum_{i: p_i>0} p_i (Zp)_i^(q-1))^(1/(1-q))`` for finite
    q != 1, the product ``prod (Zp)_i^(-p_i)`` at q = 1 (computed in log
    space) and ``min 1/(Zp)_i`` at q = infinity, all restricted to the
    support of p.  Values lie in [1, N] and decrease in q.
    """
    z = _check_similarity(z)
    p = _check_probabilities(p, z.shape[0])
    q = check_order(q)

    support = p > 0
    zp = (z * p).sum(axis=1)[support]
    ps = p[support]
    if np.any(zp <= 0):
        raise ValueError("mean similarity vanishes on the support; diversity undefined")

    if q == math.inf:
        return 1.0 / float(zp.max())
    if q == 1.0:
        return float(math.exp(-(ps * np.log(zp)).sum()))
    return float((ps * zp ** (q - 1.0)).sum() ** (1.0 / (1.0 - q)))


def hill_number(p, q) -> float:
    """Classical diversity of order ``q`` ignoring similarities.

    Equals :func:`lc_diversity` with the identity similarity matrix: the
    species count at q = 0, exponential Shannon at q = 1, Simpson at q = 2
    and reciprocal Berger-Parker at q = infinity.
    """
    p = np.asarray(p, dtype=float)
    return lc_diversity(np.eye(p.size), p, q)
