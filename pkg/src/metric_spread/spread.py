"""The spread of a metric space and its scale profiles.

The order-0 spread of a finite space is

    E0(X) = sum_i 1 / sum_j exp(-d(x_i, x_j)),

an "effective number of points": it grows from 1 to N as the space is scaled
up.  The order-q variants are power means of the reciprocal mean similarities
rho_i = N / sum_j exp(-d_ij), and for a space carrying a mass measure the sums
become mass-weighted.  This module implements those quantities, the exp(-t d)
kernel they share (streamed for large point clouds), and sampled profiles of
value against scale.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .diversity import check_order
from .spaces import MATERIALIZE_LIMIT, PointCloud, unwrap

#: Environment variable consulted for the default worker-thread cap.
THREADS_ENV = "METRIC_SPREAD_THREADS"

#: Rows per block when streaming pairwise distances (kept independent of the
#: thread count so results are bit-identical however work is distributed).
_STREAM_BLOCK_ELEMENTS = 4_000_000


def resolve_threads(threads: int | None = None) -> int:
    """Worker-thread cap: explicit argument, else METRIC_SPREAD_THREADS, else 1."""
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1"))
    threads = int(threads)
    if threads < 1:
        raise ValueError(f"thread count must be at least 1, got {threads}")
    return threads


def parallel_map(fn, items, threads: int | None = None) -> list:
    """Map preserving order; results are identical for any thread count.

    Each item is evaluated independently and placed by index, so the only
    effect of ``threads`` is wall-clock time.
    """
    items = list(items)
    n_workers = min(resolve_threads(threads), max(len(items), 1))
    if n_workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(fn, items))


def log_grid(t_min: float, t_max: float, points_per_decade: float | None = None,
             total: int | None = None) -> np.ndarray:
    """Logarithmically spaced scales on [t_min, t_max], endpoints included.

    Give either ``points_per_decade`` or ``total``; with neither, the grid
    has 101 points over the requested range.
    """
    t_min, t_max = float(t_min), float(t_max)
    if not (0 < t_min < t_max) or not np.isfinite(t_max):
        raise ValueError(f"need 0 < t_min < t_max, got [{t_min}, {t_max}]")
    if points_per_decade is not None and total is not None:
        raise ValueError("give points_per_decade or total, not both")
    decades = math.log10(t_max / t_min)
    if points_per_decade is not None:
        if points_per_decade <= 0:
            raise ValueError("points_per_decade must be positive")
        count = max(2, int(round(points_per_decade * decades)) + 1)
    else:
        count = 101 if total is None else int(total)
        if count < 2:
            raise ValueError("a grid needs at least 2 points")
    return np.geomspace(t_min, t_max, count)


# ---------------------------------------------------------------------------
# Kernel

def _rows_from_dense(d: np.ndarray, t: float, mass: np.ndarray) -> np.ndarray:
    # Row-wise reduction (no BLAS) keeps results bit-reproducible.
    return (np.exp(-t * d) * mass).sum(axis=1)


def similarity_row_sums(space, t: float = 1.0, threads: int | None = None) -> np.ndarray:
    """Mass-weighted similarity row sums sum_j exp(-t * d_ij) * mass_j.

    For the uniform case the mass is 1 per point.  Point clouds above the
    materialization limit are processed in fixed row blocks, each reduced in
    index order, so values do not depend on the thread count.  exp underflow
    to 0 is accepted: far-away points contribute as completely dissimilar.
    """
    base, t_view, mass = unwrap(space)
    t = float(t) * t_view
    if not np.isfinite(t) or t <= 0:
        raise ValueError(f"scale must be a positive finite real, got {t}")
    m = np.ones(base.n) if mass is None else mass
    if not isinstance(base, PointCloud):
        return _rows_from_dense(base.d, t, m)
    if base.n <= MATERIALIZE_LIMIT:
        return _rows_from_dense(base.distance_matrix(), t, m)

    coords = base.coords
    block = max(1, _STREAM_BLOCK_ELEMENTS // base.n)
    spans = [(i0, min(i0 + block, base.n)) for i0 in range(0, base.n, block)]

    def one_block(span):
        i0, i1 = span
        return _rows_from_dense(cdist(coords[i0:i1], coords), t, m)

    return np.concatenate(parallel_map(one_block, spans, threads))


def total_mass(space) -> float:
    """Total mass of a weighted space; the point count in the uniform case."""
    base, _, mass = unwrap(space)
    return float(base.n) if mass is None else float(mass.sum())


def reciprocal_mean_similarities(space, t: float = 1.0, threads: int | None = None) -> np.ndarray:
    """Vector of rho_i = total mass / (mass-weighted similarity row sum i).

    In the uniform case rho_i = N / sum_j exp(-t d_ij), a measure in [1, N]
    of how isolated point i is.
    """
    return total_mass(space) / similarity_row_sums(space, t, threads)


def reciprocal_mean_similarity(space, i: int, t: float = 1.0) -> float:
    """rho_i for a single index, computed from one distance row."""
    base, t_view, mass = unwrap(space)
    if not 0 <= i < base.n:
        raise IndexError(f"point index {i} out of range for {base.n} points")
    t = float(t) * t_view
    if not np.isfinite(t) or t <= 0:
        raise ValueError(f"scale must be a positive finite real, got {t}")
    row = base.row_distances(i) if isinstance(base, PointCloud) else base.d[i]
    m = np.ones(base.n) if mass is None else mass
    return float(m.sum() / (np.exp(-t * row) * m).sum())


def spread0(space, t: float = 1.0, threads: int | None = None) -> float:
    """Order-0 spread sum_i mass_i / sum_j exp(-t d_ij) mass_j.

    Defined for every space and scale; lies in [1, N] for uniform finite
    spaces and is invariant under rescaling all masses.
    """
    base, _, mass = unwrap(space)
    m = np.ones(base.n) if mass is None else mass
    return float((m / similarity_row_sums(space, t, threads)).sum())


@dataclass(frozen=True)
class SpreadResult:
    """A spread value together with the order and scale it was computed at."""

    q: float
    t: float
    value: float

    def __float__(self) -> float:
        return self.value


def spread_q(space, t: float = 1.0, q: float = 0.0, threads: int | None = None) -> SpreadResult:
    """Order-q spread at scale ``t``.

    Uniform finite spaces support every q in [0, inf], through the explicit
    special cases

        q=0:   sum_i 1/r_i                 q=1:  N * prod_i (1/r_i)^(1/N)
        q=2:   N^2 / sum_i r_i             q=inf: N / max_i r_i
        else:  (N^-q * sum_i r_i^(q-1))^(1/(1-q))

    with r_i = sum_j exp(-t d_ij); q=1 runs in log space.  The result equals
    the (1-q)-power mean of the reciprocal mean similarities.  Spaces with a
    non-uniform mass only define the orders 0, 2 and infinity:

        q=0:   sum_i m_i/(Zm)_i     q=2: M^2 / sum_i m_i (Zm)_i
        q=inf: M / max_i (Zm)_i

    where M is the total mass; other orders raise ValueError.
    """
    q = check_order(q)
    base, _, mass = unwrap(space)
    rows = similarity_row_sums(space, t, threads)

    if mass is not None:
        if q == 0.0:
            value = float((mass / rows).sum())
        elif q == 2.0:
            m_total = float(mass.sum())
            value = m_total * m_total / float((mass * rows).sum())
        elif q == math.inf:
            value = float(mass.sum()) / float(rows.max())
        else:
            raise ValueError(
                f"order q={q} is not defined for mass-weighted spaces; "
                "supported weighted orders are 0, 2 and inf"
            )
        return SpreadResult(q=q, t=float(t), value=value)

    n = base.n
    if q == 0.0:
        value = float((1.0 / rows).sum())
    elif q == 1.0:
        value = n * math.exp(-float(np.log(rows).mean()))
    elif q == 2.0:
        value = n * n / float(rows.sum())
    elif q == math.inf:
        value = n / float(rows.max())
    else:
        value = float((n ** (-q) * (rows ** (q - 1.0)).sum()) ** (1.0 / (1.0 - q)))
    return SpreadResult(q=q, t=float(t), value=value)


# ---------------------------------------------------------------------------
# Profiles

def order_label(q: float) -> str:
    """Compact label for a spread order: 0, 1, 2.5, inf, ..."""
    q = check_order(q)
    if q == math.inf:
        return "inf"
    return f"{int(q)}" if q == int(q) else f"{q:g}"


@dataclass(frozen=True)
class Profile:
    """A quantity sampled over a strictly increasing grid of scales.

    ``values`` aligns with ``grid``; points where the quantity is undefined
    (a magnitude at a singular scale) hold NaN rather than being dropped.
    ``quantity`` tags what was sampled: ``spread_<q>``, ``magnitude``,
    ``maxdiv`` or ``dimension``.
    """

    grid: np.ndarray
    values: np.ndarray
    quantity: str

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be 1-d arrays of equal length")
        if grid.size == 0:
            raise ValueError("a profile needs at least one grid point")
        if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
            raise ValueError("grid scales must be positive and strictly increasing")
        grid.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @property
    def value_column(self) -> str:
        return "dimension" if self.quantity == "dimension" else "value"

    def undefined_indices(self) -> np.ndarray:
        return np.flatnonzero(np.isnan(self.values))


def spread_profile(space, grid, q: float = 0.0, threads: int | None = None) -> Profile:
    """Order-q spread sampled over a grid of scales.

    Values are deterministic and independent of evaluation order; grid
    points may be evaluated in parallel.
    """
    grid = np.asarray(grid, dtype=float)
    q = check_order(q)
    values = parallel_map(lambda tv: spread_q(space, tv, q).value, grid, threads)
    return Profile(grid=grid, values=np.array(values), quantity=f"spread_{order_label(q)}")


def write_profile_csv(profile: Profile, path) -> None:
    """Write ``t,<value>`` rows with 17 significant digits; NaN prints as nan."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"t,{profile.value_column}\n")
        for t, v in zip(profile.grid, profile.values):
            fh.write(f"{t:.17g},{v:.17g}\n")
