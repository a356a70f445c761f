"""Finite metric space containers, validation, scaling views, and graph metrics.

Four immutable space representations are provided:

* :class:`DistanceMatrix` -- a dense symmetric matrix of pairwise distances.
* :class:`PointCloud` -- Euclidean coordinates; distances are evaluated on
  demand and the full matrix is never formed above a size limit.
* :class:`WeightedSpace` -- a space plus a positive mass per point.
* :class:`ScaledView` -- a space with every distance multiplied by a factor,
  without rematerializing anything.

All containers are frozen and their arrays are made read-only, so every
operation in the package is pure and safe to call from multiple threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path
from scipy.spatial.distance import cdist

#: Largest point count for which a dense n x n matrix is formed by default.
#: Above this, point-cloud kernels stream row blocks instead.
MATERIALIZE_LIMIT = 2048

#: Relative slack used by the triangle-inequality check; distances derived
#: from coordinates or shortest paths carry rounding of this order.
TRIANGLE_RTOL = 1e-12


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Violation:
    """First violated invariant found by :func:`validate`.

    ``kind`` is one of ``"nonfinite"``, ``"negative"``, ``"diagonal"``,
    ``"asymmetry"``, ``"triangle"``, ``"mass"``; ``indices`` locates the
    offending entry or triple.
    """

    kind: str
    indices: tuple
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.indices}: {self.detail}"


@dataclass(frozen=True)
class DistanceMatrix:
    """Dense pairwise-distance matrix for a finite space.

    Construction only checks the shape; call :func:`validate` to verify
    symmetry, zero diagonal, non-negativity and (optionally) the triangle
    inequality.
    """

    d: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {d.shape}")
        if d.shape[0] == 0:
            raise ValueError("empty space: a metric space needs at least one point")
        object.__setattr__(self, "d", _freeze(d))

    @property
    def n(self) -> int:
        return self.d.shape[0]


@dataclass(frozen=True)
class PointCloud:
    """Points in Euclidean space; the metric is d(i, j) = ||x_i - x_j||_2.

    The pairwise matrix is only materialized for small clouds (see
    :meth:`distance_matrix`); kernels stream row blocks for large ones.
    """

    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        if c.ndim == 1:
            c = c[:, None]
        if c.ndim != 2:
            raise ValueError(f"coordinates must be a 2-d array, got shape {c.shape}")
        if c.shape[0] == 0:
            raise ValueError("empty space: a point cloud needs at least one point")
        object.__setattr__(self, "coords", _freeze(c))

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    def row_distances(self, i: int) -> np.ndarray:
        """Distances from point ``i`` to every point, without the full matrix."""
        if not 0 <= i < self.n:
            raise IndexError(f"point index {i} out of range for {self.n} points")
        diff = self.coords - self.coords[i]
        return np.sqrt((diff * diff).sum(axis=1))

    def distance_matrix(self, limit: int | None = None) -> np.ndarray:
        """Materialize the full matrix; refuses above ``limit`` points."""
        cap = MATERIALIZE_LIMIT if limit is None else limit
        if self.n > cap:
            raise ValueError(
                f"refusing to materialize a {self.n} x {self.n} distance matrix "
                f"(limit {cap}); raise the limit explicitly if this is intended"
            )
        return cdist(self.coords, self.coords)


@dataclass(frozen=True)
class ScaledView:
    """A space with all distances multiplied by ``t``, lazily.

    Views of views collapse to a single factor so that rescaling twice is
    bit-identical to rescaling once by the product.
    """

    base: object
    t: float

    def __post_init__(self):
        t = float(self.t)
        if not np.isfinite(t) or t <= 0:
            raise ValueError(f"scale factor must be a positive finite real, got {t}")
        object.__setattr__(self, "t", t)


@dataclass(frozen=True)
class WeightedSpace:
    """A space together with a positive mass for each point.

    With all masses equal this reduces to the plain (uniform) space for the
    size functions that accept both.
    """

    space: object
    mass: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mass, dtype=float)
        if m.ndim != 1:
            raise ValueError("mass must be a 1-d array")
        if m.shape[0] != npoints(self.space):
            raise ValueError(
                f"mass length {m.shape[0]} does not match point count {npoints(self.space)}"
            )
        if not np.all(np.isfinite(m)) or np.any(m <= 0):
            raise ValueError("every mass must be positive and finite")
        object.__setattr__(self, "mass", _freeze(m))


def unwrap(space) -> tuple[object, float, np.ndarray | None]:
    """Reduce nested views to ``(base, scale, mass)``.

    ``base`` is a DistanceMatrix or PointCloud, ``scale`` the accumulated
    scaling factor, ``mass`` the point masses or None for the uniform case.
    """
    t = 1.0
    mass = None
    while True:
        if isinstance(space, ScaledView):
            t = t * space.t
            space = space.base
        elif isinstance(space, WeightedSpace):
            if mass is not None:
                raise ValueError("nested weighted spaces are ambiguous")
            mass = space.mass
            space = space.space
        elif isinstance(space, (DistanceMatrix, PointCloud)):
            return space, t, mass
        else:
            raise TypeError(f"not a metric space: {type(space).__name__}")


def npoints(space) -> int:
    """Number of points of any space representation."""
    base, _, _ = unwrap(space)
    return base.n


def scale(space, t: float) -> ScaledView:
    """View of ``space`` with every distance multiplied by ``t`` (> 0).

    Scaling a view multiplies the factors once, so distances of
    ``scale(scale(X, t), u)`` equal those of ``scale(X, t * u)`` exactly.
    """
    t = float(t)
    if not np.isfinite(t) or t <= 0:
        raise ValueError(f"scale factor must be a positive finite real, got {t}")
    if isinstance(space, ScaledView):
        return ScaledView(space.base, space.t * t)
    return ScaledView(space, t)


def distance_matrix(space, limit: int | None = None) -> np.ndarray:
    """Dense distance matrix of any space, with its scale factor applied."""
    base, t, _ = unwrap(space)
    if isinstance(base, DistanceMatrix):
        d = base.d
    else:
        d = base.distance_matrix(limit=limit)
    return d if t == 1.0 else t * d


def _first_index(cond: np.ndarray):
    hits = np.argwhere(cond)
    return tuple(int(v) for v in hits[0]) if hits.size else None


def validate(space, check_triangle: bool = False, limit: int | None = None) -> Violation | None:
    """Check the metric-space invariants; return the first violation or None.

    Checks, in order: finiteness, non-negativity, zero diagonal, symmetry,
    and (only when ``check_triangle`` is set, an O(n^3) pass) the triangle
    inequality with relative slack ``TRIANGLE_RTOL``.  For weighted spaces
    the mass vector is checked first.  Point-cloud distances satisfy the
    invariants by construction; the triangle check materializes the matrix,
    subject to ``limit``.
    """
    base, t, mass = unwrap(space)

    if mass is not None:
        bad = _first_index(~np.isfinite(mass) | (mass <= 0))
        if bad is not None:
            return Violation("mass", bad, f"mass {mass[bad[0]]} is not a positive real")

    if isinstance(base, PointCloud):
        bad = _first_index(~np.isfinite(base.coords))
        if bad is not None:
            return Violation("nonfinite", bad, "coordinate is not finite")
        if not check_triangle:
            return None
        d = t * base.distance_matrix(limit=limit)
        return _validate_triangle(d)

    d = t * base.d
    bad = _first_index(~np.isfinite(d))
    if bad is not None:
        return Violation("nonfinite", bad, "distance is not finite")
    bad = _first_index(d < 0)
    if bad is not None:
        return Violation("negative", bad, f"distance {d[bad]} is negative")
    diag = np.diagonal(d)
    bad = _first_index(diag != 0)
    if bad is not None:
        return Violation("diagonal", bad, f"self-distance {diag[bad[0]]} is nonzero")
    bad = _first_index(d != d.T)
    if bad is not None:
        i, j = bad
        return Violation("asymmetry", (i, j), f"d[{i},{j}]={d[i, j]} but d[{j},{i}]={d[j, i]}")
    if check_triangle:
        return _validate_triangle(d)
    return None


def _validate_triangle(d: np.ndarray) -> Violation | None:
    slack = TRIANGLE_RTOL * max(float(d.max()), 1.0)
    n = d.shape[0]
    for k in range(n):
        detour = d[:, k][:, None] + d[k, :][None, :]
        bad = _first_index(d > detour + slack)
        if bad is not None:
            i, j = bad
            return Violation(
                "triangle",
                (i, j, k),
                f"d[{i},{j}]={d[i, j]} exceeds d[{i},{k}] + d[{k},{j}]={detour[i, j]}",
            )
    return None


def require_valid(space, check_triangle: bool = False) -> None:
    """Raise ValueError carrying the violation report if the space is invalid."""
    violation = validate(space, check_triangle=check_triangle)
    if violation is not None:
        raise ValueError(f"invalid metric space: {violation}")


def diameter(space) -> float:
    """Largest pairwise distance; 0 for a single point."""
    base, t, _ = unwrap(space)
    if isinstance(base, DistanceMatrix):
        return t * float(base.d.max())
    if base.n == 1:
        return 0.0
    best = 0.0
    chunk = max(1, 4_000_000 // base.n)
    for i0 in range(0, base.n, chunk):
        block = cdist(base.coords[i0 : i0 + chunk], base.coords)
        best = max(best, float(block.max()))
    return t * best


def graph_metric(n_vertices: int, edges) -> DistanceMatrix:
    """All-pairs shortest-path metric of an undirected weighted graph.

    ``edges`` is an iterable of ``(i, j, length)`` with positive lengths;
    parallel edges keep the shortest.  Raises ValueError for disconnected
    graphs (some distance would be infinite).  Paths are found by repeated
    single-source Dijkstra relaxation, which is plenty for the small graphs
    this package works with.
    """
    n = int(n_vertices)
    if n < 1:
        raise ValueError("a graph metric needs at least one vertex")
    shortest: dict[tuple[int, int], float] = {}
    for edge in edges:
        i, j, length = edge
        i, j, length = int(i), int(j), float(length)
        if not 0 <= i < n or not 0 <= j < n:
            raise ValueError(f"edge ({i}, {j}) out of range for {n} vertices")
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        if not np.isfinite(length) or length <= 0:
            raise ValueError(f"edge ({i}, {j}) has non-positive length {length}")
        key = (min(i, j), max(i, j))
        shortest[key] = min(shortest.get(key, np.inf), length)
    if n > 1 and not shortest:
        raise ValueError("disconnected graph: no edges")
    rows = [k[0] for k in shortest] + [k[1] for k in shortest]
    cols = [k[1] for k in shortest] + [k[0] for k in shortest]
    vals = list(shortest.values()) * 2
    adjacency = csr_matrix((vals, (rows, cols)), shape=(n, n))
    d = shortest_path(adjacency, method="D", directed=False)
    if np.isinf(d).any():
        i, j = _first_index(np.isinf(d))
        raise ValueError(f"disconnected graph: no path between vertices {i} and {j}")
    # Dijkstra can leave last-ulp asymmetries; keep the metric exactly symmetric.
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d)


# ---------------------------------------------------------------------------
# CSV formats: matrices are n lines of n comma-separated reals, point clouds
# one point per line; no headers.  Floats are written with 17 significant
# digits so values round-trip exactly.

def write_distance_matrix_csv(space, path) -> None:
    np.savetxt(path, distance_matrix(space), fmt="%.17g", delimiter=",")


def read_distance_matrix_csv(path) -> DistanceMatrix:
    return DistanceMatrix(np.loadtxt(path, delimiter=",", ndmin=2))


def write_point_cloud_csv(cloud: PointCloud, path) -> None:
    base, t, _ = unwrap(cloud)
    if not isinstance(base, PointCloud):
        raise TypeError("not a point cloud")
    np.savetxt(path, t * base.coords, fmt="%.17g", delimiter=",")


def read_point_cloud_csv(path) -> PointCloud:
    return PointCloud(np.loadtxt(path, delimiter=",", ndmin=2))
