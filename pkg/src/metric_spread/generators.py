"""Constructors for the example spaces: toy metrics, graphs, grids, fractals.

The fractal approximations come from iterated function systems: a small set
of contracting affine maps whose depth-fold compositions, applied to a few
seed points, land on the attractor.  Coincident image points (shared corners
of adjacent segments, say) are merged by a tolerance-based deduplication so
the point counts come out exactly: 2^d * 2 points for the middle-thirds
Cantor construction, 4^d + 1 for the Koch curve, (3^(d+1) + 3)/2 for the
Sierpinski triangle.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .spaces import DistanceMatrix, PointCloud, graph_metric

#: Dedup grid size as a fraction of the point set's extent: distinct fractal
#: vertices are separated by at least contraction^depth of the extent, far
#: above this, while floating-point twins land well inside it.
DEDUP_RTOL = 1e-9


def three_point_r() -> DistanceMatrix:
    """Three points: a close pair at distance 1, both 1000 away from the third.

    Scaled up, the space passes through one-point, two-point and three-point
    regimes, making the plateau structure of spread profiles visible.
    """
    return DistanceMatrix([[0.0, 1000.0, 1000.0], [1000.0, 0.0, 1.0], [1000.0, 1.0, 0.0]])


def k32() -> DistanceMatrix:
    """Complete bipartite graph K_{3,2} with unit edges, as a 5-point metric.

    Opposite sides are at distance 1, same-side points at distance 2.  Its
    similarity matrix is exactly singular at scale t = ln(sqrt 2), so the
    magnitude profile has a singularity while spread profiles stay finite.
    """
    d = np.full((5, 5), 2.0)
    np.fill_diagonal(d, 0.0)
    d[:3, 3:] = 1.0
    d[3:, :3] = 1.0
    return DistanceMatrix(d)


def linear_tree_metric(n_vertices: int) -> DistanceMatrix:
    """Path graph on n vertices with unit edges: d(i, j) = |i - j|."""
    n = int(n_vertices)
    if n < 1:
        raise ValueError(f"need at least 1 vertex, got {n}")
    i = np.arange(n)
    return DistanceMatrix(np.abs(i[:, None] - i[None, :]).astype(float))


def corona_metric(n_vertices: int) -> DistanceMatrix:
    """Star (corona) on n vertices: center 0 at distance 1 from each leaf,
    leaves at mutual distance 2."""
    n = int(n_vertices)
    if n < 2:
        raise ValueError(f"need at least 2 vertices, got {n}")
    d = np.full((n, n), 2.0)
    d[0, :] = 1.0
    d[:, 0] = 1.0
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d)


def cycle_metric(n_vertices: int) -> DistanceMatrix:
    """Cycle graph on n vertices with unit edges: d(i, j) = min(|i-j|, n-|i-j|).

    A homogeneous space: every point looks the same, so all its spread
    orders coincide with its magnitude.
    """
    n = int(n_vertices)
    if n < 3:
        raise ValueError(f"need at least 3 vertices, got {n}")
    i = np.arange(n)
    gap = np.abs(i[:, None] - i[None, :])
    return DistanceMatrix(np.minimum(gap, n - gap).astype(float))


def grid(rows: int, cols: int, spacing: float = 1.0) -> PointCloud:
    """Planar lattice of rows x cols points with the given interpoint distance."""
    rows, cols, spacing = int(rows), int(cols), float(spacing)
    if rows < 1 or cols < 1:
        raise ValueError(f"grid needs rows, cols >= 1, got {rows} x {cols}")
    if not math.isfinite(spacing) or spacing <= 0:
        raise ValueError(f"spacing must be a positive real, got {spacing}")
    r, c = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    coords = np.column_stack([c.ravel(), r.ravel()]) * spacing
    return PointCloud(coords)


# ---------------------------------------------------------------------------
# Iterated function systems

@dataclass(frozen=True)
class IfsSystem:
    """Contracting affine maps x -> A x + b, seed points, and an iteration depth."""

    maps: tuple
    seeds: np.ndarray
    depth: int

    def __post_init__(self):
        seeds = np.asarray(self.seeds, dtype=float)
        if seeds.ndim == 1:
            seeds = seeds[:, None]
        if seeds.ndim != 2 or seeds.shape[0] == 0:
            raise ValueError("seeds must be a non-empty array of points")
        dim = seeds.shape[1]
        if dim not in (1, 2):
            raise ValueError(f"only dimensions 1 and 2 are supported, got {dim}")
        if int(self.depth) < 0:
            raise ValueError("depth must be non-negative")
        checked = []
        for matrix, offset in self.maps:
            matrix = np.asarray(matrix, dtype=float)
            offset = np.asarray(offset, dtype=float)
            if matrix.shape != (dim, dim) or offset.shape != (dim,):
                raise ValueError(f"map shapes must be ({dim},{dim}) and ({dim},)")
            norm = float(np.linalg.norm(matrix, 2))
            if norm >= 1.0:
                raise ValueError(f"map is not a contraction: operator norm {norm}")
            checked.append((matrix, offset))
        if not checked:
            raise ValueError("an iterated function system needs at least one map")
        object.__setattr__(self, "maps", tuple(checked))
        object.__setattr__(self, "seeds", seeds)
        object.__setattr__(self, "depth", int(self.depth))


def dedup_points(points: np.ndarray, tol: float) -> np.ndarray:
    """Merge points within ``tol`` of each other, keeping one representative.

    Points are sorted lexicographically first, so the result is deterministic
    and a second pass is a no-op (survivors are pairwise farther than tol).
    Uses a cell hash with neighbor lookup, so merging does not depend on
    which side of a cell boundary a floating-point twin lands.
    """
    points = np.asarray(points, dtype=float)
    points = points[np.lexsort(points.T[::-1])]
    if tol <= 0:
        raise ValueError("dedup tolerance must be positive")
    dim = points.shape[1]
    cells = np.floor(points / tol).astype(np.int64)
    offsets = list(product((-1, 0, 1), repeat=dim))
    occupied: dict[tuple, list[int]] = {}
    keep: list[int] = []
    for row in range(points.shape[0]):
        cell = tuple(cells[row])
        p = points[row]
        duplicate = False
        for off in offsets:
            neighbor = tuple(cell[d] + off[d] for d in range(dim))
            for j in occupied.get(neighbor, ()):
                if float(np.linalg.norm(points[j] - p)) <= tol:
                    duplicate = True
                    break
            if duplicate:
                break
        if not duplicate:
            keep.append(row)
            occupied.setdefault(cell, []).append(row)
    return points[keep]


def ifs_points(system: IfsSystem, dedup_tolerance: float = DEDUP_RTOL) -> PointCloud:
    """All images of the seeds under every depth-fold composition of the maps.

    Expansion runs level by level (the image set of the image set), which
    yields the same point set as enumerating compositions but keeps the
    working set small.  After each level, points closer than
    ``dedup_tolerance`` times the current extent are merged.
    """
    points = system.seeds
    for _ in range(system.depth):
        points = np.vstack([points @ m.T + b for m, b in system.maps])
        extent = float((points.max(axis=0) - points.min(axis=0)).max())
        # fall back to the coordinate magnitude (or 1) when the set has
        # collapsed to a point, so the cell grid stays representable
        reference = max(extent, float(np.abs(points).max())) or 1.0
        points = dedup_points(points, reference * dedup_tolerance)
    return PointCloud(points)


def cantor_system(depth: int, length: float = 1.0) -> IfsSystem:
    """The two one-third contractions of [0, length] fixing the endpoints."""
    length = float(length)
    if length <= 0:
        raise ValueError(f"length must be positive, got {length}")
    third = np.array([[1.0 / 3.0]])
    maps = ((third, np.array([0.0])), (third, np.array([2.0 * length / 3.0])))
    return IfsSystem(maps=maps, seeds=np.array([[0.0], [length]]), depth=depth)


def koch_system(depth: int, width: float = 1.0) -> IfsSystem:
    """The four one-third similarities building the Koch curve over [0, width]."""
    w = float(width)
    if w <= 0:
        raise ValueError(f"width must be positive, got {w}")
    s = 1.0 / 3.0
    c, sn = 0.5, math.sqrt(3.0) / 2.0
    rot_pos = np.array([[c, -sn], [sn, c]]) * s
    rot_neg = np.array([[c, sn], [-sn, c]]) * s
    third = np.eye(2) * s
    maps = (
        (third, np.array([0.0, 0.0])),
        (rot_pos, np.array([w / 3.0, 0.0])),
        (rot_neg, np.array([w / 2.0, w * sn / 3.0])),
        (third, np.array([2.0 * w / 3.0, 0.0])),
    )
    seeds = np.array([[0.0, 0.0], [w, 0.0]])
    return IfsSystem(maps=maps, seeds=seeds, depth=depth)


def sierpinski_system(depth: int, width: float = 1.0) -> IfsSystem:
    """Three half-scale maps toward the vertices of an equilateral triangle."""
    w = float(width)
    if w <= 0:
        raise ValueError(f"width must be positive, got {w}")
    vertices = np.array([[0.0, 0.0], [w, 0.0], [w / 2.0, w * math.sqrt(3.0) / 2.0]])
    half = np.eye(2) * 0.5
    maps = tuple((half, v / 2.0) for v in vertices)
    return IfsSystem(maps=maps, seeds=vertices, depth=depth)


def cantor(depth: int, length: float = 1.0) -> PointCloud:
    """Depth-d middle-thirds Cantor approximation: 2^d * 2 points on [0, length]."""
    return ifs_points(cantor_system(depth, length))


def koch(depth: int, width: float = 1.0) -> PointCloud:
    """Depth-d Koch curve approximation: 4^d + 1 points over a base of ``width``."""
    return ifs_points(koch_system(depth, width))


def sierpinski(depth: int, width: float = 1.0) -> PointCloud:
    """Depth-d Sierpinski approximation: (3^(d+1) + 3)/2 points, triangle side ``width``."""
    return ifs_points(sierpinski_system(depth, width))


# ---------------------------------------------------------------------------
# Random trees (test support)

def random_tree(n_vertices: int, seed: int) -> list[tuple[int, int, float]]:
    """Uniform random labeled tree on n vertices as a unit-length edge list.

    A random sequence of length n-2 over the vertex labels is decoded into
    its tree, so every labeled tree is equally likely and the result is
    reproducible from the seed.
    """
    n = int(n_vertices)
    if n < 1:
        raise ValueError(f"need at least 1 vertex, got {n}")
    if n == 1:
        return []
    if n == 2:
        return [(0, 1, 1.0)]
    rng = np.random.default_rng(seed)
    sequence = rng.integers(0, n, size=n - 2)
    degree = np.ones(n, dtype=int)
    for v in sequence:
        degree[v] += 1
    leaves = [int(v) for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in sequence:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, int(v), 1.0))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, int(v))
    last = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((last[0], last[1], 1.0))
    return edges


def random_tree_metric(n_vertices: int, seed: int) -> DistanceMatrix:
    """Shortest-path metric of :func:`random_tree`."""
    n = int(n_vertices)
    return graph_metric(n, random_tree(n, seed))
