"""Seeded random-space builders shared across test modules."""

import numpy as np

import metric_spread as ms


def random_cloud(rng, max_n=30, max_dim=3, min_n=2):
    n = int(rng.integers(min_n, max_n + 1))
    dim = int(rng.integers(1, max_dim + 1))
    return ms.PointCloud(rng.random((n, dim)) * float(rng.uniform(0.3, 3.0)))


def random_connected_graph(rng, max_n=15, min_n=2):
    """A random tree plus a few random extra edges, with mixed edge lengths."""
    n = int(rng.integers(min_n, max_n + 1))
    edges = ms.random_tree(n, int(rng.integers(0, 2**31)))
    for _ in range(int(rng.integers(0, n))):
        i, j = rng.integers(0, n, size=2)
        if i != j:
            edges.append((int(i), int(j), float(rng.uniform(0.5, 2.0))))
    return ms.graph_metric(n, edges)


def min_positive_distance(space) -> float:
    d = ms.distance_matrix(space)
    return float(d[d > 0].min())
