"""Independent reference computations used by the tests.

Nothing here calls into the code under test.
"""

import bisect
import itertools

import numpy as np
from scipy.spatial import ConvexHull

MASK64 = (1 << 64) - 1


def splitmix64_scalar(seed, i):
    z = (seed + (i + 1) * 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _grid(lo, hi, pitch):
    axes = [np.arange(l, h + pitch / 2, pitch) for l, h in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def grid_distance(A, b, y, lo, hi, pitch):
    """Min distance from ``y`` to grid points (pitch ``pitch``) inside ``A z <= b``."""
    G = _grid(lo, hi, pitch)
    inside = np.all(G @ np.asarray(A).T <= np.asarray(b) + 1e-12, axis=1)
    G = G[inside]
    return float(np.min(np.linalg.norm(G - y, axis=1)))


def grid_distance_refined(A, b, y, lo, hi, pitch, coarse=0.02):
    """Coarse full grid, then a full fine grid in a window around the coarse winner.

    Convexity of the polytope makes the coarse winner lie within a couple of
    coarse cells of the true nearest point.
    """
    G = _grid(lo, hi, coarse)
    G = G[np.all(G @ np.asarray(A).T <= np.asarray(b) + 1e-12, axis=1)]
    best = G[np.argmin(np.linalg.norm(G - y, axis=1))]
    w = 3 * coarse
    return grid_distance(A, b, y, np.maximum(best - w, lo), np.minimum(best + w, hi), pitch)


def grid_boundary_distance_inside(A, b, Y, lo, hi, pitch):
    """Distances from interior points ``Y`` to the nearest grid point of the closed complement."""
    G = _grid(lo, hi, pitch)
    G = G[np.any(G @ np.asarray(A).T >= np.asarray(b) - 1e-12, axis=1)]
    return np.array([np.min(np.linalg.norm(G - y, axis=1)) for y in np.atleast_2d(Y)])


def ecdf_count(values, y):
    """Count of values <= y by sorting (no numpy search)."""
    return bisect.bisect_right(sorted(values), y)


def box_vertices(lo, hi):
    return np.array(list(itertools.product(*zip(lo, hi))), dtype=float)


def random_simplex(rng, d, min_quality=0.08):
    """Vertices and facet inequalities of a random non-sliver simplex.

    Rejects draws whose inradius is below ``min_quality`` times the longest
    edge; a grid cannot resolve the tip of a sliver.
    """
    while True:
        V = rng.uniform(-1, 1, size=(d + 1, d))
        hull = ConvexHull(V)
        inradius = d * hull.volume / hull.area
        edge = max(np.linalg.norm(p - q) for p, q in itertools.combinations(V, 2))
        if inradius >= min_quality * edge:
            eq = hull.equations
            return eq[:, :-1], -eq[:, -1], V


def grid_distance_2d(A, b, Y, lo, hi, pitch):
    """Exhaustive grid minimisation in 2-D for exterior points ``Y``.

    Only grid points of the feasible region that touch an infeasible cell
    (or the grid edge) can be nearest to an exterior point, so the search is
    restricted to that discrete boundary.
    """
    xs = np.arange(lo[0], hi[0] + pitch / 2, pitch)
    ys = np.arange(lo[1], hi[1] + pitch / 2, pitch)
    X1, X2 = np.meshgrid(xs, ys, indexing="ij")
    A, b = np.asarray(A), np.asarray(b)
    inside = np.ones(X1.shape, dtype=bool)
    for a, bi in zip(A, b):
        inside &= a[0] * X1 + a[1] * X2 <= bi + 1e-12
    padded = np.pad(inside, 1, constant_values=False)
    interior = (padded[:-2, 1:-1] & padded[2:, 1:-1] & padded[1:-1, :-2] & padded[1:-1, 2:])
    edge = inside & ~interior
    G = np.stack([X1[edge], X2[edge]], axis=1)
    return np.array([np.min(np.linalg.norm(G - y, axis=1)) for y in np.atleast_2d(Y)])


def grid_distance_descent(A, b, y, lo, hi, pitch, coarse=0.02, half=0.03, max_rounds=50):
    """Grid minimisation for larger dimensions: a coarse full grid, then a fine
    window re-centred on its own winner until it stops moving.

    The squared distance is convex and the feasible grid points sample a
    convex set, so the window walk reaches the global fine-grid minimum up to
    about one fine cell.
    """
    A, b = np.asarray(A), np.asarray(b)
    lo, hi = np.asarray(lo, float), np.asarray(hi, float)
    G = _grid(lo, hi, coarse)
    G = G[np.all(G @ A.T <= b + 1e-12, axis=1)]
    center = G[np.argmin(np.linalg.norm(G - y, axis=1))]
    best = np.inf
    for _ in range(max_rounds):
        # snap the window to the global fine lattice anchored at lo
        wlo = lo + np.floor((np.maximum(center - half, lo) - lo) / pitch) * pitch
        W = _grid(wlo, np.minimum(center + half, hi), pitch)
        W = W[np.all(W @ A.T <= b + 1e-12, axis=1)]
        d = np.linalg.norm(W - y, axis=1)
        k = np.argmin(d)
        if d[k] >= best - 1e-15:
            break
        best, center = d[k], W[k]
    return float(best)
