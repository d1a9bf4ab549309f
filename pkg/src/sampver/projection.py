"""
Euclidean projection onto polytopes ``{z : A z <= b}``.

Projection uses Dykstra's cyclic scheme over the individual halfspaces. Each
halfspace projection is closed form, and Dykstra's correction terms make the
iterates converge to the projection onto the intersection (plain alternating
projection would only find *some* feasible point).

Dykstra converges slowly when the projection sits on a sharp vertex, so the
iteration is periodically finished off: facets that are tight (and carry a
nonzero correction term) seed an active set, ``y`` is projected onto their
affine intersection, the set is repaired a few times, and the candidate is
accepted only if it passes the optimality (KKT) checks: feasible, on the
active facets, nonnegative multipliers.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, InputError, ParameterError, SpecError

FEAS_TOL = 1e-9
OPT_TOL = 1e-7
MAX_ITER = 100_000


@dataclass(frozen=True)
class ProjectionResult:
    point: np.ndarray
    distance: float
    iterations: int
    converged: bool


def _as_matrix(A, b):
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    b = np.atleast_1d(np.asarray(b, dtype=np.float64))
    if A.shape[0] != b.shape[0]:
        raise SpecError(f"A has {A.shape[0]} rows but b has length {b.shape[0]}")
    return A, b


def _check_tols(feas_tol, opt_tol, max_iter):
    if not feas_tol > 0 or not opt_tol > 0:
        raise ParameterError("tolerances must be positive")
    if int(max_iter) < 1:
        raise ParameterError("max_iter must be a positive integer")


def project_halfspace(a, b, y):
    """Project ``y`` onto ``{z : a.z <= b}``."""
    a = np.asarray(a, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    nrm2 = float(a @ a)
    if nrm2 == 0.0:
        raise SpecError("halfspace normal must be nonzero")
    viol = float(a @ y) - b
    if viol <= 0.0:
        return y.copy()
    return y - (viol / nrm2) * a


def _polish_sweep(it):
    return it in (1, 2, 4, 8, 16) or it % 16 == 0


def _kkt_projection(A, b, y, active, feas_tol):
    """Project ``y`` starting from an active-set guess.

    Repairs the guess a bounded number of times (add the most violated facet,
    drop the most negative multiplier) and returns a point only once it
    satisfies the KKT conditions; otherwise None.
    """
    active = active.copy()
    for _ in range(2 * A.shape[0] + 2):
        if not active.any():
            active[np.argmax(A @ y - b)] = True
        AS, bS = A[active], b[active]
        G = AS @ AS.T
        lam = np.linalg.lstsq(G, AS @ y - bS, rcond=None)[0]
        for _ in range(2):  # iterative refinement; vertex facets can be nearly parallel
            lam += np.linalg.lstsq(G, AS @ (y - AS.T @ lam) - bS, rcond=None)[0]
        if lam.min() < -1e-10 * (1.0 + float(np.abs(lam).max())):
            active[np.flatnonzero(active)[np.argmin(lam)]] = False
            continue
        z = y - AS.T @ lam
        slack = A @ z - b
        if slack.max() > feas_tol:
            active[np.argmax(slack)] = True
            continue
        if np.max(np.abs(AS @ z - bS)) > feas_tol:
            return None
        return z
    return None


def _finish(A, b, y, x, corrections, feas_tol):
    """Exact projection from an active-set guess, or None if no guess passes KKT."""
    scale = 1.0 + float(np.linalg.norm(y))
    by_correction = np.linalg.norm(corrections, axis=1) > 1e-12 * scale
    tight = (A @ x - b) >= -1e-6 * scale
    tried = []
    for active in (by_correction & tight, tight):
        if any(np.array_equal(active, t) for t in tried):
            continue
        tried.append(active)
        z = _kkt_projection(A, b, y, active, feas_tol)
        if z is not None:
            return z
    return None


def project_batch(A, b, Y, feas_tol=FEAS_TOL, opt_tol=OPT_TOL, max_iter=MAX_ITER, finish=True):
    """Project every row of ``Y`` onto ``{z : A z <= b}``.

    Returns
    -------
    points : ndarray (n, d)
    iterations : ndarray of int (n,)
    converged : ndarray of bool (n,)

    Rows already satisfying ``A y <= b`` are returned untouched with zero
    iterations. The remaining rows are iterated together; a row stops once a
    full sweep moves it by at most ``opt_tol * (1 + |y|)`` and its worst
    constraint violation is at most ``feas_tol``. With ``finish=False`` the
    active-set finishing step is skipped and only Dykstra sweeps run.
    """
    A, b = _as_matrix(A, b)
    _check_tols(feas_tol, opt_tol, max_iter)
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    n, d = Y.shape
    m = A.shape[0]
    norms2 = np.einsum("ij,ij->i", A, A)
    if np.any(norms2 == 0.0):
        raise SpecError("every row of A must be nonzero")

    points = Y.copy()
    iterations = np.zeros(n, dtype=np.int64)
    converged = np.ones(n, dtype=bool)

    idx = np.flatnonzero(np.any(Y @ A.T > b, axis=1))
    if idx.size == 0:
        return points, iterations, converged
    converged[idx] = False

    X = Y[idx].copy()
    P = np.zeros((m, idx.size, d))
    stop = opt_tol * (1.0 + np.linalg.norm(X, axis=1))
    for it in range(1, int(max_iter) + 1):
        prev = X.copy()
        for i in range(m):
            Z = X + P[i]
            viol = Z @ A[i] - b[i]
            X = Z - (np.maximum(viol, 0.0) / norms2[i])[:, None] * A[i]
            P[i] = Z - X
        moved = np.linalg.norm(X - prev, axis=1)
        worst = np.max(X @ A.T - b, axis=1)
        done = (moved <= stop) & (worst <= feas_tol)
        if not finish:
            candidates = ()
        elif _polish_sweep(it):
            candidates = np.arange(idx.size)
        else:
            candidates = np.flatnonzero(done)
        for j in candidates:
            z = _finish(A, b, Y[idx[j]], X[j], P[:, j], feas_tol)
            if z is not None:
                X[j] = z
                done[j] = True
        if done.any():
            fin = idx[done]
            points[fin] = X[done]
            iterations[fin] = it
            converged[fin] = True
            keep = ~done
            idx, X, P, stop = idx[keep], X[keep], P[:, keep], stop[keep]
            if idx.size == 0:
                break
    if idx.size:
        points[idx] = X
        iterations[idx] = int(max_iter)
    return points, iterations, converged


def project_polytope(spec, y, feas_tol=FEAS_TOL, opt_tol=OPT_TOL, max_iter=MAX_ITER,
                     finish=True):
    """Euclidean projection of a single point onto the polytope ``spec``.

    Non-convergence (including a likely empty polytope, which Dykstra cannot
    certify) is reported through ``converged=False`` rather than raised.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise InputError("y must be a single point")
    if not np.all(np.isfinite(y)):
        raise InputError("query point has non-finite coordinates")
    A, b = _as_matrix(spec.A, spec.b)
    if A.shape[1] != y.shape[0]:
        raise SpecError(f"polytope dimension {A.shape[1]} != point dimension {y.shape[0]}")
    pts, its, conv = project_batch(A, b, y[None, :], feas_tol, opt_tol, max_iter, finish)
    z = pts[0]
    return ProjectionResult(z, float(np.linalg.norm(y - z)), int(its[0]), bool(conv[0]))


def distance_to_polytope(spec, y, feas_tol=FEAS_TOL, opt_tol=OPT_TOL, max_iter=MAX_ITER):
    res = project_polytope(spec, y, feas_tol, opt_tol, max_iter)
    if not res.converged:
        raise ConvergenceError(
            f"polytope projection did not converge in {res.iterations} sweeps "
            "(is the polytope empty?)")
    return res.distance
