"""Empirical CDF and quantiles of scalar SDF evaluations."""

import math

import numpy as np

from .errors import InputError, ParameterError


class SampleSet:
    """Immutable sorted sample of scalar values.

    Build with :func:`build`; ``values`` is a read-only, nondecreasing array.
    """

    __slots__ = ("values",)

    def __init__(self, values):
        self.values = values

    @property
    def count(self):
        return self.values.size

    def __len__(self):
        return self.values.size

    def __repr__(self):
        return f"SampleSet(count={self.count}, min={self.values[0]!r}, max={self.values[-1]!r})"


def build(values):
    arr = np.array(values, dtype=np.float64).ravel()
    if arr.size == 0:
        raise InputError("sample set must be nonempty")
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise InputError(f"sample {int(bad[0])} is not finite ({arr[bad[0]]!r})")
    arr.sort(kind="stable")
    arr.flags.writeable = False
    return SampleSet(arr)


def ecdf_eval(s, y):
    """Fraction of samples ``<= y`` (right-continuous step function)."""
    return int(np.searchsorted(s.values, y, side="right")) / s.count


def _rank(p, n):
    # smallest k with k/n >= p, evaluated exactly as ecdf_eval compares
    k = min(max(math.ceil(p * n), 1), n)
    while k > 1 and (k - 1) / n >= p:
        k -= 1
    while k < n and k / n < p:
        k += 1
    return k


def quantile(s, p, method="order", tol=0.0, max_iter=2000):
    """Generalised inverse ``inf {y : ecdf(y) >= p}`` for ``p`` in (0, 1].

    The default returns the ``ceil(p N)``-th order statistic, which is the
    infimum exactly. ``method="bisect"`` finds it by bisection on the step
    function instead; it brackets the same point and stops when the bracket
    is no wider than ``tol`` (0 means run to floating-point resolution).
    """
    if isinstance(p, bool) or not 0.0 < p <= 1.0:
        raise ParameterError(f"p must be in (0,1], got {p!r}")
    if method == "order":
        return float(s.values[_rank(p, s.count) - 1])
    if method != "bisect":
        raise ParameterError(f"unknown quantile method {method!r}")

    v = s.values
    hi = float(v[-1])
    lo = float(v[0]) - max(1.0, abs(float(v[0])))
    for _ in range(max_iter):
        mid = lo + (hi - lo) / 2.0
        if mid <= lo or mid >= hi or hi - lo <= tol:
            break
        if ecdf_eval(s, mid) >= p:
            hi = mid
        else:
            lo = mid
    return hi


def probability_nonpositive(s):
    """Empirical estimate of ``P(g <= 0)``."""
    return ecdf_eval(s, 0.0)


def sup_error(s, cdf):
    """Kolmogorov distance ``sup_y |ecdf(y) - cdf(y)|`` to a continuous CDF."""
    F = np.asarray(cdf(s.values), dtype=np.float64)
    n = s.count
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))
