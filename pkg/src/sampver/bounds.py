"""Sample-size bounds for DKW-based and scenario-based verification."""

import math

from .errors import ParameterError

E_FACTOR = math.e / (math.e - 1.0)


def _open_unit(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not 0.0 < value < 1.0:
        raise ParameterError(f"{name} must be in (0,1), got {value!r}")
    return float(value)


def dkw_samples(epsilon, beta):
    """Samples needed so the empirical CDF is within ``epsilon`` of the true
    CDF (sup norm) with confidence ``1 - beta``::

        N = ceil(-ln(beta / 2) / (2 epsilon**2))
    """
    epsilon = _open_unit("epsilon", epsilon)
    beta = _open_unit("beta", beta)
    return max(1, math.ceil(-math.log(beta / 2.0) / (2.0 * epsilon * epsilon)))


def dkw_epsilon(n, beta):
    """Sup-norm CDF accuracy achieved by ``n`` samples at confidence ``1 - beta``."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParameterError(f"N must be a positive integer, got {n!r}")
    beta = _open_unit("beta", beta)
    return math.sqrt(-math.log(beta / 2.0) / (2.0 * n))


def scenario_samples(delta, beta, n_theta=1):
    """Scenario-program sample count with ``n_theta`` decision variables::

        N = ceil((1/delta) * e/(e-1) * (ln(1/beta) + n_theta))
    """
    delta = _open_unit("delta", delta)
    beta = _open_unit("beta", beta)
    if isinstance(n_theta, bool) or not isinstance(n_theta, int) or n_theta < 1:
        raise ParameterError(f"n_theta must be a positive integer, got {n_theta!r}")
    return max(1, math.ceil(E_FACTOR * (math.log(1.0 / beta) + n_theta) / delta))
