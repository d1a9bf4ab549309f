"""
Probabilistic verification (is ``P(g(f(x)) <= 0) >= 1 - delta``?) and
level-set modification (smallest ``theta`` with ``P(g(f(x)) - theta <= 0) >= 1 - delta``).

Two methods are supported:

``DKW``
    Estimate the CDF of the SDF values empirically; the sample count makes the
    estimate uniformly ``epsilon``-accurate with confidence ``1 - beta``.
    ``theta*`` is the empirical ``(1 - delta)``-quantile.
``Scenario``
    Solve ``min theta s.t. g_i - theta <= 0`` over the samples, i.e. take the
    largest sample; the sample count makes ``theta*`` feasible for the chance
    constraint with confidence ``1 - beta``.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import bounds, ecdf
from .errors import InputError, InsufficientSamplesWarning, ParameterError, SpecError, StateError
from .sdf import SetSpec, evaluate, shift_level

DKW = "DKW"
SCENARIO = "Scenario"
ENLARGEMENT = "enlargement"
REDUCTION = "reduction"


def parse_method(name):
    key = str(name).strip().lower()
    if key == "dkw":
        return DKW
    if key == "scenario":
        return SCENARIO
    raise ParameterError(f"method must be 'dkw' or 'scenario', got {name!r}")


@dataclass(frozen=True)
class Verdict:
    satisfied: bool
    estimate: float
    threshold: float
    margin: float
    n_used: int
    n_required: int

    @property
    def guarantee_valid(self):
        return self.n_used >= self.n_required


@dataclass(frozen=True)
class SetModification:
    """``modified_spec`` is ``None`` when only bare SDF values were attached."""

    theta_star: float
    modified_spec: SetSpec
    direction: str


class VerificationProblem:
    """A verification task: method, parameters, set, and (once attached) samples.

    ``samples`` holds the sorted SDF values; when points were attached they are
    kept in ``points`` so a new specification can re-evaluate them.
    """

    def __init__(self, method, delta, beta, epsilon=None, spec=None, conservative=False):
        self.method = parse_method(method)
        self.delta = bounds._open_unit("delta", delta)
        self.beta = bounds._open_unit("beta", beta)
        if self.method == DKW:
            if epsilon is None:
                raise ParameterError("DKW verification requires epsilon")
            self.epsilon = bounds._open_unit("epsilon", epsilon)
        else:
            self.epsilon = None
        self.conservative = bool(conservative) and self.method == DKW
        self.spec = spec
        self.samples = None
        self.points = None

    @classmethod
    def using_dkw(cls, beta, epsilon, delta, spec=None, conservative=False):
        return cls(DKW, delta, beta, epsilon=epsilon, spec=spec, conservative=conservative)

    @classmethod
    def using_scenario(cls, beta, delta, spec=None):
        return cls(SCENARIO, delta, beta, spec=spec)

    def add_specification(self, spec):
        """Replace the set. Attached points are re-evaluated; bare SDF values
        belonged to the old set and are discarded."""
        if not isinstance(spec, SetSpec):
            raise SpecError("specification must be a set spec")
        self.spec = spec
        if self.points is not None:
            self.samples = ecdf.build(evaluate(spec, self.points))
        else:
            self.samples = None
        return self

    def samples_required(self):
        if self.method == DKW:
            return bounds.dkw_samples(self.epsilon, self.beta)
        return bounds.scenario_samples(self.delta, self.beta, n_theta=1)

    def attach_samples(self, outputs, kind=None):
        """Attach output samples, replacing any previous ones.

        A 2-D array (or list of points) is mapped through the set's SDF; a
        flat sequence of numbers is taken as already-evaluated SDF values.
        ``kind`` ("points" or "g") forces one reading.
        """
        arr = np.asarray(outputs, dtype=np.float64)
        if kind is None:
            kind = "points" if arr.ndim == 2 else "g"
        if arr.size == 0:
            raise InputError("no samples given")
        if kind == "points":
            if arr.ndim != 2:
                raise InputError("points must be an (n, d) array")
            if self.spec is None:
                raise StateError("add a specification before attaching output points")
            if arr.shape[1] != self.spec.dim:
                raise SpecError(f"sample dimension {arr.shape[1]} != set dimension {self.spec.dim}")
            values = evaluate(self.spec, arr)
            points = arr
        elif kind == "g":
            if arr.ndim != 1:
                raise InputError("SDF values must be a flat sequence")
            values, points = arr, None
        else:
            raise ParameterError(f"sample kind must be 'points' or 'g', got {kind!r}")

        samples = ecdf.build(values)
        self.samples, self.points = samples, points
        need = self.samples_required()
        if samples.count < need:
            warnings.warn(f"{samples.count} samples attached but the {self.method} bound "
                          f"requires {need}; the guarantee does not hold",
                          InsufficientSamplesWarning, stacklevel=2)
        return self

    def _require_samples(self):
        if self.samples is None:
            raise StateError("no samples attached")
        return self.samples

    def _dkw_level(self, conservative):
        level = 1.0 - self.delta
        if conservative:
            level += self.epsilon
        return level

    def check_probability(self, conservative=None):
        s = self._require_samples()
        estimate = ecdf.probability_nonpositive(s)
        if self.method == DKW:
            if conservative is None:
                conservative = self.conservative
            threshold = self._dkw_level(conservative)
            satisfied = estimate >= threshold
            margin = estimate - threshold
        else:
            threshold = 1.0 - self.delta
            top = float(s.values[-1])
            satisfied = top <= 0.0
            margin = -top
        return Verdict(bool(satisfied), estimate, threshold, margin, s.count,
                       self.samples_required())

    def modify_set(self, conservative=None):
        s = self._require_samples()
        if self.method == DKW:
            if conservative is None:
                conservative = self.conservative
            level = self._dkw_level(conservative)
            if level > 1.0:
                warnings.warn("1 - delta + epsilon exceeds 1; using the sample maximum",
                              stacklevel=2)
                level = 1.0
            theta = ecdf.quantile(s, level)
        else:
            theta = float(s.values[-1])
        direction = ENLARGEMENT if theta > 0 else REDUCTION
        modified = shift_level(self.spec, theta) if self.spec is not None else None
        return SetModification(theta, modified, direction)

    def report(self):
        """Result record with the fixed report field set (timing and seed are
        added by the caller)."""
        verdict = self.check_probability()
        mod = self.modify_set()
        out = {
            "method": self.method,
            "delta": self.delta,
            "beta": self.beta,
            "epsilon": self.epsilon,
            "n_required": verdict.n_required,
            "n_used": verdict.n_used,
            "guarantee_valid": verdict.guarantee_valid,
            "estimate": verdict.estimate,
            "satisfied": verdict.satisfied,
            "theta_star": mod.theta_star,
            "direction": mod.direction,
            "spec": self.spec.to_dict() if self.spec is not None else None,
            "modified_spec": mod.modified_spec.to_dict() if mod.modified_spec else None,
        }
        if self.method == DKW:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                plain, strict = self.check_probability(False), self.check_probability(True)
                out["dkw_modes"] = {
                    "conservative": self.conservative,
                    "plain_threshold": plain.threshold,
                    "plain_satisfied": plain.satisfied,
                    "plain_theta_star": self.modify_set(False).theta_star,
                    "conservative_threshold": strict.threshold,
                    "conservative_satisfied": strict.satisfied,
                    "conservative_theta_star": self.modify_set(True).theta_star,
                }
        return out
