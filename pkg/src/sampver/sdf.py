"""
Constraint sets encoded as signed distance functions.

A set ``C`` is represented by a function ``g`` with ``g(y) <= 0`` exactly when
``y`` is in ``C`` (boundary points count as inside). Leaf sets are norm balls
and polytopes; composites combine children with min/max/negation and a
:class:`Shifted` node moves the zero level set of its child by ``theta``.

Composite values are pseudo-distances: the sign is exact, the magnitude is
only a bound on the true distance.

All evaluators accept a single point of shape ``(d,)`` and return a float, or
a batch of shape ``(n, d)`` and return an array of length ``n``.
"""

import json
import math

import numpy as np

from .errors import ConvergenceError, InputError, SpecError
from .projection import FEAS_TOL, MAX_ITER, OPT_TOL, project_batch

NORM_ORDERS = {1: 1, 2: 2, "inf": np.inf}
COMPOSITE_OPS = ("union", "intersection", "complement", "difference")


class SetSpec:
    """Base class for every set description."""

    dim: int

    def evaluate(self, y, tol=FEAS_TOL):
        return evaluate(self, y, tol)

    def contains(self, y, tol=FEAS_TOL):
        return contains(self, y, tol)

    def shift(self, theta):
        return shift_level(self, theta)

    def to_dict(self):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({json.dumps(self.to_dict())})"


def _vector(values, name):
    try:
        arr = np.array(values, dtype=np.float64)
    except (TypeError, ValueError):
        raise SpecError(f"{name} must be numeric") from None
    if not np.all(np.isfinite(arr)):
        raise SpecError(f"{name} must be finite")
    return arr


class NormBall(SetSpec):
    """``{y : |y - center|_q <= radius}`` for ``q`` in {1, 2, inf}."""

    def __init__(self, center, radius, norm=2):
        center = _vector(center, "center")
        if center.ndim != 1 or center.size < 1:
            raise SpecError("center must be a nonempty vector")
        if isinstance(radius, bool) or not (isinstance(radius, (int, float, np.floating, np.integer))
                and math.isfinite(radius) and radius > 0):
            raise SpecError(f"radius must be a positive finite number, got {radius!r}")
        if isinstance(norm, str):
            norm = norm.lower()
        elif norm == np.inf:
            norm = "inf"
        if norm not in NORM_ORDERS:
            raise SpecError(f"norm must be one of 1, 2, 'inf'; got {norm!r}")
        self.center = center
        self.center.flags.writeable = False
        self.radius = float(radius)
        self.norm = norm
        self.dim = center.size

    def to_dict(self):
        return {"kind": "norm_ball", "center": self.center.tolist(),
                "radius": self.radius, "norm": self.norm}


class Polytope(SetSpec):
    """``{y : A y <= b}``; must be nonempty and every row of ``A`` nonzero.

    Inside, the value is the signed distance to the nearest facet hyperplane,
    ``max_i (A_i y - b_i) / |A_i|``. Outside, it is the Euclidean distance to
    the polytope obtained by projection.
    """

    def __init__(self, A, b, check_nonempty=True):
        A = _vector(A, "A")
        b = _vector(b, "b")
        if A.ndim == 1:
            A = A[None, :]
        if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
            raise SpecError("A must be a nonempty matrix")
        if b.ndim != 1 or b.shape[0] != A.shape[0]:
            raise SpecError(f"A has {A.shape[0]} rows but b has shape {b.shape}")
        norms = np.linalg.norm(A, axis=1)
        zero = np.flatnonzero(norms == 0.0)
        if zero.size:
            raise SpecError(f"row {int(zero[0])} of A is zero")
        self.A, self.b, self.row_norms = A, b, norms
        for arr in (A, b, norms):
            arr.flags.writeable = False
        self.dim = A.shape[1]
        if check_nonempty and not self._feasible():
            raise SpecError("polytope is empty")

    def _feasible(self):
        from scipy.optimize import linprog

        res = linprog(np.zeros(self.dim), A_ub=self.A, b_ub=self.b,
                      bounds=[(None, None)] * self.dim, method="highs")
        return res.status != 2

    def to_dict(self):
        return {"kind": "polytope", "A": self.A.tolist(), "b": self.b.tolist()}


class Composite(SetSpec):
    """Boolean combination of child sets.

    ``union`` takes the min, ``intersection`` the max, ``complement`` negates
    its single child and ``difference(A, B)`` is ``max(g_A, -g_B)``.
    """

    def __init__(self, op, children):
        if op not in COMPOSITE_OPS:
            raise SpecError(f"unknown composite op {op!r}")
        children = tuple(children)
        want = 1 if op == "complement" else 2
        if len(children) != want:
            raise SpecError(f"{op} takes exactly {want} child set(s), got {len(children)}")
        if not all(isinstance(c, SetSpec) for c in children):
            raise SpecError("composite children must be set specs")
        dims = {c.dim for c in children}
        if len(dims) != 1:
            raise SpecError(f"children have mismatched dimensions {sorted(dims)}")
        self.op = op
        self.children = children
        self.dim = dims.pop()

    def to_dict(self):
        return {"kind": self.op, "children": [c.to_dict() for c in self.children]}


class Shifted(SetSpec):
    """Level set ``{y : g(y) - theta <= 0}`` of the inner set's function."""

    def __init__(self, inner, theta):
        if not isinstance(inner, SetSpec):
            raise SpecError("shifted spec must wrap a set spec")
        theta = float(theta)
        if not math.isfinite(theta):
            raise SpecError("theta must be finite")
        self.inner = inner
        self.theta = theta
        self.dim = inner.dim

    def to_dict(self):
        return {"kind": "shifted", "theta": self.theta, "children": [self.inner.to_dict()]}


def union(a, b):
    return Composite("union", (a, b))


def intersection(a, b):
    return Composite("intersection", (a, b))


def complement(a):
    return Composite("complement", (a,))


def difference(a, b):
    return Composite("difference", (a, b))


def interval(lo, hi):
    """The 1-D set ``[lo, hi]`` as a two-facet polytope."""
    return Polytope([[1.0], [-1.0]], [hi, -lo])


def box(lo, hi):
    lo = np.asarray(lo, dtype=np.float64)
    hi = np.asarray(hi, dtype=np.float64)
    eye = np.eye(lo.size)
    return Polytope(np.vstack([eye, -eye]), np.concatenate([hi, -lo]))


def classification_polytope(n_classes, target):
    """Logit vectors whose largest entry is ``target``.

    One facet per other class ``i``: ``y_i - y_target <= 0``.
    """
    if not 0 <= target < n_classes or n_classes < 2:
        raise SpecError("target must index one of at least two classes")
    rows = []
    for i in range(n_classes):
        if i == target:
            continue
        row = np.zeros(n_classes)
        row[i], row[target] = 1.0, -1.0
        rows.append(row)
    return Polytope(np.array(rows), np.zeros(n_classes - 1))


def shift_level(spec, theta):
    """Return the set ``{g - theta <= 0}``; nested shifts are merged."""
    if isinstance(spec, Shifted):
        return Shifted(spec.inner, spec.theta + float(theta))
    return Shifted(spec, theta)


# ---------------------------------------------------------------- evaluation


def _points(spec, y):
    Y = np.asarray(y, dtype=np.float64)
    single = Y.ndim == 1
    if single:
        Y = Y[None, :]
    if Y.ndim != 2 or Y.shape[1] < 1:
        raise InputError(f"points must have shape (d,) or (n, d), got {np.shape(y)}")
    if Y.shape[1] != spec.dim:
        raise SpecError(f"point dimension {Y.shape[1]} != set dimension {spec.dim}")
    if not np.all(np.isfinite(Y)):
        raise InputError("points contain non-finite coordinates")
    return Y, single


def _norm_ball(spec, Y):
    return np.linalg.norm(Y - spec.center, ord=NORM_ORDERS[spec.norm], axis=1) - spec.radius


def _polytope(spec, Y, exact, tol, max_iter):
    slack = Y @ spec.A.T - spec.b
    # nearest-facet value inside; a lower bound on the distance outside
    value = np.max(slack / spec.row_norms, axis=1)
    outside = np.flatnonzero(np.any(slack > 0.0, axis=1))
    if exact and outside.size:
        Z, _, conv = project_batch(spec.A, spec.b, Y[outside], tol, OPT_TOL, max_iter)
        if not conv.all():
            raise ConvergenceError("polytope projection did not converge")
        dist = np.linalg.norm(Y[outside] - Z, axis=1)
        value[outside] = np.maximum(dist, value[outside])
    return value


def _eval(spec, Y, exact, tol, max_iter):
    if isinstance(spec, NormBall):
        return _norm_ball(spec, Y)
    if isinstance(spec, Polytope):
        return _polytope(spec, Y, exact, tol, max_iter)
    if isinstance(spec, Shifted):
        # magnitudes matter once the zero level moves
        inner = _eval(spec.inner, Y, exact or spec.theta != 0.0, tol, max_iter)
        return inner - spec.theta
    if isinstance(spec, Composite):
        vals = [_eval(c, Y, exact, tol, max_iter) for c in spec.children]
        if spec.op == "union":
            return np.minimum(vals[0], vals[1])
        if spec.op == "intersection":
            return np.maximum(vals[0], vals[1])
        if spec.op == "complement":
            return -vals[0]
        return np.maximum(vals[0], -vals[1])
    raise SpecError(f"not a set spec: {spec!r}")


def eval_norm_ball(spec, y):
    Y, single = _points(spec, y)
    out = _norm_ball(spec, Y)
    return float(out[0]) if single else out


def eval_polytope(spec, y, tol=FEAS_TOL, max_iter=MAX_ITER):
    Y, single = _points(spec, y)
    out = _polytope(spec, Y, True, tol, max_iter)
    return float(out[0]) if single else out


def evaluate(spec, y, tol=FEAS_TOL, max_iter=MAX_ITER):
    """Signed distance value(s) of ``spec`` at ``y``."""
    if not tol > 0:
        raise InputError("tol must be positive")
    Y, single = _points(spec, y)
    out = _eval(spec, Y, True, tol, max_iter)
    return float(out[0]) if single else out


def contains(spec, y, tol=FEAS_TOL, max_iter=MAX_ITER):
    """Membership test ``evaluate(spec, y) <= 0``.

    Unshifted polytope leaves are decided by ``A y <= b`` directly; replacing
    one positive exterior distance with another positive number cannot change
    the sign of any min/max/negation above it, so no projection is needed.
    """
    Y, single = _points(spec, y)
    out = _eval(spec, Y, False, tol, max_iter) <= 0.0
    return bool(out[0]) if single else out


# ---------------------------------------------------------------- JSON


def to_dict(spec):
    return spec.to_dict()


def from_dict(doc):
    """Build a spec from its JSON document form (see README for the schema)."""
    if not isinstance(doc, dict):
        raise SpecError("set spec must be a JSON object")
    kind = doc.get("kind")
    try:
        if kind == "norm_ball":
            norm = doc.get("norm", 2)
            return NormBall(doc["center"], doc["radius"], norm)
        if kind == "polytope":
            return Polytope(doc["A"], doc["b"])
        if kind in COMPOSITE_OPS:
            return Composite(kind, [from_dict(c) for c in doc["children"]])
        if kind == "shifted":
            children = doc["children"]
            if not isinstance(children, list) or len(children) != 1:
                raise SpecError("shifted spec needs exactly one child")
            return Shifted(from_dict(children[0]), doc["theta"])
    except KeyError as exc:
        raise SpecError(f"{kind} spec is missing field {exc.args[0]!r}") from None
    except TypeError as exc:
        raise SpecError(f"malformed {kind} spec: {exc}") from None
    raise SpecError(f"unknown set kind {kind!r}")


def dumps(spec, **kwargs):
    return json.dumps(spec.to_dict(), **kwargs)


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from None
    return from_dict(doc)
