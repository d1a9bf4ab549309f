"""
Dense ReLU networks, seeded input distributions and the sampling pipeline
``x -> f(x) -> g(f(x))``.
"""

import json
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import rng
from ._parallel import map_ranges
from .errors import NumericError, ParameterError, SpecError
from .sdf import evaluate

ACTIVATIONS = ("relu", "identity")
DISTRIBUTIONS = ("cauchy_standard", "gaussian_iid")


@dataclass(frozen=True, eq=False)
class Layer:
    W: np.ndarray
    b: np.ndarray
    activation: str = "identity"

    @property
    def n_in(self):
        return self.W.shape[1]

    @property
    def n_out(self):
        return self.W.shape[0]


class NetworkSpec:
    """Sequence of affine layers each followed by ``relu`` or ``identity``."""

    def __init__(self, layers):
        layers = list(layers)
        if not layers:
            raise SpecError("network needs at least one layer")
        checked = []
        for k, layer in enumerate(layers):
            if isinstance(layer, Layer):
                W, b, act = layer.W, layer.b, layer.activation
            else:
                W, b, act = layer
            W = np.array(W, dtype=np.float64)
            b = np.array(b, dtype=np.float64)
            if W.ndim != 2 or W.size == 0:
                raise SpecError(f"layer {k}: W must be a nonempty matrix")
            if b.shape != (W.shape[0],):
                raise SpecError(f"layer {k}: b has shape {b.shape}, expected ({W.shape[0]},)")
            if not (np.all(np.isfinite(W)) and np.all(np.isfinite(b))):
                raise SpecError(f"layer {k}: weights must be finite")
            if act not in ACTIVATIONS:
                raise SpecError(f"layer {k}: unknown activation {act!r}")
            if checked and checked[-1].n_out != W.shape[1]:
                raise SpecError(
                    f"layer {k}: expects {W.shape[1]} inputs but layer {k - 1} "
                    f"produces {checked[-1].n_out}")
            W.flags.writeable = False
            b.flags.writeable = False
            checked.append(Layer(W, b, act))
        self.layers = tuple(checked)

    @property
    def n_in(self):
        return self.layers[0].n_in

    @property
    def n_out(self):
        return self.layers[-1].n_out

    @property
    def sizes(self):
        return (self.n_in,) + tuple(l.n_out for l in self.layers)

    def __call__(self, x):
        return forward(self, x)

    def to_dict(self):
        return {"layers": [{"W": l.W.tolist(), "b": l.b.tolist(), "activation": l.activation}
                           for l in self.layers]}


def forward(net, x):
    """Evaluate ``net`` on one point ``(d,)`` or a batch ``(n, d)``."""
    h = np.asarray(x, dtype=np.float64)
    single = h.ndim == 1
    if single:
        h = h[None, :]
    if h.ndim != 2 or h.shape[1] != net.n_in:
        raise SpecError(f"input dimension {np.shape(x)[-1]} != network input {net.n_in}")
    for k, layer in enumerate(net.layers):
        with np.errstate(over="ignore", invalid="ignore"):
            h = h @ layer.W.T + layer.b
        if layer.activation == "relu":
            h = np.maximum(h, 0.0)
        if not np.all(np.isfinite(h)):
            raise NumericError(f"non-finite activation in layer {k}", layer=k)
    return h[0] if single else h


def init_network(sizes, seed, activation="relu"):
    """Random dense network with N(0, 1/fan_in) weights and biases.

    Hidden layers use ``activation``; the output layer is linear. Draws come
    from the portable stream in :mod:`sampver.rng`, so the same ``sizes`` and
    ``seed`` always give the same weights.
    """
    sizes = [int(s) for s in sizes]
    if len(sizes) < 2 or min(sizes) < 1:
        raise ParameterError("sizes needs an input and at least one output width")
    layers, pos = [], 0
    for k, (n_in, n_out) in enumerate(zip(sizes[:-1], sizes[1:])):
        scale = 1.0 / math.sqrt(n_in)
        W = rng.standard_normal(seed, pos, n_out * n_in).reshape(n_out, n_in) * scale
        pos += n_out * n_in
        b = rng.standard_normal(seed, pos, n_out) * scale
        pos += n_out
        act = "identity" if k == len(sizes) - 2 else activation
        layers.append(Layer(W, b, act))
    return NetworkSpec(layers)


def load_network(document):
    """Parse a weight document (JSON text, bytes or an already-decoded dict).

    Schema: ``{"layers": [{"W": [[...]], "b": [...], "activation": "relu"|"identity"}]}``.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SpecError(f"weight file is not valid JSON: {exc}") from None
    if not isinstance(document, dict) or not isinstance(document.get("layers"), list):
        raise SpecError("weight document must be an object with a 'layers' list")
    layers = []
    for k, entry in enumerate(document["layers"]):
        if not isinstance(entry, dict):
            raise SpecError(f"layer {k}: expected an object")
        missing = {"W", "b"} - entry.keys()
        if missing:
            raise SpecError(f"layer {k}: missing field(s) {sorted(missing)}")
        try:
            W = np.array(entry["W"], dtype=np.float64)
            b = np.array(entry["b"], dtype=np.float64)
        except (TypeError, ValueError):
            raise SpecError(f"layer {k}: W and b must be numeric arrays") from None
        layers.append((W, b, entry.get("activation", "identity")))
    return NetworkSpec(layers)


def dump_network(net):
    return json.dumps(net.to_dict())


def demo_network():
    """The canonical seeded 4-10-10-2 ReLU network shipped with the package."""
    text = resources.files("sampver").joinpath("data/demo_net_4_10_10_2.json").read_text()
    return load_network(text)


@dataclass(frozen=True)
class DistributionSpec:
    kind: str
    dimension: int
    seed: int = 0
    mean: float = 0.0
    variance: float = 1.0

    def __post_init__(self):
        if self.kind not in DISTRIBUTIONS:
            raise ParameterError(f"unknown distribution {self.kind!r}")
        if isinstance(self.dimension, bool) or not isinstance(self.dimension, int) \
                or self.dimension < 1:
            raise ParameterError("dimension must be a positive integer")
        if not (math.isfinite(self.variance) and self.variance > 0):
            raise ParameterError("variance must be positive")
        if not math.isfinite(self.mean):
            raise ParameterError("mean must be finite")
        rng._check_seed(self.seed)

    def draw(self, start, stop):
        """Samples ``start .. stop-1`` of the stream as an array ``(stop-start, d)``."""
        d = self.dimension
        lo, count = start * d, (stop - start) * d
        if self.kind == "cauchy_standard":
            x = rng.standard_cauchy(self.seed, lo, count)
        else:
            x = rng.standard_normal(self.seed, lo, count) * math.sqrt(self.variance) + self.mean
        return x.reshape(stop - start, d)


def _check_n(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    return int(n)


def sample_inputs(d, n):
    """``n`` i.i.d. input points; a prefix of every longer draw with the same seed."""
    n = _check_n(n)
    return map_ranges(d.draw, n).reshape(n, d.dimension)


def sample_outputs(net, d, n):
    """Network outputs for ``n`` inputs drawn from ``d``."""
    n = _check_n(n)
    if d.dimension != net.n_in:
        raise SpecError(f"distribution dimension {d.dimension} != network input {net.n_in}")
    return map_ranges(lambda s, e: forward(net, d.draw(s, e)), n).reshape(n, net.n_out)


def pipeline(net, d, spec, n):
    """SDF values ``g(f(x_i))`` for ``n`` draws, in stream order."""
    n = _check_n(n)
    if d.dimension != net.n_in:
        raise SpecError(f"distribution dimension {d.dimension} != network input {net.n_in}")
    if spec.dim != net.n_out:
        raise SpecError(f"network output {net.n_out} != set dimension {spec.dim}")
    return map_ranges(lambda s, e: evaluate(spec, forward(net, d.draw(s, e))), n)

