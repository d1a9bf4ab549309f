"""Sampling-based probabilistic verification of black-box functions against
sets described by signed distance functions."""

from .bounds import dkw_epsilon, dkw_samples, scenario_samples
from .ecdf import SampleSet, build, ecdf_eval, probability_nonpositive, quantile
from .errors import (ConvergenceError, InputError, InsufficientSamplesWarning, NumericError,
                     ParameterError, SpecError, StateError)
from .model import (DistributionSpec, NetworkSpec, demo_network, forward, init_network,
                    load_network, pipeline, sample_inputs, sample_outputs)
from .projection import ProjectionResult, distance_to_polytope, project_halfspace, project_polytope
from .sdf import (Composite, NormBall, Polytope, SetSpec, Shifted, box, classification_polytope,
                  complement, contains, difference, evaluate, intersection, interval, shift_level,
                  union)
from .verify import SetModification, Verdict, VerificationProblem

__version__ = "0.1.0"
