"""Numerical toolkit for concave Young functions: expression trees with
closed-form densities, the mu-weighted L2 metric, fixed-point families,
approximation sequences, and Young-function characterizations of L^p norms."""

from .funcrep import (
    Compose, Convex, DescriptorError, Id, IdPlusSoft, Log1p, ParameterError, Power, PowerOf,
    Scale, Sum, WeightVector, YoungExpr, combine, density, evaluate, parse_descriptor,
    serialize, validate,
)
from .quad import QuadResult, Verdict, integrate_mu, tail_integral
from .ymetric import Membership, density_level, metric_d, norm_mu, proportional
from .fixed_b import FnRoster, gen_hierarchy, member_fixed, order_witness, scale_to_b, set_distance
from .density import theorem7_seq, theorem8_seq, verify_convergence
from .lpspace import (
    DiscreteMeasureSpace, MeasurableFn, asymptotic_slope, decompose_theorem9, min_scaling,
    norm_identity, sandwich_check, scalar_recover, tail_identity,
)

__version__ = "0.1.0"
