"""Bihyperbolic numbers H2, H2-modules and their convex analysis."""

from .checks import CheckReport, Verdict, check_absorbing, check_balanced, check_decomposition, check_h2_convex, minkowski_sum_subset_check
from .core import (
    E,
    J1,
    J2,
    J3,
    ONE,
    ZERO,
    Bihyperbolic,
    CanonicalCoords,
    compare,
    format_canonical,
    from_canonical,
    inf_h2,
    inverse,
    is_in_null_cone,
    is_nonnegative,
    is_zero_divisor,
    modulus,
    mul,
    parse_canonical,
    sup_h2,
    to_canonical,
)
from .errors import *  # noqa: F401,F403
from .gauge import GaugeResult, gauge_bisection, h2_gauge, real_gauge, unit_sets
from .linear import CanonicalNorm, ComponentNorm, HVector, canonical_norm_eval, project, vec_add, vec_scale
from .metric import H2Metric, Neighborhood, bounded_check, check_metric_axioms, metric_eval, neighborhood_contains
from .seminorms import CoordinateSeminorm, GaugeSeminorm, SupFamily, check_seminorm_axioms, evaluate, is_separated, kernel_check, sup_family
from .sets import LambdaPredicate, NormBall, PolytopeHull, Product, contains, scale, set_from_json
from .verifier import PropertySpec, VerifyReport, reverify, run_suite, verify

__version__ = "0.1.0"
