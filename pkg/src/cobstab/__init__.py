"""Exact stability conditions on a lifted category of cobordism ends.

The base model is a desk-scale category of bricks on an elliptic curve with
exact rational charges; objects are lifted to integer heights, cobordisms are
turned into cone decompositions, and Harder-Narasimhan filtrations are found
by a rewriting engine.  K0 and the cobordism group are computed as finitely
presented abelian groups.
"""

from .base import Atom, BaseObject, Brick, Grading, central_charge, degree_at_intersection, hom_dim
from .cones import Cone, Leaf, MorphismTag, ZERO, render
from .errors import CobstabError
from .hn import HNFiltration, hn_of_spec, normalize, verify_axioms, check_local_finiteness
from .k0 import k0_presentation, omega_lag_presentation, theta_map, check_assumptions, euler_radical
from .lift import CobordismSpec, End, LiftedGenerator, cone_decomposition, validate_kappa
from .phase import Angle, Charge, phase_of_charge

__all__ = [
    "Angle", "Atom", "BaseObject", "Brick", "Charge", "CobordismSpec", "CobstabError", "Cone",
    "End", "Grading", "HNFiltration", "Leaf", "LiftedGenerator", "MorphismTag", "ZERO",
    "central_charge", "check_assumptions", "check_local_finiteness", "cone_decomposition",
    "degree_at_intersection", "euler_radical", "hn_of_spec", "hom_dim", "k0_presentation",
    "normalize", "omega_lag_presentation", "phase_of_charge", "render", "theta_map",
    "validate_kappa", "verify_axioms",
]
