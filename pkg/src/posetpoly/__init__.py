"""Marked order and chain polytopes of finite marked posets."""

from .poset import MarkedPoset, Poset, ResourceError, marked_poset, validate
from .regularize import regularize, is_regular
from .polytope import (
    HRep,
    NotRegularError,
    chain_hrep,
    facet_count_chain,
    facet_count_order,
    has_star_relation,
    order_hrep,
)
from .lattice import enumerate_chain_points, enumerate_order_points
from .decompose import decompose, is_c_indecomposable
from .equivalence import build_unimodular_map, verify_equivalence
from .families import demazure_poset, gt_poset, star_poset, symplectic_poset

__all__ = [
    "HRep",
    "MarkedPoset",
    "NotRegularError",
    "Poset",
    "ResourceError",
    "build_unimodular_map",
    "chain_hrep",
    "decompose",
    "demazure_poset",
    "enumerate_chain_points",
    "enumerate_order_points",
    "facet_count_chain",
    "facet_count_order",
    "gt_poset",
    "has_star_relation",
    "is_c_indecomposable",
    "is_regular",
    "marked_poset",
    "order_hrep",
    "regularize",
    "star_poset",
    "symplectic_poset",
    "validate",
    "verify_equivalence",
]
