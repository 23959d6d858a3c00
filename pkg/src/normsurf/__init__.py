"""Fundamental normal surfaces in closed triangulated 3-manifolds."""

__version__ = "0.1.0"

from .enumeration import (
    FundamentalReport,
    FundamentalSet,
    check_coefficient_bound,
    enumerate_fundamentals,
    fundamental_report,
    is_fundamental,
)
from .normal_coords import (
    NormalVector,
    compatible,
    edge_weight,
    haken_sum,
    is_admissible,
    matching_system,
    satisfies_matching,
    weight,
)
from .surface_builder import build_surface, split_components, surface_invariants
from .triangulation import Triangulation, compute_skeleton, is_orientable, parse_triangulation

__all__ = [
    "FundamentalReport",
    "FundamentalSet",
    "NormalVector",
    "Triangulation",
    "build_surface",
    "check_coefficient_bound",
    "compatible",
    "compute_skeleton",
    "edge_weight",
    "enumerate_fundamentals",
    "fundamental_report",
    "haken_sum",
    "is_admissible",
    "is_fundamental",
    "is_orientable",
    "matching_system",
    "parse_triangulation",
    "satisfies_matching",
    "split_components",
    "surface_invariants",
    "weight",
]
