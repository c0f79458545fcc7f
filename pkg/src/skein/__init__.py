"""Exact refined quantum invariants of 3-manifolds from the reduced SU(N,K) category."""

from .category import COH, SPIN, CategoryData, Params, build, build_category, build_params
from .dimensions import count_colorings, verlinde_dim
from .exact import ExactValue, make_field
from .invariants import evaluate_forest, refined_table, tau, tau_refined, tv, tv_refined
from .manifolds import (
    PlumbingForest,
    blow_down,
    chain,
    disjoint_union,
    e8_sphere,
    lens_space,
    linking_matrix,
    mirror,
    s1_x_s2,
    signature,
    structures,
)

__version__ = "0.1.0"

__all__ = [
    "COH", "SPIN", "CategoryData", "Params", "build", "build_category", "build_params",
    "count_colorings", "verlinde_dim", "ExactValue", "make_field",
    "evaluate_forest", "refined_table", "tau", "tau_refined", "tv", "tv_refined",
    "PlumbingForest", "blow_down", "chain", "disjoint_union", "e8_sphere", "lens_space",
    "linking_matrix", "mirror", "s1_x_s2", "signature", "structures",
]
