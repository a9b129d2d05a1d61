"""Weighted-graph p-Laplacian operators and p-Bakry-Emery curvature."""

from ._pcurv import (
    BallTooLargeError,
    DegenerateFunctionError,
    Graph,
    MissingValueError,
    ParseError,
    UnknownVertexError,
    __version__,
    aux_g,
    aux_g_min,
    aux_h,
    aux_h_min,
    brute_force_curvature,
    cartesian_product,
    cd_gap,
    cd_ratio,
    check_cd,
    counterexample_function,
    delta_p,
    estimate_curvature,
    gamma2_decomposition_gap,
    gamma2_p,
    gamma_p,
    make_complete,
    make_cycle,
    make_hypercube,
    make_path,
    make_star,
    negativity_threshold,
    parse_graph,
    path_leaf_curvature,
    phi_p,
    run_verify,
    serialize_graph,
    star_leaf_curvature,
    verify_product_superadditivity_failure,
)

__all__ = [
    "BallTooLargeError",
    "DegenerateFunctionError",
    "Graph",
    "MissingValueError",
    "ParseError",
    "UnknownVertexError",
    "__version__",
    "aux_g",
    "aux_g_min",
    "aux_h",
    "aux_h_min",
    "brute_force_curvature",
    "cartesian_product",
    "cd_gap",
    "cd_ratio",
    "check_cd",
    "counterexample_function",
    "delta_p",
    "estimate_curvature",
    "gamma2_decomposition_gap",
    "gamma2_p",
    "gamma_p",
    "make_complete",
    "make_cycle",
    "make_hypercube",
    "make_path",
    "make_star",
    "negativity_threshold",
    "parse_graph",
    "path_leaf_curvature",
    "phi_p",
    "run_verify",
    "serialize_graph",
    "star_leaf_curvature",
    "verify_product_superadditivity_failure",
]
