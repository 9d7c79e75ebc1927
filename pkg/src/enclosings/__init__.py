"""Enclose edge decompositions of complete multigraphs in 2-edge-connected
r-factorizations: condition batteries, constructive pipelines, and
brute-force oracles."""

from .mgraph import Multigraph, complete_multigraph
from .decomp import (
    Decomposition,
    PartialDecomposition,
    Enclosing,
    is_admissible,
    admissibility_violation,
    restrict,
    s_count,
    s_uv_count,
    verify_enclosing,
)
from .conditions import (
    ConditionReport,
    EnclosureParams,
    check_a_prime,
    check_b,
    check_c,
    check_theorem15,
    make_params,
    theorem15_constant,
)
from .extend import (
    ExtensionTrace,
    bryant_decompose,
    color_one_edge,
    color_one_edge_with_recolor,
    enclose_in_mu_kn,
    extend_to_r_via_matching,
    pad_to_p,
    proper_padding,
    replay_trace,
)
from .detach import (
    DetachmentWitness,
    Triad,
    build_amalgamated_triad,
    fair_detach,
    is_good_triad,
    verify_detachment,
)
from .oracle import (
    EnclosureSearchResult,
    SearchStats,
    brute_force_admissible,
    brute_force_enclose,
    enumerate_decompositions,
    random_admissible,
)

__all__ = [
    "Multigraph",
    "complete_multigraph",
    "Decomposition",
    "PartialDecomposition",
    "Enclosing",
    "is_admissible",
    "admissibility_violation",
    "restrict",
    "s_count",
    "s_uv_count",
    "verify_enclosing",
    "ConditionReport",
    "EnclosureParams",
    "check_a_prime",
    "check_b",
    "check_c",
    "check_theorem15",
    "make_params",
    "theorem15_constant",
    "ExtensionTrace",
    "bryant_decompose",
    "color_one_edge",
    "color_one_edge_with_recolor",
    "enclose_in_mu_kn",
    "extend_to_r_via_matching",
    "pad_to_p",
    "proper_padding",
    "replay_trace",
    "DetachmentWitness",
    "Triad",
    "build_amalgamated_triad",
    "fair_detach",
    "is_good_triad",
    "verify_detachment",
    "EnclosureSearchResult",
    "SearchStats",
    "brute_force_admissible",
    "brute_force_enclose",
    "enumerate_decompositions",
    "random_admissible",
]
