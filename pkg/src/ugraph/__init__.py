"""Universal graphs for bounded treedepth, pathwidth and treewidth."""

from .decomp import (
    EliminationForest,
    PathDecomposition,
    TreeDecomposition,
    balance_log_depth,
    exact_pathwidth,
    exact_treedepth,
    exact_treewidth,
    reduce,
    simple_kpath_recognize,
    validate,
)
from .embed import embed_any, embed_pathwidth, embed_treedepth, embed_treewidth, embed_tw2
from .errors import (
    ClassViolationError,
    InvariantError,
    ParseError,
    ResourceLimitError,
    SizeLimitError,
    UGraphError,
)
from .graph import INDUCED, SUBGRAPH, Embedding, Graph, JumpSet, verify_embedding
from .iso import are_isomorphic, automorphism_count, canonical_form, enumerate_connected_graphs
from .minor import has_clique_minor
from .universal import (
    UniversalArtifact,
    build_pathwidth_universal,
    build_treedepth_universal,
    build_treewidth_universal,
    build_tw2_quasi_universal,
)

__version__ = "0.1.0"

__all__ = [
    "ClassViolationError", "EliminationForest", "Embedding", "Graph", "INDUCED", "InvariantError",
    "JumpSet", "ParseError", "PathDecomposition", "ResourceLimitError", "SUBGRAPH", "SizeLimitError",
    "TreeDecomposition", "UGraphError", "UniversalArtifact", "are_isomorphic", "automorphism_count",
    "balance_log_depth", "build_pathwidth_universal", "build_treedepth_universal",
    "build_treewidth_universal", "build_tw2_quasi_universal", "canonical_form", "embed_any",
    "embed_pathwidth", "embed_treedepth", "embed_treewidth", "embed_tw2", "enumerate_connected_graphs",
    "exact_pathwidth", "exact_treedepth", "exact_treewidth", "has_clique_minor", "reduce",
    "simple_kpath_recognize", "validate", "verify_embedding",
]
