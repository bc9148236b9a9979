"""Blockmodel entropy significance tests, the neoSBM and partition metrics."""

from ._core import (
    CapacityError,
    Error,
    Graph,
    ParseError,
    ValidationError,
    ami,
    bell_number,
    bestest,
    expected_mi,
    fit,
    homogeneity,
    load_edge_list,
    load_labels,
    mds,
    min_free_nodes,
    neosbm,
    nmi,
    score,
    theta_sweep,
    two_block,
    vi,
)

__all__ = [
    "CapacityError",
    "Error",
    "Graph",
    "ParseError",
    "ValidationError",
    "ami",
    "bell_number",
    "bestest",
    "expected_mi",
    "fit",
    "homogeneity",
    "load_edge_list",
    "load_labels",
    "mds",
    "min_free_nodes",
    "neosbm",
    "nmi",
    "score",
    "theta_sweep",
    "two_block",
    "vi",
]
