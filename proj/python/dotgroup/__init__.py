"""Polygonal grouping of dot patterns."""

from ._dotgroup import (
    DataError,
    GeometryError,
    Hypothesis,
    builtin_shape,
    builtin_shape_names,
    generate_pattern,
    group,
    matching_score,
    minimum_spanning_tree,
    retrieve,
    run_cli,
    select,
    skeleton,
    subsample_edges,
)

__all__ = [
    "DataError",
    "GeometryError",
    "Hypothesis",
    "builtin_shape",
    "builtin_shape_names",
    "generate_pattern",
    "group",
    "matching_score",
    "minimum_spanning_tree",
    "retrieve",
    "run_cli",
    "select",
    "skeleton",
    "subsample_edges",
]
