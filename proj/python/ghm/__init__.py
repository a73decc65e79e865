"""Weighted graph homomorphism numbers, homomorphism models and step graphons.

Vertex indices, labels and block indices are 0-based here; the JSON file
formats used by the ``ghm`` command-line tool are 1-based.
"""

from ._core import (
    CapExceeded,
    ContractError,
    Error,
    HomModel,
    LabeledPattern,
    MixedSizeError,
    ParseError,
    Pattern,
    StepGraphon,
    cut_distance,
    cut_norm,
    density,
    disjoint_union,
    edit_distance,
    enumerate_labeled_patterns,
    enumerate_patterns,
    featurize,
    fit,
    fit_equivariant,
    glued_union,
    hom,
    hom_labeled,
    permute,
    predict,
    predict_at,
    predict_equivariant,
    sample_graph,
    separate,
    separate_labeled,
)

__version__ = "0.1.0"
