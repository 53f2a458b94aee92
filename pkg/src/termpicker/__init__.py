"""Vocabulary-term recommendation from schema-level patterns.

The pipeline: parse N-Quads dumps, partition them by pay-level domain, mine
schema-level patterns (SLPs), index term usage, and rank candidate RDF types
and properties for a partially built query SLP with trainable
learning-to-rank models.
"""

__version__ = "0.1.0"

from .features import FEATURE_NAMES, BackgroundCorpus, FeatureVector, build_index
from .metrics import average_precision, reciprocal_rank_at_k
from .nquads import Quad, RdfObject, parse_nquads, serialize_quad
from .ranking import (
    Hyperparams,
    rank,
    recommend_all,
    train_coordinate_ascent,
    train_random_forests,
)
from .slp import (
    Position,
    Slp,
    SlpSet,
    compute_slps,
    slp_extend,
    slp_remove,
    slp_subset,
    slp_union,
)

__all__ = [
    "__version__",
    "BackgroundCorpus",
    "FEATURE_NAMES",
    "FeatureVector",
    "Hyperparams",
    "Position",
    "Quad",
    "RdfObject",
    "Slp",
    "SlpSet",
    "average_precision",
    "build_index",
    "compute_slps",
    "parse_nquads",
    "rank",
    "reciprocal_rank_at_k",
    "recommend_all",
    "serialize_quad",
    "slp_extend",
    "slp_remove",
    "slp_subset",
    "slp_union",
    "train_coordinate_ascent",
    "train_random_forests",
]
