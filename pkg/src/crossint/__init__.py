"""Exact computation and verification toolkit for cross-intersecting families."""

from .core import (
    CapExceeded,
    Family,
    FamilyFormatError,
    Params,
    binom,
    build_extremal,
    compute_bound,
    is_cross_intersecting,
    parse_family,
    parse_pair,
    serialize_family,
    serialize_pair,
    uniform_bound,
)
from .compression import (
    CompressionTrace,
    NotCrossIntersecting,
    compress_family,
    compress_pair_to_fixpoint,
    compress_to_fixpoint,
    delta,
    is_compressed,
    potential,
)
from .search import (
    DisjointnessGraph,
    SearchResult,
    brute_force_max,
    flow_max,
    max_matching,
    transversal,
)
from .prooftrace import ProofTrace, build_trace

__version__ = "0.1.0"
