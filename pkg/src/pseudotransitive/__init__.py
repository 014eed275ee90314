"""Strongly pseudo transitive complement orientations and maximum weight independent sets."""

from .core import (
    A,
    B,
    BiOrientation,
    CycleDetected,
    VerifierReport,
    WeightedGraph,
    complement,
    topological_order,
    verify_orientation,
)
from .registry import build, generate
from .solver import ChainResult, PreconditionFailed, max_weight_chain, mwis, oracle_mwis

__all__ = [
    "A",
    "B",
    "BiOrientation",
    "ChainResult",
    "CycleDetected",
    "PreconditionFailed",
    "VerifierReport",
    "WeightedGraph",
    "build",
    "complement",
    "generate",
    "max_weight_chain",
    "mwis",
    "oracle_mwis",
    "topological_order",
    "verify_orientation",
]
