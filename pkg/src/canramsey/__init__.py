"""Canonical Ramsey properties of even cycles in random graphs."""
from __future__ import annotations

__version__ = "0.1.0"

from .graph import ColouredGraph, GnpSpec, Graph, OrientedGraph, sample_gnp, verify_rg_properties
from .kernels import BACKEND
from .patterns import (
    canonical_profile,
    decide_canarrow,
    enumerate_lex_patterns,
    find_canonical_copies,
    m2_density,
)
from .paths import count_paths, is_locally_dense, rainbow_focused, trichotomy
from .cycles import cycle_census, find_transitive_subtournament
from .heavy import build_layers, classify_heavy, count_layered_paths
from .regularity import pair_regularity, transversal_cycle_count

__all__ = [
    "BACKEND",
    "ColouredGraph",
    "GnpSpec",
    "Graph",
    "OrientedGraph",
    "build_layers",
    "canonical_profile",
    "classify_heavy",
    "count_layered_paths",
    "count_paths",
    "cycle_census",
    "decide_canarrow",
    "enumerate_lex_patterns",
    "find_canonical_copies",
    "find_transitive_subtournament",
    "is_locally_dense",
    "m2_density",
    "pair_regularity",
    "rainbow_focused",
    "sample_gnp",
    "transversal_cycle_count",
    "trichotomy",
    "verify_rg_properties",
]
