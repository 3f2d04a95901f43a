"""Isometric sequences of finite metric spaces.

Configurations (edge colourings of K_n), isometry classes of subsets, the
classification checks for small sequences, exhaustive enumeration and
Euclidean embeddability.
"""
from .config import (ConfigError, DistanceConfiguration, FamilySpec, MetricRealization, PointSet,
                     construct_family, from_points, make_config, realize)
from .isometry import (SubsetKey, canonical_key, classes, count_classes, is_closed,
                       isometric_sequence, m_set, profile)
from .structure import (ShapeVerdict, TheoremReport, classify_a3, classify_a3_eq_2, recognize_shape,
                        verify_thm_a1, verify_thm_a2, verify_thm_a4)
from .embed import (EmbedReport, EmbeddingKind, FTableEntry, GramAnalysis, coordinates,
                    embeddability, f_table, generate_embedding, gram, ns_bound, search_min_dim,
                    self_check)
from .enumeration import EnumSpec, SweepReport, enumerate_configs, sweep

__all__ = [
    "ConfigError", "DistanceConfiguration", "FamilySpec", "MetricRealization", "PointSet",
    "construct_family", "from_points", "make_config", "realize",
    "SubsetKey", "canonical_key", "classes", "count_classes", "is_closed",
    "isometric_sequence", "m_set", "profile",
    "ShapeVerdict", "TheoremReport", "classify_a3", "classify_a3_eq_2", "recognize_shape",
    "verify_thm_a1", "verify_thm_a2", "verify_thm_a4",
    "EmbedReport", "EmbeddingKind", "FTableEntry", "GramAnalysis", "coordinates",
    "embeddability", "f_table", "generate_embedding", "gram", "ns_bound", "search_min_dim",
    "self_check",
    "EnumSpec", "SweepReport", "enumerate_configs", "sweep",
]
