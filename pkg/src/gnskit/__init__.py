"""Exact computation with generalized numerical semigroups (GNS).

A GNS is a submonoid of N^d with finite complement; everything here is
driven by that finite complement (the gap set): classification of gap
sets, exact enumeration of Frobenius GNS with a prescribed Frobenius
gap, and the constants/constructions bounding those counts.
"""

from gnskit.core import (
    GapSet,
    Point,
    GnsError,
    DimensionMismatch,
    ZeroIsGap,
    ClosureViolation,
    natural_leq,
    validate,
    genus,
    frobenius_allowable,
    pseudo_frobenius,
    gns_type,
    box_norm,
    load_gap_set,
    dump_gap_set,
)
from gnskit.orders import MaximalGapOrder, compare, phi_compare, frobenius_gap
from gnskit.classify import classification, is_frobenius_gns
from gnskit.enumeration import count_frobenius_gns, list_frobenius_gns, brute_force_count

__version__ = "0.1.0"

__all__ = [
    "GapSet",
    "Point",
    "GnsError",
    "DimensionMismatch",
    "ZeroIsGap",
    "ClosureViolation",
    "natural_leq",
    "validate",
    "genus",
    "frobenius_allowable",
    "pseudo_frobenius",
    "gns_type",
    "box_norm",
    "load_gap_set",
    "dump_gap_set",
    "MaximalGapOrder",
    "compare",
    "phi_compare",
    "frobenius_gap",
    "classification",
    "is_frobenius_gns",
    "count_frobenius_gns",
    "list_frobenius_gns",
    "brute_force_count",
    "__version__",
]
