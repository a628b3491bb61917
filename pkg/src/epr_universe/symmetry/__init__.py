"""Automorphism groups of complexes and finite permutation groups."""
from .frucht import (
    DEFAULT_ORDER_LIMIT,
    FruchtGraph,
    cyclic_group,
    dihedral_group,
    frucht_construction,
    frucht_realize,
    klein_four_group,
    symmetric_group,
    trivial_group,
)
from .perm import PermGroup, Permutation, StabilizerChain, elements, group_order, orbits
from .search import (
    SymmetryScore,
    automorphisms,
    brute_force_automorphisms,
    is_automorphism,
    symmetry_score,
)

__all__ = [
    "DEFAULT_ORDER_LIMIT", "FruchtGraph", "PermGroup", "Permutation", "StabilizerChain",
    "SymmetryScore", "automorphisms", "brute_force_automorphisms", "cyclic_group",
    "dihedral_group", "elements", "frucht_construction", "frucht_realize", "group_order",
    "is_automorphism", "klein_four_group", "orbits", "symmetric_group", "symmetry_score",
    "trivial_group",
]
