"""Exact s-invariants of free circle actions on spin cohomology S^2 x S^5's.

The package computes the Kreck-Stolz invariants of circle bundles over two
families of 6-manifolds, searches their parameter spaces, builds infinite
families with fixed invariants and runs the census of the 672 classes.
"""

from .classification import DiffeoClass, admits_free_action, census, class_attributes, class_of, ricci_status
from .families import FamilySpec, certify_family, family_cp2, family_plumbing
from .invariants import (CharData, InvariantError, SInvariants, chardata_cp2, chardata_direct,
                         chardata_from_system, chardata_plumbing, connected_sum_sphere, s_invariants,
                         value_set_check)
from .rational import BezoutPair, ResidueClass, ext_gcd, qz_arith, qz_normalize
from .search import (BudgetExhausted, NoFreeAction, RealizationError, SearchBox, Witness, coverage,
                     enumerate_witnesses, make_witness, realize_target)
from .sixfolds import (EulerClass, SystemOfInvariants, check_realizability, det_at_euler,
                       equivalence_search, orbit_space_admissible, system_from_cp2_bundle,
                       system_from_plumbing)
from .tables import GoldenTable, load_table, verify_table

__version__ = "0.1.0"

__all__ = [
    "BezoutPair", "BudgetExhausted", "CharData", "DiffeoClass", "EulerClass", "FamilySpec",
    "GoldenTable", "InvariantError", "NoFreeAction", "RealizationError", "ResidueClass",
    "SInvariants", "SearchBox", "SystemOfInvariants", "Witness", "admits_free_action", "census",
    "certify_family", "chardata_cp2", "chardata_direct", "chardata_from_system",
    "chardata_plumbing", "check_realizability", "class_attributes", "class_of",
    "connected_sum_sphere", "coverage", "det_at_euler", "enumerate_witnesses",
    "equivalence_search", "ext_gcd", "family_cp2", "family_plumbing", "load_table",
    "make_witness", "orbit_space_admissible", "qz_arith", "qz_normalize", "realize_target",
    "ricci_status", "s_invariants", "system_from_cp2_bundle", "system_from_plumbing",
    "value_set_check", "verify_table",
]
