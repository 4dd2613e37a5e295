"""Sorting signed permutations by reversals, optimally, in O(n log n)."""

from .permutation import (
    IdentityPair,
    InvalidPairError,
    PairSequence,
    ReplayError,
    Reversal,
    SignedPermutation,
    adjacencies,
    apply_reversal,
    good_pairs,
    mu,
    replay_pairs,
    restrict,
)
from .components import (
    Component,
    ComponentForest,
    EligiblePair,
    FramedInterval,
    clear_bad_components,
    eligible_sets,
    find_components,
    has_bad_component,
)
from .revtree import RevTree
from .solver import SortingScenario, do_good, recover, reversal_distance, sort_good_tree, sort_signed_permutation
from .oracle import (
    DistanceTable,
    ResourceLimitError,
    VerificationReport,
    bfs_distance_table,
    random_permutation,
    verify_scenario,
)

__all__ = [
    "IdentityPair",
    "InvalidPairError",
    "PairSequence",
    "ReplayError",
    "Reversal",
    "SignedPermutation",
    "adjacencies",
    "apply_reversal",
    "good_pairs",
    "mu",
    "replay_pairs",
    "restrict",
    "Component",
    "ComponentForest",
    "EligiblePair",
    "FramedInterval",
    "clear_bad_components",
    "eligible_sets",
    "find_components",
    "has_bad_component",
    "RevTree",
    "SortingScenario",
    "do_good",
    "recover",
    "reversal_distance",
    "sort_good_tree",
    "sort_signed_permutation",
    "DistanceTable",
    "ResourceLimitError",
    "VerificationReport",
    "bfs_distance_table",
    "random_permutation",
    "verify_scenario",
]

__version__ = "0.1.0"
