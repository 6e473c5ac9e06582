"""Max edge coloring: approximation algorithms, lower bound and exact oracle."""
from .algorithms import AlgorithmTrace, Step, algorithm1, best_of, kk_greedy
from .bounds import RankProfile, lower_bound, rank_weights
from .graph import (
    ColoringSolution,
    InstanceError,
    NotATree,
    TreeView,
    Violation,
    WeightedGraph,
    parse_instance,
    serialize_instance,
    sorted_incidence,
    validate_solution,
    validate_tree,
)
from .oracle import OptimalCertificate, OracleBudgetExceeded, check_certificate, exact_mec

__all__ = [
    "AlgorithmTrace",
    "ColoringSolution",
    "InstanceError",
    "NotATree",
    "OptimalCertificate",
    "OracleBudgetExceeded",
    "RankProfile",
    "Step",
    "TreeView",
    "Violation",
    "WeightedGraph",
    "algorithm1",
    "best_of",
    "check_certificate",
    "exact_mec",
    "kk_greedy",
    "lower_bound",
    "parse_instance",
    "rank_weights",
    "serialize_instance",
    "sorted_incidence",
    "validate_solution",
    "validate_tree",
]
