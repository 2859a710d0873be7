"""Query-efficient preference elicitation and weak Condorcet winners for
profiles single peaked on trees."""

from .core import (
    AdversaryBugError,
    Axis,
    Profile,
    Ranking,
    SPTreeError,
    Tree,
    pairwise_margin,
    restrict,
    weak_condorcet_set,
)
from .oracle import Oracle, ProfileOracle, QueryLedger, interleaving_check, query, query_count

__version__ = "0.1.0"

__all__ = [
    "AdversaryBugError",
    "Axis",
    "Oracle",
    "Profile",
    "ProfileOracle",
    "QueryLedger",
    "Ranking",
    "SPTreeError",
    "Tree",
    "interleaving_check",
    "pairwise_margin",
    "query",
    "query_count",
    "restrict",
    "weak_condorcet_set",
]
