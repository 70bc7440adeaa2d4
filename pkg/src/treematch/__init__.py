"""Approximate retrieval of labeled trees from a trie-indexed database."""

from .distance import CostParams, DistanceMatrix, cutoff_window, dist, dist_oracle
from .search import Match, SearchParams, SearchTrace, approx_search, linear_scan
from .synth import GenParams, PerturbParams, gen_database, perturb
from .tree import (
    Tree,
    TreeDatabase,
    classify_pair,
    compare_vertex_lists,
    delinearize,
    format_tree,
    linearize,
    parse_database,
    parse_tree,
    read_database,
)
from .trie import TreeTrie, build_trie

__all__ = [
    "CostParams",
    "DistanceMatrix",
    "GenParams",
    "Match",
    "PerturbParams",
    "SearchParams",
    "SearchTrace",
    "Tree",
    "TreeDatabase",
    "TreeTrie",
    "approx_search",
    "build_trie",
    "classify_pair",
    "compare_vertex_lists",
    "cutoff_window",
    "delinearize",
    "dist",
    "dist_oracle",
    "format_tree",
    "gen_database",
    "linear_scan",
    "linearize",
    "parse_database",
    "parse_tree",
    "perturb",
    "read_database",
]
