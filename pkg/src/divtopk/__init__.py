"""Exact diversified top-k search.

Computes the maximum-score independent set of size at most k in a
similarity graph, exactly, three ways: plain best-first search, component
decomposition with dynamic-programming merges, and cut-point decomposition.
A streaming driver wraps any incremental or bounding result generator with
provably safe early-stop conditions, and a small text-search pipeline
(TF-IDF scoring, weighted Jaccard similarity) exercises the whole stack at
desk scale.
"""

from .algebra import oplus, oplus_fold, otimes
from .astar import AStarEntry, SearchHeap, astar_bound, astar_search, div_astar
from .baselines import (
    BRUTE_FORCE_NODE_LIMIT,
    GraphTooLargeError,
    brute_force,
    caterpillar_graph,
    fig1_graph,
    fig2_graph,
    greedy,
    random_graph,
)
from .cut import (
    CpTreeNode,
    compress,
    cp_search,
    cptree_construct,
    cut_points,
    div_cut,
)
from .dp import div_dp
from .framework import (
    BOUNDING,
    INCREMENTAL,
    DriverState,
    DriverStats,
    GeneratorContractError,
    IncrementalResults,
    ResultGenerator,
    best_upper_bound,
    div_search,
    necessary_check,
    sufficient_stop,
)
from .graph import (
    DiversityGraph,
    ScoredResult,
    SolutionTable,
    build_diversity_graph,
    connected_components,
    dump_graph,
    graph_json,
    induced_subgraph,
    is_independent,
    load_graph,
)
from .stats import Deadline, SolverStats, SolverTimeout
from .textsearch import (
    Corpus,
    InvertedIndex,
    bounding_generator,
    idf,
    incremental_generator,
    jaccard_sim,
    tfidf_score,
    tokenize,
)

__all__ = [
    "AStarEntry",
    "BOUNDING",
    "BRUTE_FORCE_NODE_LIMIT",
    "Corpus",
    "CpTreeNode",
    "Deadline",
    "DiversityGraph",
    "DriverState",
    "DriverStats",
    "GeneratorContractError",
    "GraphTooLargeError",
    "INCREMENTAL",
    "IncrementalResults",
    "InvertedIndex",
    "ResultGenerator",
    "ScoredResult",
    "SearchHeap",
    "SolutionTable",
    "SolverStats",
    "SolverTimeout",
    "astar_bound",
    "astar_search",
    "best_upper_bound",
    "bounding_generator",
    "brute_force",
    "build_diversity_graph",
    "caterpillar_graph",
    "compress",
    "connected_components",
    "cp_search",
    "cptree_construct",
    "cut_points",
    "div_astar",
    "div_cut",
    "div_dp",
    "div_search",
    "dump_graph",
    "fig1_graph",
    "fig2_graph",
    "graph_json",
    "greedy",
    "idf",
    "incremental_generator",
    "induced_subgraph",
    "is_independent",
    "jaccard_sim",
    "load_graph",
    "necessary_check",
    "oplus",
    "oplus_fold",
    "otimes",
    "random_graph",
    "sufficient_stop",
    "tfidf_score",
    "tokenize",
]

__version__ = "0.1.0"
