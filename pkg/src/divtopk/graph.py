"""Diversity-graph data model shared by every solver.

A :class:`DiversityGraph` holds scored results as nodes, ordered by
non-increasing score, with an undirected edge between every pair of
mutually similar results.  Diversified top-k search over such a graph is
maximum-score independent-set search with a size cap, and every solver in
this package reports its answer as a :class:`SolutionTable`: for each size
``i <= k``, the best independent set of exactly ``i`` nodes, or ABSENT when
no such set exists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence


@dataclass(frozen=True)
class ScoredResult:
    """One search result: an opaque identifier plus a non-negative score."""

    id: str
    score: float

    def __post_init__(self) -> None:
        if self.score < 0:
            raise ValueError(f"negative score for result {self.id!r}: {self.score}")


def _node_key(r: ScoredResult) -> tuple[float, str]:
    # Non-increasing score; ties broken by ascending id so traversal order,
    # and therefore every solver trace, is reproducible.
    return (-r.score, r.id)


class DiversityGraph:
    """Immutable undirected similarity graph over scored results.

    Nodes are kept sorted by non-increasing score (ties by ascending id);
    solvers rely on that order, so position ``i`` (1-based) always refers to
    the i-th best score.  Instances are safe to share across threads once
    built.
    """

    __slots__ = ("nodes", "_adj", "_pos")

    def __init__(
        self,
        results: Iterable[ScoredResult],
        edges: Iterable[tuple[str, str]] = (),
    ) -> None:
        nodes = sorted(results, key=_node_key)
        seen: set[str] = set()
        for r in nodes:
            if r.id in seen:
                raise ValueError(f"duplicate result id: {r.id!r}")
            seen.add(r.id)
        adj: dict[str, set[str]] = {r.id: set() for r in nodes}
        for u, v in edges:
            if u not in adj:
                raise ValueError(f"edge endpoint not a node: {u!r}")
            if v not in adj:
                raise ValueError(f"edge endpoint not a node: {v!r}")
            if u == v:
                raise ValueError(f"self-loop on {u!r} is not allowed")
            adj[u].add(v)
            adj[v].add(u)
        self.nodes: tuple[ScoredResult, ...] = tuple(nodes)
        self._adj: dict[str, frozenset[str]] = {k: frozenset(s) for k, s in adj.items()}
        self._pos: dict[str, int] = {r.id: i + 1 for i, r in enumerate(self.nodes)}

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[ScoredResult]:
        return iter(self.nodes)

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._adj

    def ids(self) -> tuple[str, ...]:
        """Node ids in score order."""
        return tuple(r.id for r in self.nodes)

    def score_of(self, node_id: str) -> float:
        self._require(node_id)
        return self.nodes[self._pos[node_id] - 1].score

    def position(self, node_id: str) -> int:
        """1-based position of a node in score order."""
        self._require(node_id)
        return self._pos[node_id]

    def neighbors(self, node_id: str) -> frozenset[str]:
        self._require(node_id)
        return self._adj[node_id]

    def adjacent(self, u: str, v: str) -> bool:
        return v in self.neighbors(u)

    def edge_count(self) -> int:
        return sum(len(s) for s in self._adj.values()) // 2

    def edge_list(self) -> list[tuple[str, str]]:
        """Each edge once, endpoints and list ordered by node position."""
        out = []
        for r in self.nodes:
            p = self._pos[r.id]
            for v in self._adj[r.id]:
                if self._pos[v] > p:
                    out.append((r.id, v))
        out.sort(key=lambda e: (self._pos[e[0]], self._pos[e[1]]))
        return out

    def _require(self, node_id: str) -> None:
        if node_id not in self._adj:
            raise ValueError(f"unknown node id: {node_id!r}")

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "nodes": [{"id": r.id, "score": _plain_number(r.score)} for r in self.nodes],
            "edges": [[u, v] for u, v in self.edge_list()],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DiversityGraph":
        results = [ScoredResult(str(n["id"]), float(n["score"])) for n in data["nodes"]]
        edges = [(str(u), str(v)) for u, v in data.get("edges", [])]
        return cls(results, edges)


def _plain_number(x: float) -> float | int:
    """Integers stay integers in JSON output; other scores keep 6 decimals."""
    if float(x).is_integer():
        return int(x)
    return round(float(x), 6)


def load_graph(path: str) -> DiversityGraph:
    """Read a graph fixture file (JSON: nodes with scores, edge pairs)."""
    with open(path, "r", encoding="utf-8") as fh:
        return DiversityGraph.from_json_dict(json.load(fh))


def dump_graph(g: DiversityGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(graph_json(g))
        fh.write("\n")


def graph_json(g: DiversityGraph) -> str:
    return json.dumps(g.to_json_dict(), separators=(", ", ": "))


def build_diversity_graph(
    results: Sequence[ScoredResult],
    similar: Callable[[str, str], bool],
) -> DiversityGraph:
    """Build the similarity graph for a result set.

    ``similar`` is consulted once per unordered id pair and must be
    symmetric; an edge is added exactly when it returns true.  Self-pairs
    are never consulted, so self-similarity cannot create a loop.
    """
    ordered = sorted(results, key=_node_key)
    seen: set[str] = set()
    for r in ordered:
        if r.id in seen:
            raise ValueError(f"duplicate result id: {r.id!r}")
        seen.add(r.id)
    edges = []
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            if similar(a.id, b.id):
                edges.append((a.id, b.id))
    return DiversityGraph(ordered, edges)


def is_independent(g: DiversityGraph, nodes: Iterable[str]) -> bool:
    """True iff no two of the given nodes are adjacent in ``g``."""
    chosen = set(nodes)
    for v in chosen:
        if g.neighbors(v) & chosen:
            return False
    return True


def connected_components(g: DiversityGraph) -> list[DiversityGraph]:
    """Node-disjoint induced subgraphs covering ``g``, each connected.

    Components are listed by the position of their best-scoring node, and
    each component keeps the global score order.
    """
    unvisited = {r.id for r in g.nodes}
    out: list[DiversityGraph] = []
    for r in g.nodes:
        if r.id not in unvisited:
            continue
        comp = {r.id}
        frontier = [r.id]
        unvisited.discard(r.id)
        while frontier:
            cur = frontier.pop()
            for nb in g.neighbors(cur):
                if nb in unvisited:
                    unvisited.discard(nb)
                    comp.add(nb)
                    frontier.append(nb)
        out.append(induced_subgraph(g, comp))
    return out


def induced_subgraph(g: DiversityGraph, keep: Iterable[str]) -> DiversityGraph:
    """Subgraph induced by ``keep``, preserving score order."""
    keep_set = set(keep)
    for v in keep_set:
        g._require(v)
    results = [r for r in g.nodes if r.id in keep_set]
    edges = [
        (r.id, v)
        for r in results
        for v in g.neighbors(r.id)
        if v in keep_set and g.position(v) > g.position(r.id)
    ]
    return DiversityGraph(results, edges)


class SolutionTable:
    """Per-size best independent sets for one searched scope.

    ``entry(i)`` is the best independent set of exactly ``i`` nodes together
    with its score, or ``None`` (ABSENT) when no independent set of that
    size exists in the searched scope.  Size 0 is the empty set with score 0
    for every solver-produced table; internal include-constrained tables may
    leave it absent because no empty set can contain a required node.
    """

    __slots__ = ("capacity", "_entries")

    #: running count of tables ever built; a deterministic memory proxy
    #: used by the benchmark harness.
    created = 0

    def __init__(self, capacity: int, *, seed_empty: bool = True) -> None:
        if capacity < 0:
            raise ValueError(f"capacity must be non-negative, got {capacity}")
        self.capacity = capacity
        self._entries: dict[int, tuple[frozenset[str], float]] = {}
        if seed_empty:
            self._entries[0] = (frozenset(), 0.0)
        SolutionTable.created += 1

    def has(self, size: int) -> bool:
        return size in self._entries

    def solution(self, size: int) -> frozenset[str] | None:
        e = self._entries.get(size)
        return e[0] if e is not None else None

    def score(self, size: int) -> float | None:
        e = self._entries.get(size)
        return e[1] if e is not None else None

    def present_sizes(self) -> list[int]:
        return sorted(self._entries)

    def set_entry(self, size: int, nodes: frozenset[str], score: float) -> None:
        if not 0 <= size <= self.capacity:
            raise ValueError(f"size {size} outside 0..{self.capacity}")
        if len(nodes) != size:
            raise ValueError(f"entry of size {size} has {len(nodes)} nodes")
        self._entries[size] = (frozenset(nodes), score)

    def update(self, size: int, nodes: frozenset[str], score: float) -> bool:
        """Install an entry if strictly better; equal scores keep the incumbent."""
        if size > self.capacity:
            return False
        cur = self._entries.get(size)
        if cur is None or score > cur[1]:
            self.set_entry(size, nodes, score)
            return True
        return False

    def best(self) -> tuple[int, frozenset[str], float]:
        """Highest-scoring entry; ties go to the smaller size."""
        best = (0, frozenset(), 0.0)
        best_score = None
        for size in sorted(self._entries):
            nodes, score = self._entries[size]
            if best_score is None or score > best_score:
                best = (size, nodes, score)
                best_score = score
        return best

    def max_feasible(self) -> int:
        """Largest size with a present entry (0 when only the empty set is known)."""
        return max(self._entries, default=0)

    def score_vector(self) -> tuple[float | None, ...]:
        """Scores for sizes 0..capacity, ``None`` marking ABSENT sizes."""
        return tuple(self.score(i) for i in range(self.capacity + 1))

    def items(self) -> list[tuple[int, frozenset[str], float]]:
        return [(i, *self._entries[i]) for i in sorted(self._entries)]

    def __repr__(self) -> str:
        parts = ", ".join(f"{i}:{s:g}" for i, _, s in self.items())
        return f"SolutionTable(k={self.capacity}, {{{parts}}})"
