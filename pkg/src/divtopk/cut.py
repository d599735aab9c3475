"""Cut-point solver: compress, split at articulation points, recombine.

A connected graph with articulation points falls apart into small regions
once those points are removed.  The solver builds a rooted tree over the
cut points of each component; every tree node owns its cut point, a
"left" remainder with no deeper chosen cut points, and an "entry" region
that connects it to its parent's cut point.  Each node carries two tables:
one for solutions that include its cut point and one for solutions that
exclude it.  An entry region is searched at most four times, once per
combination of parent/child cut-point inclusion (with the neighbors of
every included cut point removed first, and the doubly-included case
dropped when the two cut points are adjacent).  Tables of disjoint regions
merge with ``oplus``; the include/exclude variants of one region merge
with ``otimes``.

Before any of that, the graph is compressed: a node can be dropped when an
adjacent node with at least its score has a closed neighborhood contained
in the dropped node's closed neighborhood, because any solution using the
dropped node can swap in the witness without losing score.  Compression
shrinks regions and frequently exposes new cut points.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import oplus, oplus_fold, otimes
from .astar import div_astar
from .graph import (
    DiversityGraph,
    SolutionTable,
    connected_components,
    induced_subgraph,
)
from .stats import Deadline, SolverStats


def compress(g: DiversityGraph) -> DiversityGraph:
    """Remove dominated nodes until none remain; optima are unchanged.

    Scans weakest-score-first and removes one node at a time, so mutually
    dominating twins lose exactly one member.  The per-size optimal scores
    of the result equal those of the input.
    """
    alive: dict[str, set[str]] = {r.id: set(g.neighbors(r.id)) for r in g.nodes}
    scores = {r.id: r.score for r in g.nodes}
    order = [r.id for r in reversed(g.nodes)]  # ascending score, ties by id desc
    changed = True
    while changed:
        changed = False
        for v in order:
            if v not in alive:
                continue
            closed_v = alive[v] | {v}
            for w in alive[v]:
                if scores[w] >= scores[v] and (alive[w] | {w}) <= closed_v:
                    for u in alive[v]:
                        alive[u].discard(v)
                    del alive[v]
                    changed = True
                    break
    return induced_subgraph(g, alive.keys())


def cut_points(g: DiversityGraph) -> frozenset[str]:
    """Articulation points of a connected graph (error on disconnected input)."""
    n = len(g)
    if n == 0:
        return frozenset()
    ids = g.ids()
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    parent: dict[str, str | None] = {ids[0]: None}
    cuts: set[str] = set()
    timer = 0
    # Iterative depth-first search: a long path would blow the recursion
    # limit long before it troubles an explicit stack.
    stack = [(ids[0], iter(sorted(g.neighbors(ids[0]))))]
    disc[ids[0]] = low[ids[0]] = timer
    timer += 1
    root_children = 0
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if w not in disc:
                parent[w] = v
                disc[w] = low[w] = timer
                timer += 1
                if v == ids[0]:
                    root_children += 1
                stack.append((w, iter(sorted(g.neighbors(w)))))
                advanced = True
                break
            elif w != parent[v]:
                low[v] = min(low[v], disc[w])
        if not advanced:
            stack.pop()
            p = parent[v]
            if p is not None:
                low[p] = min(low[p], low[v])
                if p != ids[0] and low[v] >= disc[p]:
                    cuts.add(p)
    if len(disc) != n:
        raise ValueError("graph is not connected; split into components first")
    if root_children > 1:
        cuts.add(ids[0])
    return frozenset(cuts)


@dataclass
class CpTreeNode:
    """One cut point with the regions it is responsible for.

    ``entry_graph`` sits between this cut point and the parent's (empty for
    the root); ``left_graph`` is the owned remainder containing none of the
    chosen cut points; ``subnodes`` own everything deeper.  The node sets of
    cut point, entry graph, left graph, and all descendant scopes partition
    the component.  ``result1``/``result0`` are the optimal tables for the
    subtree scope with the cut point forced in / kept out, filled by
    :func:`cp_search`.
    """

    cut_point: str
    entry_graph: DiversityGraph
    left_graph: DiversityGraph
    subnodes: list["CpTreeNode"] = field(default_factory=list)
    result0: SolutionTable | None = None
    result1: SolutionTable | None = None

    def scope_ids(self) -> set[str]:
        out = {self.cut_point}
        out |= set(self.left_graph.ids())
        for ch in self.subnodes:
            out |= set(ch.entry_graph.ids())
            out |= ch.scope_ids()
        return out


def cptree_construct(g: DiversityGraph, cps: frozenset[str]) -> CpTreeNode:
    """Rooted cut-point tree for a connected graph.

    The root is the best-scoring cut point.  Behind any tree node's cut
    point, each connected piece either contains no further cut points (it
    joins the node's left graph) or contributes one child: the cut point of
    the piece nearest to the current one.  Whatever lies strictly between a
    child and its parent becomes the child's entry graph; pieces behind the
    child recurse.  Regions handed to the inner solver may still contain
    unchosen cut points; the solver re-enters the full cut pipeline on them.
    """
    if not cps:
        raise ValueError("cut point set is empty; solve the graph directly")
    for c in cps:
        g._require(c)
    root_cp = next(r.id for r in g.nodes if r.id in cps)
    root = _build_node(g, cps, root_cp, set(g.ids()) - {root_cp}, DiversityGraph([]))
    return root


def _build_node(
    g: DiversityGraph,
    cps: frozenset[str],
    cp: str,
    tail: set[str],
    entry_graph: DiversityGraph,
) -> CpTreeNode:
    node = CpTreeNode(cp, entry_graph, DiversityGraph([]))
    left_ids: set[str] = set()
    for piece in _component_id_sets(g, tail):
        piece_cuts = piece & cps
        if not piece_cuts:
            left_ids |= piece
            continue
        child_cp = _nearest(g, cp, piece, piece_cuts)
        cp_adj = g.neighbors(cp)
        entry_ids: set[str] = set()
        child_tail: set[str] = set()
        for sub in _component_id_sets(g, piece - {child_cp}):
            if sub & cp_adj:
                entry_ids |= sub
            else:
                child_tail |= sub
        child = _build_node(
            g, cps, child_cp, child_tail, induced_subgraph(g, entry_ids)
        )
        node.subnodes.append(child)
    node.left_graph = induced_subgraph(g, left_ids)
    return node


def _component_id_sets(g: DiversityGraph, ids: set[str]) -> list[set[str]]:
    """Connected pieces of the induced subgraph, ordered by best node."""
    remaining = set(ids)
    out: list[set[str]] = []
    for r in g.nodes:
        if r.id not in remaining:
            continue
        piece = {r.id}
        frontier = [r.id]
        remaining.discard(r.id)
        while frontier:
            cur = frontier.pop()
            for nb in g.neighbors(cur):
                if nb in remaining:
                    remaining.discard(nb)
                    piece.add(nb)
                    frontier.append(nb)
        out.append(piece)
    return out


def _nearest(g: DiversityGraph, start: str, region: set[str], targets: set[str]) -> str:
    """Closest target to ``start`` through ``region``; ties by node order."""
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt: list[str] = []
        for v in frontier:
            for w in g.neighbors(v):
                if w in region and w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    return min(targets, key=lambda t: (dist[t], g.position(t)))


def cp_search(
    g: DiversityGraph,
    o: CpTreeNode,
    k: int,
    *,
    stats: SolverStats | None = None,
    deadline: Deadline | None = None,
) -> None:
    """Fill ``result0``/``result1`` for the subtree rooted at ``o``.

    Children are searched first.  For each cut-point state of ``o`` the
    left graph and every child branch are solved under that state and
    merged with ``oplus``; a child branch is the ``otimes`` of its two
    cut-point states, each pairing the child's own table with a search of
    its entry graph conditioned on which of the two surrounding cut points
    are included.
    """
    stats = stats if stats is not None else SolverStats()
    for ch in o.subnodes:
        cp_search(g, ch, k, stats=stats, deadline=deadline)
    cp = o.cut_point
    cp_adj = g.neighbors(cp)
    searches_per_child = {ch.cut_point: 0 for ch in o.subnodes}
    for include_cp in (False, True):
        strip = cp_adj if include_cp else frozenset()
        parts = [
            _solve(_minus(o.left_graph, strip), k, stats=stats, deadline=deadline)
        ]
        for ch in o.subnodes:
            variants = []
            for include_child in (False, True):
                if include_cp and include_child and ch.cut_point in cp_adj:
                    continue  # adjacent cut points cannot both be chosen
                entry_strip = set(strip)
                if include_child:
                    entry_strip |= g.neighbors(ch.cut_point)
                entry_table = _solve(
                    _minus(ch.entry_graph, entry_strip),
                    k,
                    stats=stats,
                    deadline=deadline,
                )
                searches_per_child[ch.cut_point] += 1
                own = ch.result1 if include_child else ch.result0
                variants.append(oplus(own, entry_table))
            branch = variants[0]
            for v in variants[1:]:
                branch = otimes(branch, v)
            parts.append(branch)
        combined = oplus_fold(parts, k)
        if include_cp:
            o.result1 = _with_node(combined, cp, g.score_of(cp), k)
        else:
            o.result0 = combined
    for child_cp, count in searches_per_child.items():
        stats.note_entry_searches(child_cp, count)


def _minus(g: DiversityGraph, drop: frozenset[str] | set[str]) -> DiversityGraph:
    if not drop:
        return g
    return induced_subgraph(g, set(g.ids()) - set(drop))


def _with_node(t: SolutionTable, node_id: str, score: float, k: int) -> SolutionTable:
    """Shift a table computed without a node to one that always includes it."""
    out = SolutionTable(k, seed_empty=False)
    for size, nodes, sc in t.items():
        if size + 1 <= k:
            out.set_entry(size + 1, nodes | {node_id}, sc + score)
    return out


def div_cut(
    g: DiversityGraph,
    k: int,
    *,
    stats: SolverStats | None = None,
    deadline: Deadline | None = None,
) -> SolutionTable:
    """Optimal solution table via compression and cut-point decomposition."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return _solve(g, k, stats=stats, deadline=deadline)


def _solve(
    g: DiversityGraph,
    k: int,
    *,
    stats: SolverStats | None = None,
    deadline: Deadline | None = None,
) -> SolutionTable:
    if deadline is not None:
        deadline.check()
    result = SolutionTable(k)
    if len(g) == 0:
        return result
    for comp in sorted(connected_components(g), key=len, reverse=True):
        compressed = compress(comp)
        # Dropping dominated nodes can split a component; re-split before
        # looking for cut points, which require connected input.
        for piece in connected_components(compressed):
            cps = cut_points(piece)
            if not cps:
                part = div_astar(piece, k, stats=stats, deadline=deadline)
            else:
                root = cptree_construct(piece, cps)
                cp_search(piece, root, k, stats=stats, deadline=deadline)
                part = otimes(root.result0, root.result1)
            result = oplus(result, part)
    return result
