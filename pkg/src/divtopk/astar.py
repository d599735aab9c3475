"""Exact best-first solver for size-capped maximum-score independent sets.

The solver keeps a max-heap of partial solutions keyed by an admissible
upper bound and fills a :class:`SolutionTable` with the optimum for every
size up to ``k``.  One heap serves all sizes: the search runs for the
target size ``k' = k`` first, then reuses the surviving frontier for each
smaller ``k'`` after refreshing every bound for the tighter size cap.

Each pass pops entries while the top bound is at least the best known
score *for the pass's own size*; popping at equality lets the pass confirm
an optimal complete solution before stopping, and anything left on the
heap afterwards provably cannot improve that size.  Sizes below ``k'`` are
certified by their own later passes, so the table ends exactly optimal for
every size.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graph import DiversityGraph, SolutionTable
from .stats import Deadline, SolverStats

_DEADLINE_STRIDE = 256  # pops between wall-clock checks


@dataclass
class AStarEntry:
    """A partial solution: chosen nodes, last chosen position, score, bound.

    ``pos`` is the 1-based position (in score order) of the last node added,
    0 for the empty solution; children are only drawn from later positions,
    which makes every solution reachable exactly once.
    """

    solution: frozenset[str]
    pos: int
    score: float
    bound: float


class SearchHeap:
    """Max-heap of entries keyed by bound.

    Ties prefer larger solutions, then smaller positions, then insertion
    order, so complete solutions surface early and traces are reproducible.
    """

    __slots__ = ("_heap", "_seq")

    def __init__(self) -> None:
        self._heap: list[tuple[float, int, int, int, AStarEntry]] = []
        self._seq = 0

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)

    def _key(self, e: AStarEntry) -> tuple[float, int, int, int, AStarEntry]:
        self._seq += 1
        return (-e.bound, -len(e.solution), e.pos, self._seq, e)

    def push(self, e: AStarEntry) -> None:
        heapq.heappush(self._heap, self._key(e))

    def pop(self) -> AStarEntry:
        return heapq.heappop(self._heap)[4]

    def top_bound(self) -> float:
        return -self._heap[0][0]

    def entries(self) -> list[AStarEntry]:
        return [item[4] for item in self._heap]

    def refresh(self, g: DiversityGraph, kprime: int) -> None:
        """Recompute every bound for a smaller size cap and rebuild in one pass.

        Entries already at or above the cap are dropped: their own value is
        recorded in the table at push time and they cannot extend without
        exceeding ``kprime``.
        """
        survivors = [e for e in self.entries() if len(e.solution) < kprime]
        self._heap = []
        for e in survivors:
            e.bound = astar_bound_entry(g, e, kprime)
            self._heap.append(self._key(e))
        heapq.heapify(self._heap)


def astar_bound_entry(g: DiversityGraph, e: AStarEntry, kprime: int) -> float:
    """Admissible score ceiling for extending ``e`` to at most ``kprime`` nodes.

    Adds the highest-scored nodes after ``e.pos`` that are not adjacent to
    the current solution until the size cap is reached.  Mutual adjacency
    among the added nodes is ignored, which is exactly what makes the value
    an upper bound for every real extension.
    """
    taken = len(e.solution)
    bound = e.score
    if taken >= kprime:
        return bound
    blocked: set[str] = set()
    for v in e.solution:
        blocked |= g.neighbors(v)
    for r in g.nodes[e.pos :]:
        if r.id in blocked:
            continue
        bound += r.score
        taken += 1
        if taken == kprime:
            break
    return bound


def astar_bound(g: DiversityGraph, e: AStarEntry, kprime: int) -> float:
    return astar_bound_entry(g, e, kprime)


def astar_search(
    g: DiversityGraph,
    heap: SearchHeap,
    table: SolutionTable,
    kprime: int,
    *,
    stats: SolverStats | None = None,
    deadline: Deadline | None = None,
    pop_trace: list | None = None,
) -> None:
    """Run one best-first pass that certifies the optimum for size ``kprime``.

    Pops while the top bound is at least the best known score of size
    ``kprime`` (everything, if that size is still unknown: proving a size
    infeasible requires exhausting the frontier).  Every popped entry is
    expanded with all valid next nodes; each child updates the table at its
    own size the moment it is pushed, so sizes other than ``kprime``
    benefit from the pass as well.
    """
    stats = stats if stats is not None else SolverStats()
    n = len(g)
    while heap:
        incumbent = table.score(kprime)
        if incumbent is not None and heap.top_bound() < incumbent:
            break
        e = heap.pop()
        stats.pops += 1
        if deadline is not None and stats.pops % _DEADLINE_STRIDE == 0:
            deadline.check()
        if pop_trace is not None:
            pop_trace.append((e.solution, e.score, e.bound, kprime))
        if len(e.solution) >= kprime:
            continue  # complete for this pass; nothing to expand
        blocked: set[str] = set()
        for v in e.solution:
            blocked |= g.neighbors(v)
        for idx in range(e.pos, n):
            r = g.nodes[idx]
            if r.id in blocked:
                continue
            child = AStarEntry(e.solution | {r.id}, idx + 1, e.score + r.score, 0.0)
            child.bound = astar_bound_entry(g, child, kprime)
            heap.push(child)
            stats.pushes += 1
            stats.note_heap(len(heap))
            table.update(len(child.solution), child.solution, child.score)


def div_astar(
    g: DiversityGraph,
    k: int,
    *,
    stats: SolverStats | None = None,
    deadline: Deadline | None = None,
    pop_trace: list | None = None,
) -> SolutionTable:
    """Optimal solution table for every size 0..k of one diversity graph."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    stats = stats if stats is not None else SolverStats()
    stats.astar_calls += 1
    table = SolutionTable(k)
    kmax = min(k, len(g))
    if kmax == 0:
        return table
    heap = SearchHeap()
    heap.push(AStarEntry(frozenset(), 0, 0.0, 0.0))
    stats.note_heap(len(heap))
    for kprime in range(kmax, 0, -1):
        if kprime < kmax:
            heap.refresh(g, kprime)
        astar_search(
            g, heap, table, kprime, stats=stats, deadline=deadline, pop_trace=pop_trace
        )
        if deadline is not None:
            deadline.check()
    return table
