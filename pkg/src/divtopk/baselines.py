"""Greedy baseline, exhaustive oracle, and deterministic graph fixtures.

The oracle enumerates every independent set up to the requested size and
is the ground truth all exact solvers are checked against; a hard node
limit keeps it honest about being exponential.
"""

from __future__ import annotations

import random

from .graph import DiversityGraph, ScoredResult, SolutionTable

BRUTE_FORCE_NODE_LIMIT = 25


class GraphTooLargeError(ValueError):
    """The exhaustive oracle refuses graphs beyond its node limit."""


def greedy(g: DiversityGraph, k: int) -> tuple[tuple[str, ...], float]:
    """Repeatedly take the best remaining node and delete its neighbors.

    Returns the picks in order plus their total score.  Ties on score fall
    to the lowest id (the node order already encodes that).  Fast, and
    arbitrarily far from optimal: see the hub fixture below.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    alive = {r.id for r in g.nodes}
    picks: list[str] = []
    total = 0.0
    for r in g.nodes:  # score order: first alive node is the max
        if len(picks) == k or not alive:
            break
        if r.id not in alive:
            continue
        picks.append(r.id)
        total += r.score
        alive.discard(r.id)
        alive -= g.neighbors(r.id)
    return tuple(picks), total


def brute_force(g: DiversityGraph, k: int) -> SolutionTable:
    """Exact solution table by enumerating all independent sets up to size k.

    Guarded to graphs of at most ``BRUTE_FORCE_NODE_LIMIT`` nodes.  Uses a
    bitmask recursion over nodes in score order with a prefix-sum prune:
    a branch is abandoned once no reachable size could improve the table.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    n = len(g)
    if n > BRUTE_FORCE_NODE_LIMIT:
        raise GraphTooLargeError(
            f"graph has {n} nodes; exhaustive oracle is limited to "
            f"{BRUTE_FORCE_NODE_LIMIT}"
        )
    table = SolutionTable(k)
    if n == 0:
        return table
    scores = [r.score for r in g.nodes]
    ids = [r.id for r in g.nodes]
    index = {r.id: i for i, r in enumerate(g.nodes)}
    adj_mask = [0] * n
    for i, r in enumerate(g.nodes):
        m = 0
        for v in g.neighbors(r.id):
            m |= 1 << index[v]
        adj_mask[i] = m
    # prefix[i] = sum of scores of nodes 0..i-1 (score order), so the best
    # possible addition of t nodes starting at position i is
    # prefix[i+t] - prefix[i].
    prefix = [0.0] * (n + 1)
    for i, s in enumerate(scores):
        prefix[i + 1] = prefix[i] + s
    kcap = min(k, n)
    best: list[float | None] = [None] * (kcap + 1)
    best[0] = 0.0
    chosen: list[int] = []

    def commit(size: int, score: float) -> None:
        if best[size] is None or score > best[size]:
            best[size] = score
            table.set_entry(size, frozenset(ids[i] for i in chosen), score)

    def explore(start: int, avail: int, size: int, score: float) -> None:
        if size == kcap:
            return
        # Hopeless if even adjacency-free completion cannot beat any size.
        improvable = False
        left = n - start
        for t in range(1, min(kcap - size, left) + 1):
            optimistic = score + prefix[min(start + t, n)] - prefix[start]
            cur = best[size + t]
            if cur is None or optimistic > cur:
                improvable = True
                break
        if not improvable:
            return
        m = avail >> start
        i = start
        while m:
            if m & 1:
                chosen.append(i)
                commit(size + 1, score + scores[i])
                explore(i + 1, avail & ~adj_mask[i], size + 1, score + scores[i])
                chosen.pop()
            m >>= 1
            i += 1

    explore(0, (1 << n) - 1, 0, 0.0)
    return table


# -- deterministic fixtures -----------------------------------------------


def fig1_graph() -> DiversityGraph:
    """Six-node demo graph: optima are 18 at k=2 and 20 at k=3."""
    results = [
        ScoredResult("v1", 10),
        ScoredResult("v2", 8),
        ScoredResult("v3", 7),
        ScoredResult("v4", 7),
        ScoredResult("v5", 6),
        ScoredResult("v6", 1),
    ]
    edges = [("v1", "v3"), ("v1", "v4"), ("v1", "v5"), ("v2", "v3"), ("v2", "v4")]
    return DiversityGraph(results, edges)


def fig2_graph() -> DiversityGraph:
    """Hub-and-leaf greedy trap: 201 nodes, 200 edges.

    One hub scoring 100 touches a hundred 99-point nodes, each of which
    guards a private 1-point leaf.  Greedy grabs the hub and is left with
    leaves (score 199 at k=100); the optimum takes all mid nodes (9,900).
    """
    results = [ScoredResult("A", 100)]
    edges = []
    for i in range(1, 101):
        b = f"B{i:03d}"
        c = f"C{i:03d}"
        results.append(ScoredResult(b, 99))
        results.append(ScoredResult(c, 1))
        edges.append(("A", b))
        edges.append((b, c))
    return DiversityGraph(results, edges)


def random_graph(
    n: int,
    p: float,
    seed: int,
    score_range: tuple[int, int] = (1, 100),
) -> DiversityGraph:
    """Seeded Erdos-Renyi graph with integer scores."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    width = max(2, len(str(n)))
    ids = [f"n{i:0{width}d}" for i in range(n)]
    results = [ScoredResult(i, rng.randint(*score_range)) for i in ids]
    edges = [
        (ids[i], ids[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return DiversityGraph(results, edges)


def caterpillar_graph(n: int = 200, blocks: int = 40, seed: int = 0) -> DiversityGraph:
    """Seeded forest of block chains: clique blocks joined at cut vertices.

    Blocks are grouped into chains of at most five; consecutive blocks in a
    chain share one cut vertex.  The layout is rich in articulation points,
    cheap for decomposition-based solvers, and hopeless for plain best-first
    search over the whole graph.
    """
    if blocks < 1:
        raise ValueError(f"blocks must be positive, got {blocks}")
    if n < 2 * blocks:
        raise ValueError(f"need at least {2 * blocks} nodes for {blocks} blocks")
    rng = random.Random(seed)
    blocks_per_chain = 5
    chains = -(-blocks // blocks_per_chain)
    # A chain of b blocks with sizes s_i holds sum(s_i - 1) + 1 nodes, so
    # distributing n - chains "fresh" nodes over the blocks hits n exactly.
    fresh = n - chains
    base, extra = divmod(fresh, blocks)
    fresh_per_block = [base + (1 if i < extra else 0) for i in range(blocks)]
    results: list[ScoredResult] = []
    edges: list[tuple[str, str]] = []
    counter = 0

    def new_node() -> str:
        nonlocal counter
        counter += 1
        node_id = f"c{counter:04d}"
        results.append(ScoredResult(node_id, rng.randint(1, 100)))
        return node_id

    block_index = 0
    made = 0
    while made < blocks:
        chain_len = min(blocks_per_chain, blocks - made)
        prev_cut: str | None = None
        for _ in range(chain_len):
            members = [prev_cut] if prev_cut is not None else [new_node()]
            for _ in range(fresh_per_block[block_index]):
                members.append(new_node())
            block_index += 1
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    edges.append((members[i], members[j]))
            prev_cut = members[-1]
        made += chain_len
    return DiversityGraph(results, edges)
