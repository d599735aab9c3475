"""Component-decomposition solver.

Connected components share no edges, so each is solved independently with
the best-first solver and the per-component tables are folded together
with ``oplus``.  Fold order does not matter for scores; components are
processed largest first so the dominant one fails fast.
"""

from __future__ import annotations

from .algebra import oplus
from .astar import div_astar
from .graph import DiversityGraph, SolutionTable, connected_components
from .stats import Deadline, SolverStats


def div_dp(
    g: DiversityGraph,
    k: int,
    *,
    stats: SolverStats | None = None,
    deadline: Deadline | None = None,
) -> SolutionTable:
    """Optimal solution table computed per component and merged."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    result = SolutionTable(k)
    comps = sorted(connected_components(g), key=len, reverse=True)
    for comp in comps:
        part = div_astar(comp, k, stats=stats, deadline=deadline)
        result = oplus(result, part)
    return result
