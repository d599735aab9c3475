"""Counters and cooperative timeouts shared by the solvers."""

from __future__ import annotations

import time
from dataclasses import dataclass, field


class SolverTimeout(Exception):
    """Raised by a solver when its deadline expires."""


class Deadline:
    """Cooperative wall-clock budget checked at coarse solver checkpoints."""

    __slots__ = ("expires_at",)

    def __init__(self, timeout_ms: float | None) -> None:
        self.expires_at = None if timeout_ms is None else time.monotonic() + timeout_ms / 1000.0

    def check(self) -> None:
        if self.expires_at is not None and time.monotonic() > self.expires_at:
            raise SolverTimeout("solver exceeded its time budget")


@dataclass
class SolverStats:
    """Deterministic work counters for one solver run.

    ``heap_peak`` is the largest frontier any best-first search reached;
    together with the number of tables built (``SolutionTable.created``
    deltas, tracked by callers) it forms the portable memory proxy reported
    by the benchmark harness.  ``entry_searches`` records, for every
    parent/child cut-point conditioning processed, how many times that
    child's entry graph was handed to an inner solver (the same node id can
    appear again in deeper recursive solves, so occurrences are listed, not
    keyed).
    """

    pops: int = 0
    pushes: int = 0
    heap_peak: int = 0
    astar_calls: int = 0
    entry_searches: list[tuple[str, int]] = field(default_factory=list)

    def note_heap(self, size: int) -> None:
        if size > self.heap_peak:
            self.heap_peak = size

    def note_entry_searches(self, cut_point: str, count: int) -> None:
        self.entry_searches.append((cut_point, count))
