"""Streaming driver with provably safe early stopping.

Wraps any result generator that is either *incremental* (yields results in
non-increasing score order) or *bounding* (yields in any order but
maintains a non-increasing upper bound on every unseen score).  After each
pulled result the driver decides, with a cheap necessary condition,
whether rerunning the expensive exact solver could possibly let it stop;
when it does solve, a sufficient condition certifies whether any unseen
suffix of the stream could still improve the answer.
"""

from __future__ import annotations

import abc
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .graph import DiversityGraph, ScoredResult, SolutionTable

INCREMENTAL = "incremental"
BOUNDING = "bounding"


class GeneratorContractError(ValueError):
    """A generator broke its ordering or bound monotonicity contract."""


class ResultGenerator(abc.ABC):
    """Source of scored results for the driver.

    ``mode`` is :data:`INCREMENTAL` or :data:`BOUNDING`.  ``next`` returns
    the next result or ``None`` once exhausted.  ``unseen_bound`` is the
    current upper bound on every not-yet-yielded score: the score of the
    last yielded result for incremental sources, a threshold for bounding
    ones.  Either way it must never increase.
    """

    mode: str = INCREMENTAL

    @abc.abstractmethod
    def next(self) -> ScoredResult | None: ...

    @abc.abstractmethod
    def unseen_bound(self) -> float: ...


class IncrementalResults(ResultGenerator):
    """Reference incremental generator over a pre-scored sequence."""

    mode = INCREMENTAL

    def __init__(self, results: Sequence[ScoredResult]) -> None:
        self._results = list(results)
        self._i = 0
        self._last = math.inf

    def next(self) -> ScoredResult | None:
        if self._i >= len(self._results):
            return None
        r = self._results[self._i]
        self._i += 1
        self._last = r.score
        return r

    def unseen_bound(self) -> float:
        return self._last


@dataclass
class DriverState:
    """What the driver knows between iterations."""

    results: list[ScoredResult] = field(default_factory=list)
    table: SolutionTable | None = None
    s_prime_size: int = 0  # |S| at the last solver call (0: never called)
    last_max_feasible: int = 0
    exhausted: bool = False


@dataclass
class DriverStats:
    """Observability for tests and the command line."""

    generated: int = 0
    solver_calls: int = 0
    elapsed_ms: float = 0.0
    # (achieved score, upper bound) recorded at every solver call.
    trace: list[tuple[float, float]] = field(default_factory=list)


def best_upper_bound(table: SolutionTable, k: int, u_bar: float) -> float:
    """Ceiling on any answer combining seen results with unseen ones.

    The best final solution splits into i seen results (at most the table's
    size-i optimum) and k-i unseen ones (each at most ``u_bar``); the bound
    is the max over all splits, including i=0 when nothing has been solved
    yet.  ABSENT sizes are skipped: any set they could become by adding
    unseen nodes is already covered by a smaller present size.
    """
    if u_bar < 0:
        raise ValueError(f"unseen bound must be non-negative, got {u_bar}")
    best = -math.inf
    for i in range(min(k, table.capacity) + 1):
        s = table.score(i)
        if s is None:
            continue
        term = s if i == k else s + (k - i) * u_bar
        if term > best:
            best = term
    return best


def sufficient_stop(table: SolutionTable, k: int, u_bar: float) -> bool:
    """True when the achieved score already matches the upper bound."""
    achieved = table.best()[2]
    return achieved >= best_upper_bound(table, k, u_bar)


def necessary_check(
    state: DriverState,
    k: int,
    u_bar: float,
    last_result: ScoredResult | None,
) -> bool:
    """Cheap gate: could the driver possibly stop after solving now?

    Either the stream is exhausted, or (a) enough results arrived since the
    last solve to complete a size-k solution and (b) the k-th largest seen
    score has reached the unseen bound.  With fewer than k results the
    score test fails by definition: unseen nodes could always extend the
    answer.
    """
    if last_result is None:
        return True
    needed = state.s_prime_size + k - state.last_max_feasible
    if len(state.results) < needed:
        return False
    if len(state.results) < k:
        return False
    kth = sorted((r.score for r in state.results), reverse=True)[k - 1]
    return kth >= u_bar


def div_search(
    gen: ResultGenerator,
    solver: Callable[[DiversityGraph, int], SolutionTable],
    similar: Callable[[str, str], bool],
    k: int,
    *,
    always_solve: bool = False,
    stats: DriverStats | None = None,
) -> SolutionTable:
    """Pull results until no unseen one can improve the diversified top-k.

    The similarity predicate is consulted once per (new result, prior
    result) pair, so the diversity graph grows incrementally.  The solver
    is any of the exact table solvers.  ``always_solve`` disables the
    necessary-condition gate (solving after every pull); it never changes
    the answer, only the cost.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    stats = stats if stats is not None else DriverStats()
    started = time.perf_counter()
    state = DriverState(table=SolutionTable(k))
    edges: list[tuple[str, str]] = []
    u_bar = math.inf

    def solve_current() -> None:
        graph = DiversityGraph(state.results, edges)
        state.table = solver(graph, k)
        state.s_prime_size = len(state.results)
        state.last_max_feasible = state.table.max_feasible()
        stats.solver_calls += 1
        stats.trace.append(
            (state.table.best()[2], best_upper_bound(state.table, k, u_bar))
        )

    while True:
        result = gen.next()
        if result is None:
            state.exhausted = True
            u_bar = min(u_bar, gen.unseen_bound())
            solve_current()  # the answer must reflect every pulled result
            break
        stats.generated += 1
        if result.score > u_bar:
            raise GeneratorContractError(
                f"result {result.id!r} scored {result.score}, above the "
                f"previous unseen bound {u_bar}"
            )
        if (
            gen.mode == INCREMENTAL
            and state.results
            and result.score > state.results[-1].score
        ):
            raise GeneratorContractError(
                f"incremental scores increased at {result.id!r}: "
                f"{state.results[-1].score} -> {result.score}"
            )
        for prior in state.results:
            if similar(prior.id, result.id):
                edges.append((prior.id, result.id))
        state.results.append(result)
        new_bound = gen.unseen_bound()
        if new_bound > u_bar:
            raise GeneratorContractError(
                f"unseen bound increased: {u_bar} -> {new_bound}"
            )
        u_bar = new_bound
        if always_solve or necessary_check(state, k, u_bar, result):
            solve_current()
            if sufficient_stop(state.table, k, u_bar):
                break
    stats.elapsed_ms = (time.perf_counter() - started) * 1000.0
    return state.table
