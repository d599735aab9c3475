import math
import random

import pytest

from divtopk import (
    DiversityGraph,
    DriverState,
    DriverStats,
    GeneratorContractError,
    IncrementalResults,
    ResultGenerator,
    ScoredResult,
    SolutionTable,
    best_upper_bound,
    brute_force,
    div_astar,
    div_cut,
    div_search,
    necessary_check,
    random_graph,
    sufficient_stop,
)
from divtopk.framework import BOUNDING

from conftest import make_table


def fig1_table() -> SolutionTable:
    return make_table(3, {
        1: ({"v1"}, 10),
        2: ({"v1", "v2"}, 18),
        3: ({"v3", "v4", "v5"}, 20),
    })


class _MaxRemaining(ResultGenerator):
    """Bounding generator for tests: any yield order, bound = max unyielded."""

    mode = BOUNDING

    def __init__(self, results, order_seed=0):
        self._pending = list(results)
        random.Random(order_seed).shuffle(self._pending)

    def next(self):
        if not self._pending:
            return None
        return self._pending.pop(0)

    def unseen_bound(self):
        if not self._pending:
            return 0.0
        return max(r.score for r in self._pending)


class TestBestUpperBound:
    def test_fig1_table_small_bound(self):
        assert best_upper_bound(fig1_table(), 3, 1.0) == 20

    def test_nothing_seen(self):
        assert best_upper_bound(SolutionTable(5), 5, 7.0) == 35

    def test_zero_bound_gives_best_present_score(self):
        assert best_upper_bound(fig1_table(), 3, 0.0) == 20
        t = make_table(3, {1: ({"a"}, 4)})
        assert best_upper_bound(t, 3, 0.0) == 4


class TestSufficientStop:
    def test_fig1_tight(self):
        assert sufficient_stop(fig1_table(), 3, 1.0)

    def test_fig1_loose(self):
        assert not sufficient_stop(fig1_table(), 3, 6.0)

    def test_zero_unseen_bound_always_stops(self):
        assert sufficient_stop(SolutionTable(4), 4, 0.0)
        assert sufficient_stop(fig1_table(), 3, 0.0)


class TestNecessaryCheck:
    def _state(self, n_results, s_prime, max_feasible):
        st = DriverState(table=SolutionTable(3))
        st.results = [ScoredResult(f"r{i}", 10 - i) for i in range(n_results)]
        st.s_prime_size = s_prime
        st.last_max_feasible = max_feasible
        return st

    def test_exhausted_always_passes(self):
        st = self._state(1, 0, 0)
        assert necessary_check(st, 3, 99.0, None)

    def test_size_and_score_conditions(self):
        # 5 results, last solve saw 4 with best feasible size 2:
        # 5 >= 4 + 3 - 2 and the 3rd largest (9 - 2 = 8) >= u_bar
        st = self._state(5, 4, 2)
        assert necessary_check(st, 3, 8.0, st.results[-1])

    def test_size_condition_fails(self):
        st = self._state(4, 4, 2)
        assert not necessary_check(st, 3, 8.0, st.results[-1])

    def test_fewer_than_k_results_never_pass(self):
        st = self._state(2, 0, 0)
        assert not necessary_check(st, 3, 0.0, st.results[-1])


class TestDivSearch:
    def test_fig1_incremental_stops_at_optimum(self, fig1):
        gen = IncrementalResults(list(fig1.nodes))
        stats = DriverStats()
        table = div_search(gen, div_astar, fig1.adjacent, 3, stats=stats)
        assert table.best()[2] == 20
        assert table.best()[1] == frozenset({"v3", "v4", "v5"})

    def test_k1_stops_after_first_incremental_result(self, fig1):
        gen = IncrementalResults(list(fig1.nodes))
        stats = DriverStats()
        table = div_search(gen, div_astar, fig1.adjacent, 1, stats=stats)
        assert stats.generated == 1
        assert table.best()[2] == 10

    def test_clique_then_isolated_result(self):
        # Four mutually similar results then a dissimilar one: the driver
        # must keep pulling past the clique.
        results = [ScoredResult(x, s) for x, s in
                   [("a", 9), ("b", 8), ("c", 7), ("d", 6), ("e", 5)]]
        clique = {"a", "b", "c", "d"}
        similar = lambda u, v: u in clique and v in clique
        gen = IncrementalResults(results)
        table = div_search(gen, div_astar, similar, 2)
        assert table.best()[2] == 14  # 9 + 5

    def test_exhausted_stream_returns_full_answer(self):
        g = random_graph(9, 0.5, seed=2)
        gen = IncrementalResults(list(g.nodes))
        table = div_search(gen, div_astar, g.adjacent, 4)
        assert table.best()[2] == brute_force(g, 4).best()[2]

    def test_empty_stream(self):
        table = div_search(IncrementalResults([]), div_astar, lambda a, b: False, 3)
        assert table.best() == (0, frozenset(), 0.0)

    def test_increasing_incremental_scores_rejected(self):
        results = [ScoredResult("a", 5), ScoredResult("b", 9)]
        gen = IncrementalResults(results)
        with pytest.raises(GeneratorContractError, match="'b'"):
            div_search(gen, div_astar, lambda a, b: False, 2)

    def test_score_above_unseen_bound_rejected(self):
        class Lying(ResultGenerator):
            mode = BOUNDING

            def __init__(self):
                self._yields = [ScoredResult("a", 5), ScoredResult("b", 9)]
                self._bound = 6.0

            def next(self):
                return self._yields.pop(0) if self._yields else None

            def unseen_bound(self):
                return self._bound

        with pytest.raises(GeneratorContractError, match="'b'"):
            div_search(Lying(), div_astar, lambda a, b: False, 2)

    @pytest.mark.parametrize("seed", range(12))
    @pytest.mark.parametrize("mode", ["incremental", "bounding"])
    def test_final_score_equals_full_solve(self, seed, mode):
        g = random_graph(10, [0.2, 0.5][seed % 2], seed)
        if mode == "incremental":
            gen = IncrementalResults(list(g.nodes))
        else:
            gen = _MaxRemaining(list(g.nodes), order_seed=seed)
        k = 1 + seed % 5
        table = div_search(gen, div_astar, g.adjacent, k)
        assert table.best()[2] == brute_force(g, k).best()[2]

    @pytest.mark.parametrize("seed", range(8))
    def test_bounds_monotone_and_scores_monotone(self, seed):
        g = random_graph(12, 0.3, seed)
        stats = DriverStats()
        div_search(_MaxRemaining(list(g.nodes), seed), div_cut, g.adjacent, 4,
                   stats=stats)
        achieved = [a for a, _ in stats.trace]
        uppers = [u for _, u in stats.trace]
        assert achieved == sorted(achieved)
        assert uppers == sorted(uppers, reverse=True)
        assert all(a <= u + 1e-9 for a, u in stats.trace)

    @pytest.mark.parametrize("seed", range(10))
    def test_gating_never_changes_answer_or_adds_calls(self, seed):
        g = random_graph(11, 0.35, seed)
        gen1 = IncrementalResults(list(g.nodes))
        gen2 = IncrementalResults(list(g.nodes))
        s1, s2 = DriverStats(), DriverStats()
        k = 3
        t1 = div_search(gen1, div_astar, g.adjacent, k, stats=s1)
        t2 = div_search(gen2, div_astar, g.adjacent, k, always_solve=True, stats=s2)
        assert t1.best()[2] == t2.best()[2]
        assert s1.solver_calls <= s2.solver_calls

    @pytest.mark.parametrize("seed", range(8))
    def test_stop_is_safe_against_unseen_suffix(self, seed):
        # Stop mid-stream, then verify the rest of the stream could not
        # have improved the answer.
        g = random_graph(14, 0.3, 50 + seed)
        gen = IncrementalResults(list(g.nodes))
        stats = DriverStats()
        k = 3
        table = div_search(gen, div_astar, g.adjacent, k, stats=stats)
        full = brute_force(g, k)
        assert table.best()[2] == full.best()[2]
