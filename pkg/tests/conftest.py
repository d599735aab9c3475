import random
from pathlib import Path

import pytest

from divtopk import (
    DiversityGraph,
    ScoredResult,
    SolutionTable,
    fig1_graph,
    is_independent,
    random_graph,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS_PATH = REPO_ROOT / "data" / "toy_corpus.jsonl"
STOPWORDS_PATH = REPO_ROOT / "data" / "stopwords.txt"


@pytest.fixture
def fig1() -> DiversityGraph:
    return fig1_graph()


def assert_valid_table(table: SolutionTable, g: DiversityGraph) -> None:
    """Every present entry is an independent set of the right size and score."""
    for size, nodes, score in table.items():
        assert len(nodes) == size
        assert is_independent(g, nodes)
        assert score == pytest.approx(sum(g.score_of(v) for v in nodes))


def table_scores(table: SolutionTable, upto: int | None = None) -> tuple:
    hi = table.capacity if upto is None else upto
    return tuple(table.score(i) for i in range(hi + 1))


def make_table(k: int, entries: dict[int, tuple[set, float]]) -> SolutionTable:
    t = SolutionTable(k)
    for size, (nodes, score) in entries.items():
        t.set_entry(size, frozenset(nodes), score)
    return t


def shuffled_results(g: DiversityGraph, seed: int) -> list[ScoredResult]:
    out = list(g.nodes)
    random.Random(seed).shuffle(out)
    return out
