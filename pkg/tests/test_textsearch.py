import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divtopk import (
    Corpus,
    InvertedIndex,
    bounding_generator,
    brute_force,
    build_diversity_graph,
    div_cut,
    div_search,
    idf,
    incremental_generator,
    jaccard_sim,
    tfidf_score,
    tokenize,
)
from divtopk.textsearch import load_stopwords

from conftest import CORPUS_PATH, STOPWORDS_PATH


def corpus_of(sizes: dict[str, str]) -> Corpus:
    return Corpus.from_texts(sizes.items())


def synthetic_corpus(n_docs: int, seed: int) -> Corpus:
    rng = random.Random(seed)
    vocab = [f"w{i}" for i in range(30)]
    pairs = []
    for d in range(n_docs):
        words = rng.choices(vocab, k=rng.randint(3, 12))
        pairs.append((f"d{d:03d}", " ".join(words)))
    return Corpus.from_texts(pairs)


class TestTokenize:
    def test_lowercase_and_split(self):
        assert tokenize("Apple, pie! 42-go") == ["apple", "pie", "42", "go"]

    def test_stopwords_removed_at_build(self, tmp_path):
        stop = tmp_path / "stop.txt"
        stop.write_text("the\nof\n")
        c = Corpus.from_texts([("d", "the pie of doom")], load_stopwords(str(stop)))
        assert set(c.docs["d"]) == {"pie", "doom"}
        assert c.lengths["d"] == 2


class TestIdf:
    def _corpus_with_df(self, n, df, token="t"):
        pairs = [(f"d{i}", token if i < df else f"u{i}") for i in range(n)]
        return Corpus.from_texts(pairs)

    def test_df_one_of_ten(self):
        c = self._corpus_with_df(10, 1)
        assert idf(c, "t") == pytest.approx(math.log(5), rel=1e-12)

    def test_df_nine_of_ten(self):
        c = self._corpus_with_df(10, 9)
        assert idf(c, "t") == pytest.approx(0.0, abs=1e-12)

    def test_unknown_token(self):
        c = self._corpus_with_df(10, 1)
        assert idf(c, "zzz") == pytest.approx(math.log(10), rel=1e-12)

    def test_negative_values_clamped(self):
        c = Corpus.from_texts([("d1", "t"), ("d2", "t")])  # df + 1 > N
        assert idf(c, "t") == 0.0


class TestTfidf:
    def test_single_token_doc(self):
        pairs = [("q", "t")] + [(f"d{i}", f"u{i}") for i in range(9)]
        c = Corpus.from_texts(pairs)
        assert tfidf_score(c, ["t"], "q") == pytest.approx(math.log(5))

    def test_absent_term_contributes_zero(self):
        c = corpus_of({"d1": "alpha beta", "d2": "gamma"})
        assert tfidf_score(c, ["gamma"], "d1") == 0.0

    def test_multi_term_additivity(self):
        c = corpus_of({"d1": "alpha beta beta", "d2": "alpha", "d3": "delta"})
        q1, q2 = ["alpha"], ["beta"]
        both = tfidf_score(c, q1 + q2, "d1")
        assert both == pytest.approx(
            tfidf_score(c, q1, "d1") + tfidf_score(c, q2, "d1")
        )

    def test_unknown_doc(self):
        c = corpus_of({"d1": "x"})
        with pytest.raises(ValueError, match="'nope'"):
            tfidf_score(c, ["x"], "nope")

    def test_length_normalization_counts_post_stopword_tokens(self, tmp_path):
        stop = tmp_path / "stop.txt"
        stop.write_text("filler\n")
        c = Corpus.from_texts(
            [("d", "term filler filler filler"), ("e", "other")],
            load_stopwords(str(stop)),
        )
        assert c.lengths["d"] == 1
        assert tfidf_score(c, ["term"], "d") == pytest.approx(idf(c, "term"))


class TestJaccard:
    def test_identical_docs(self):
        c = corpus_of({"d1": "a b c", "d2": "a b c", "d3": "x"})
        assert jaccard_sim(c, "d1", "d2") == 1.0
        assert jaccard_sim(c, "d1", "d1") == 1.0

    def test_disjoint_docs(self):
        c = corpus_of({"d1": "a b", "d2": "c d", "d3": "e"})
        assert jaccard_sim(c, "d1", "d2") == 0.0

    def test_one_third_overlap(self):
        # idf equal and positive across a, b, c by symmetric construction:
        # each appears in exactly two of six documents.
        c = corpus_of({
            "d1": "a b", "d2": "b c", "d3": "c a",
            "f1": "x1", "f2": "x2", "f3": "x3",
        })
        w = idf(c, "a")
        assert w == idf(c, "b") == idf(c, "c") and w > 0
        assert jaccard_sim(c, "d1", "d2") == pytest.approx(1 / 3)

    def test_both_empty_docs(self, tmp_path):
        stop = tmp_path / "stop.txt"
        stop.write_text("gone\n")
        c = Corpus.from_texts(
            [("d1", "gone"), ("d2", "gone gone"), ("d3", "stay")],
            load_stopwords(str(stop)),
        )
        assert jaccard_sim(c, "d1", "d2") == 0.0

    def test_multiset_multiplicities(self):
        # shared token 'b' appears twice in one doc, once in the other
        c = corpus_of({"d1": "a b b", "d2": "b c", "d3": "x", "d4": "y"})
        wa, wb, wc = idf(c, "a"), idf(c, "b"), idf(c, "c")
        expect = wb / (wa + 2 * wb + wc)
        assert jaccard_sim(c, "d1", "d2") == pytest.approx(expect)

    @given(st.integers(min_value=0, max_value=500))
    @settings(max_examples=60, deadline=None)
    def test_range_and_symmetry(self, seed):
        c = synthetic_corpus(12, seed)
        ids = sorted(c.docs)
        rng = random.Random(seed)
        d1, d2 = rng.choice(ids), rng.choice(ids)
        s = jaccard_sim(c, d1, d2)
        assert 0.0 <= s <= 1.0
        assert s == jaccard_sim(c, d2, d1)
        if c.docs[d1]:
            assert jaccard_sim(c, d1, d1) == 1.0


class TestIncrementalGenerator:
    def test_yields_in_stored_order(self):
        c = corpus_of({
            "d1": "t t t t", "d2": "t t", "d3": "t", "d4": "u", "d5": "u",
            "d6": "u", "d7": "u", "d8": "u",
        })
        idx = InvertedIndex(c)
        gen = incremental_generator(idx, "t")
        first = gen.next()
        second = gen.next()
        assert first.score >= second.score
        assert gen.unseen_bound() == second.score

    def test_unknown_token_exhausts_immediately(self):
        idx = InvertedIndex(corpus_of({"d1": "a"}))
        gen = incremental_generator(idx, "zzz")
        assert gen.next() is None

    def test_empty_posting_list(self):
        idx = InvertedIndex(corpus_of({"d1": "a", "d2": "b"}))
        assert incremental_generator(idx, "missing").next() is None

    @pytest.mark.parametrize("seed", range(5))
    def test_scores_never_increase(self, seed):
        c = synthetic_corpus(80, seed)
        idx = InvertedIndex(c)
        token = max(c.df, key=lambda w: c.df[w])
        gen = incremental_generator(idx, token)
        pulls = 0
        last = math.inf
        while True:
            r = gen.next()
            if r is None:
                break
            assert r.score <= last + 1e-12
            last = r.score
            pulls += 1
        assert pulls == c.df[token]


class TestBoundingGenerator:
    def test_single_term_degenerates_to_scan(self):
        c = corpus_of({"d1": "t t", "d2": "t", "d3": "u", "d4": "u", "d5": "u"})
        idx = InvertedIndex(c)
        inc = incremental_generator(idx, "t")
        bnd = bounding_generator(idx, ["t"])
        inc_seq, bnd_seq = [], []
        while (r := inc.next()) is not None:
            inc_seq.append((r.id, r.score))
        while (r := bnd.next()) is not None:
            bnd_seq.append((r.id, r.score))
        assert inc_seq == bnd_seq

    def test_doc_in_both_lists_yielded_once_with_full_score(self):
        c = corpus_of({
            "d1": "alpha beta", "d2": "alpha", "d3": "beta", "d4": "x", "d5": "y",
        })
        idx = InvertedIndex(c)
        gen = bounding_generator(idx, ["alpha", "beta"])
        seen = {}
        while (r := gen.next()) is not None:
            assert r.id not in seen
            seen[r.id] = r.score
        assert seen["d1"] == pytest.approx(tfidf_score(c, ["alpha", "beta"], "d1"))
        assert set(seen) == {"d1", "d2", "d3"}

    def test_all_terms_unknown_exhausts(self):
        idx = InvertedIndex(corpus_of({"d1": "a"}))
        assert bounding_generator(idx, ["zz", "yy"]).next() is None

    @pytest.mark.parametrize("seed", range(5))
    def test_bound_dominates_later_yields(self, seed):
        c = synthetic_corpus(60, seed)
        idx = InvertedIndex(c)
        tokens = sorted(c.df, key=lambda w: -c.df[w])[:3]
        gen = bounding_generator(idx, tokens)
        bound = gen.unseen_bound()
        while True:
            r = gen.next()
            if r is None:
                break
            assert r.score <= bound + 1e-9
            new_bound = gen.unseen_bound()
            assert new_bound <= bound + 1e-12
            bound = new_bound


class TestGeneratorContractsAtScale:
    def test_thousand_pulls_hold_both_contracts(self):
        total = 0
        for seed in range(6):
            c = synthetic_corpus(120, 900 + seed)
            idx = InvertedIndex(c)
            tokens = sorted(c.df, key=lambda w: -c.df[w])[:2]
            gen = bounding_generator(idx, tokens)
            bound = gen.unseen_bound()
            while (r := gen.next()) is not None:
                assert r.score <= bound + 1e-9
                bound_next = gen.unseen_bound()
                assert bound_next <= bound + 1e-12
                bound = bound_next
                total += 1
            inc = incremental_generator(idx, tokens[0])
            last = math.inf
            while (r := inc.next()) is not None:
                assert r.score <= last + 1e-12
                last = r.score
                total += 1
        assert total >= 1000


class TestEndToEnd:
    @pytest.mark.parametrize("tau", [0.15, 0.4])
    @pytest.mark.parametrize("mode", ["incremental", "bounding"])
    def test_driver_equals_full_graph_solve(self, tau, mode):
        c = Corpus.from_jsonl(str(CORPUS_PATH), load_stopwords(str(STOPWORDS_PATH)))
        idx = InvertedIndex(c)
        if mode == "incremental":
            gen = incremental_generator(idx, "survey")
            docs = [d for d, _ in idx.lookup("survey")]
            tokens = ["survey"]
        else:
            gen = bounding_generator(idx, ["survey", "solar"])
            docs = sorted({d for t in ("survey", "solar") for d, _ in idx.lookup(t)})
            tokens = ["survey", "solar"]
        similar = lambda a, b: jaccard_sim(c, a, b) > tau
        k = 4
        table = div_search(gen, div_cut, similar, k)
        from divtopk import ScoredResult
        full = build_diversity_graph(
            [ScoredResult(d, tfidf_score(c, tokens, d)) for d in docs], similar
        )
        expect = div_cut(full, k)
        assert table.best()[2] == pytest.approx(expect.best()[2], rel=1e-9)
