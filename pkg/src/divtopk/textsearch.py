"""Desk-scale text retrieval feeding the diversified search driver.

Documents are token multisets (lowercased, split on non-alphanumerics,
stopwords removed).  Query relevance is TF-IDF normalized by the square
root of document length; document similarity is weighted Jaccard over the
shared vocabulary, with each token weighted by its IDF.  An inverted index
with score-sorted posting lists backs two generators: a sequential scan
for single-keyword queries (incremental mode) and a threshold-style
round-robin aggregation for multi-keyword queries (bounding mode).
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from typing import Iterable, Sequence

from .framework import BOUNDING, INCREMENTAL, ResultGenerator
from .graph import ScoredResult

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """Lowercase tokens, split on anything that is not a letter or digit."""
    return _TOKEN_RE.findall(text.lower())


def load_stopwords(path: str) -> frozenset[str]:
    """Plain-text stopword list, one word per line; blank lines ignored."""
    with open(path, "r", encoding="utf-8") as fh:
        return frozenset(w.strip().lower() for w in fh if w.strip())


class Corpus:
    """Token multisets per document plus document frequencies."""

    def __init__(self, docs: dict[str, Counter]) -> None:
        self.docs = docs
        self.lengths = {d: sum(c.values()) for d, c in docs.items()}
        self.df: Counter = Counter()
        for c in docs.values():
            self.df.update(set(c))
        self.size = len(docs)

    @classmethod
    def from_texts(
        cls,
        pairs: Iterable[tuple[str, str]],
        stopwords: frozenset[str] | None = None,
    ) -> "Corpus":
        stop = stopwords or frozenset()
        docs: dict[str, Counter] = {}
        for doc_id, text in pairs:
            if doc_id in docs:
                raise ValueError(f"duplicate document id: {doc_id!r}")
            docs[doc_id] = Counter(t for t in tokenize(text) if t not in stop)
        return cls(docs)

    @classmethod
    def from_jsonl(
        cls, path: str, stopwords: frozenset[str] | None = None
    ) -> "Corpus":
        """One JSON object per line: {"id": ..., "text": ...}."""
        pairs = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                pairs.append((str(obj["id"]), str(obj["text"])))
        return cls.from_texts(pairs, stopwords)

    def _require(self, doc_id: str) -> None:
        if doc_id not in self.docs:
            raise ValueError(f"unknown document id: {doc_id!r}")


def idf(corpus: Corpus, w: str) -> float:
    """Smoothed inverse document frequency, natural log, clamped at zero.

    The clamp keeps all weights non-negative, which every downstream score
    and similarity assumes.
    """
    if corpus.size == 0:
        return 0.0
    return max(0.0, math.log(corpus.size / (corpus.df.get(w, 0) + 1)))


def tfidf_score(corpus: Corpus, q: Sequence[str], d: str) -> float:
    """Sum of per-term TF-IDF, normalized by sqrt of document length.

    Length counts tokens after stopword removal.  Terms absent from the
    document contribute nothing; an empty document scores zero.
    """
    corpus._require(d)
    length = corpus.lengths[d]
    if length == 0:
        return 0.0
    counts = corpus.docs[d]
    total = sum(counts.get(qi, 0) * idf(corpus, qi) for qi in q)
    return total / math.sqrt(length)


def jaccard_sim(corpus: Corpus, d1: str, d2: str) -> float:
    """Weighted Jaccard similarity of two documents, in [0, 1].

    Multiset semantics: a token occurring twice in both documents counts
    its IDF twice in the intersection.  Two empty documents are defined to
    be dissimilar; identical non-empty documents score 1 even when every
    shared token has zero IDF.
    """
    corpus._require(d1)
    corpus._require(d2)
    c1, c2 = corpus.docs[d1], corpus.docs[d2]
    if not c1 and not c2:
        return 0.0
    num = 0.0
    den = 0.0
    for w in set(c1) | set(c2):
        weight = idf(corpus, w)
        num += min(c1.get(w, 0), c2.get(w, 0)) * weight
        den += max(c1.get(w, 0), c2.get(w, 0)) * weight
    if den == 0.0:
        return 1.0 if c1 == c2 else 0.0
    return num / den


class InvertedIndex:
    """Per-token posting lists of (doc id, partial score), best first.

    The partial score of a posting is the single-term TF-IDF contribution,
    so a document's full score for a query is the sum of its partials over
    the query terms.  Ties in a posting list break by ascending doc id.
    """

    def __init__(self, corpus: Corpus) -> None:
        self.corpus = corpus
        postings: dict[str, list[tuple[str, float]]] = {}
        for d, counts in corpus.docs.items():
            length = corpus.lengths[d]
            if length == 0:
                continue
            norm = math.sqrt(length)
            for w, c in counts.items():
                postings.setdefault(w, []).append((d, c * idf(corpus, w) / norm))
        for w in postings:
            postings[w].sort(key=lambda e: (-e[1], e[0]))
        self.postings = postings

    def lookup(self, token: str) -> list[tuple[str, float]]:
        return self.postings.get(token, [])


class _IncrementalScan(ResultGenerator):
    """Sequential scan of one posting list; scores arrive best first."""

    mode = INCREMENTAL

    def __init__(self, postings: list[tuple[str, float]]) -> None:
        self._postings = postings
        self._i = 0
        self._last = math.inf

    def next(self) -> ScoredResult | None:
        if self._i >= len(self._postings):
            return None
        doc, score = self._postings[self._i]
        self._i += 1
        self._last = score
        return ScoredResult(doc, score)

    def unseen_bound(self) -> float:
        return self._last


class _ThresholdAggregation(ResultGenerator):
    """Round-robin sorted access over several posting lists.

    Each newly surfaced document is yielded once with its full query score.
    The unseen bound is the sum of the partial scores at every list's
    current frontier (its next unread posting): any document not yet
    surfaced sits at or below the frontier in every list it appears in.
    """

    mode = BOUNDING

    def __init__(self, corpus: Corpus, q: Sequence[str], lists) -> None:
        self._corpus = corpus
        self._q = list(q)
        self._lists = lists
        self._cursors = [0] * len(lists)
        self._turn = 0
        self._seen: set[str] = set()

    def next(self) -> ScoredResult | None:
        n = len(self._lists)
        while any(self._cursors[i] < len(self._lists[i]) for i in range(n)):
            i = self._turn % n
            self._turn += 1
            if self._cursors[i] >= len(self._lists[i]):
                continue
            doc, _ = self._lists[i][self._cursors[i]]
            self._cursors[i] += 1
            if doc in self._seen:
                continue
            self._seen.add(doc)
            return ScoredResult(doc, tfidf_score(self._corpus, self._q, doc))
        return None

    def unseen_bound(self) -> float:
        total = 0.0
        for lst, cur in zip(self._lists, self._cursors):
            if cur < len(lst):
                total += lst[cur][1]
        return total


def incremental_generator(index: InvertedIndex, q: str) -> ResultGenerator:
    """Generator for a single-keyword query; unknown tokens exhaust at once."""
    return _IncrementalScan(index.lookup(q))


def bounding_generator(index: InvertedIndex, q: Sequence[str]) -> ResultGenerator:
    """Threshold-aggregation generator for a multi-keyword query."""
    lists = [index.lookup(t) for t in q]
    lists = [lst for lst in lists if lst]
    return _ThresholdAggregation(index.corpus, q, lists)
