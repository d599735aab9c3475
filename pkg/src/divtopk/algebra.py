"""Combine operators over solution tables.

``oplus`` merges the tables of two node-disjoint, mutually non-adjacent
scopes by choosing the best size split; ``otimes`` keeps the per-size best
of two tables computed for the same scope under different assumptions.
Both operate on score vectors first and materialize node sets only for the
winning combination, so a fold over many tables stays cheap.
"""

from __future__ import annotations

from .graph import SolutionTable

# Pair evaluations performed by the most recent call; test instrumentation
# for the O(k^2) / O(k) cost contracts.
last_op_count = 0


def _check_capacity(a: SolutionTable, b: SolutionTable) -> int:
    if a.capacity != b.capacity:
        raise ValueError(
            f"capacity mismatch: {a.capacity} vs {b.capacity}"
        )
    return a.capacity


def oplus(a: SolutionTable, b: SolutionTable) -> SolutionTable:
    """Best combination of entries drawn from two disjoint scopes.

    For each result size ``i``, every split ``j + (i - j)`` with both sides
    present is considered; ties keep the smallest ``j``.  A size is ABSENT
    in the result when no feasible split exists.  Callers guarantee the two
    tables come from node-disjoint graphs with no edges between them.
    """
    global last_op_count
    k = _check_capacity(a, b)
    out = SolutionTable(k, seed_empty=False)
    ops = 0
    for i in range(k + 1):
        best_j = -1
        best_score = 0.0
        for j in range(i + 1):
            sa = a.score(j)
            if sa is None:
                continue
            sb = b.score(i - j)
            if sb is None:
                continue
            ops += 1
            total = sa + sb
            if best_j < 0 or total > best_score:
                best_j = j
                best_score = total
        if best_j >= 0:
            nodes = a.solution(best_j) | b.solution(i - best_j)
            out.set_entry(i, nodes, best_score)
    last_op_count = ops
    return out


def otimes(a: SolutionTable, b: SolutionTable) -> SolutionTable:
    """Per-size best of two tables over the same scope.

    ABSENT only where both sides are absent; equal scores keep the left
    operand.
    """
    global last_op_count
    k = _check_capacity(a, b)
    out = SolutionTable(k, seed_empty=False)
    ops = 0
    for i in range(k + 1):
        sa = a.score(i)
        sb = b.score(i)
        ops += 1
        if sa is None and sb is None:
            continue
        if sb is None or (sa is not None and sa >= sb):
            out.set_entry(i, a.solution(i), sa)
        else:
            out.set_entry(i, b.solution(i), sb)
    last_op_count = ops
    return out


def oplus_fold(tables, k: int) -> SolutionTable:
    """Fold ``oplus`` over any number of tables (identity: empty-set table)."""
    acc = SolutionTable(k)
    for t in tables:
        acc = oplus(acc, t)
    return acc
