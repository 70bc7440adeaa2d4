"""Timed retrieval runs over a query set, with a linear-scan cross-check."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .search import MatchSet, SearchParams, approx_search, linear_scan
from .tree import Tree, TreeDatabase, linearize
from .trie import TreeTrie, build_trie


class CrossCheckError(RuntimeError):
    """The trie search and the linear scan disagreed on a query."""

    def __init__(self, query_index: int, t: int, trie_result: MatchSet, scan_result: MatchSet):
        self.query_index = query_index
        self.trie_result = trie_result
        self.scan_result = scan_result
        only_trie = sorted(set(trie_result) - set(scan_result))
        only_scan = sorted(set(scan_result) - set(trie_result))
        super().__init__(
            f"query {query_index} at t={t}: trie search and linear scan disagree "
            f"(trie only: {only_trie}, scan only: {only_scan})"
        )


@dataclass
class BenchReport:
    database: str
    threshold: int
    queries: int
    avg_leaves: float
    avg_ms: float
    avg_found: float
    avg_visited_fraction: float
    # per-query results, kept for callers; not part of the printed report
    results: list[MatchSet] = field(default_factory=list, repr=False)

    def as_dict(self) -> dict:
        """Report fields at the precision the text table prints."""
        return {
            "database": self.database,
            "threshold": self.threshold,
            "queries": self.queries,
            "avg_leaves": round(self.avg_leaves, 2),
            "avg_ms": round(self.avg_ms, 2),
            "avg_found": round(self.avg_found, 2),
            "avg_visited_fraction": round(self.avg_visited_fraction, 4),
        }


def run_bench(
    db: TreeDatabase,
    queries: Sequence[Tree],
    params: SearchParams,
    repeat: int = 1,
    trie: Optional[TreeTrie] = None,
    database: str = "db",
    cross_check: bool = True,
) -> BenchReport:
    """Search every query against ``db`` and average the benchmark figures.

    Each query is timed as the best of ``repeat`` runs on a monotonic clock;
    building the trie is not timed. Unless ``cross_check`` is off, every
    result is compared with :func:`linear_scan` and a mismatch raises
    :class:`CrossCheckError`.
    """
    if repeat < 1:
        raise ValueError("repeat must be positive")
    if not queries:
        raise ValueError("no queries")
    if trie is None:
        trie = build_trie(db)
    nodes = trie.node_count

    leaves = 0
    total_ms = 0.0
    found = 0
    visited = 0.0
    results: list[MatchSet] = []
    for qi, query in enumerate(queries):
        x = linearize(query)
        best = float("inf")
        for _ in range(repeat):
            start = time.perf_counter()
            matches, trace = approx_search(trie, x, params)
            best = min(best, time.perf_counter() - start)
        if cross_check:
            expected = linear_scan(db, x, params)
            if matches != expected:
                raise CrossCheckError(qi, params.t, matches, expected)
        leaves += len(x)
        total_ms += best * 1000.0
        found += len(matches)
        visited += trace.visited / nodes
        results.append(matches)

    k = len(queries)
    return BenchReport(
        database=database,
        threshold=params.t,
        queries=k,
        avg_leaves=leaves / k,
        avg_ms=total_ms / k,
        avg_found=found / k,
        avg_visited_fraction=visited / k,
        results=results,
    )


_COLUMNS = (
    ("Database", "database", "{}"),
    ("Threshold", "threshold", "{}"),
    ("Queries", "queries", "{}"),
    ("Avg. Leaves/Query Tree", "avg_leaves", "{:.2f}"),
    ("Avg. Search Time (Msec)", "avg_ms", "{:.2f}"),
    ("Avg. Trees Found/Query", "avg_found", "{:.2f}"),
    ("Avg. Visited Fraction", "avg_visited_fraction", "{:.4f}"),
)


def format_table(reports: Sequence[BenchReport]) -> str:
    rows = [[title for title, _, _ in _COLUMNS]]
    for rep in reports:
        data = rep.as_dict()
        rows.append([fmt.format(data[attr]) for _, attr, fmt in _COLUMNS])
    widths = [max(len(row[i]) for row in rows) for i in range(len(_COLUMNS))]
    lines = []
    for n, row in enumerate(rows):
        cells = [cell.ljust(w) if i == 0 else cell.rjust(w) for i, (cell, w) in enumerate(zip(row, widths))]
        lines.append("  ".join(cells).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def format_json(reports: Sequence[BenchReport]) -> str:
    return json.dumps([rep.as_dict() for rep in reports], indent=2)
