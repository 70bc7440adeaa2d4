"""Threshold retrieval: trie search with cut-off pruning, and a linear scan."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .distance import DEFAULT_COSTS, CostParams, DistanceMatrix, dist
from .tree import TreeDatabase, VertexList
from .trie import TreeTrie


@dataclass(frozen=True)
class SearchParams:
    t: int
    costs: CostParams = field(default=DEFAULT_COSTS)

    def __post_init__(self) -> None:
        if isinstance(self.t, bool) or not isinstance(self.t, int) or self.t < 0:
            raise ValueError(f"threshold must be a non-negative integer, got {self.t!r}")


class Match(NamedTuple):
    tree_id: int
    distance: int


MatchSet = list[Match]


@dataclass
class SearchTrace:
    """Counters from one :func:`approx_search` call.

    ``visited`` counts the root plus every node whose cut-off distance stayed
    within the threshold; ``pruned`` counts candidate extensions rejected by
    the cut-off test. Every pushed column is either visited or pruned.
    """

    visited: int = 0
    pushed: int = 0
    popped: int = 0
    pruned: int = 0
    emitted: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "visited": self.visited,
            "pushed": self.pushed,
            "popped": self.popped,
            "pruned": self.pruned,
            "emitted": self.emitted,
        }


def _sorted_matches(found: dict[int, int]) -> MatchSet:
    return sorted((Match(i, d) for i, d in found.items()), key=lambda m: (m.distance, m.tree_id))


def approx_search(
    trie: TreeTrie, x: Sequence[VertexList], params: SearchParams
) -> tuple[MatchSet, SearchTrace]:
    """All stored trees within ``params.t`` of the query sequence ``x``.

    Depth-first over the trie with an explicit stack of ``(node, depth)``.
    A single distance matrix follows the current path: entering a node at
    depth ``d`` first pops columns back to ``d - 1``, then pushes the column
    for the node's edge label. A node whose cut-off distance exceeds the
    threshold is not expanded. Every terminal reached within the cut-off is
    checked against the full distance, since a terminal on the way to a
    deeper match need not match itself.
    """
    t = params.t
    h = DistanceMatrix(x, params.costs, cap=t)
    trace = SearchTrace(visited=1)
    found: dict[int, int] = {}

    children, edge, pool = trie.children, trie.edge, trie.pool
    terminal_ids = trie.terminal_ids

    root_ids = terminal_ids.get(trie.root)
    if root_ids and h.final() <= t:
        for tree_id in root_ids:
            found[tree_id] = h.final()

    stack = [(k, 1) for k in reversed(children[trie.root])]
    while stack:
        node, depth = stack.pop()
        trace.popped += h.truncate(depth - 1)
        h.push(pool[edge[node]])
        trace.pushed += 1
        if h.cutdist(t) > t:
            trace.pruned += 1
            continue
        trace.visited += 1
        ids = terminal_ids.get(node)
        if ids:
            d = h.final()
            if d <= t:
                for tree_id in ids:
                    found[tree_id] = d
        kids = children[node]
        if kids:
            stack.extend((k, depth + 1) for k in reversed(kids))
    trace.popped += h.truncate(0)
    trace.emitted = len(found)
    return _sorted_matches(found), trace


def linear_scan(db: TreeDatabase, x: Sequence[VertexList], params: SearchParams) -> MatchSet:
    """Reference answer: distance to every record, filtered by the threshold."""
    found: dict[int, int] = {}
    t, costs = params.t, params.costs
    for tree_id, seq in db.sequences():
        d = dist(x, seq, costs, limit=t)
        if d <= t:
            found[tree_id] = d
    return _sorted_matches(found)
