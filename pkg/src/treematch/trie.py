"""Trie over vertex list sequences.

Each edge is labeled with one whole vertex list, so a root-to-node path spells
a prefix of one or more stored sequences. Vertex lists are interned in a pool
shared by all edges.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from .tree import TreeDatabase, VertexList, VertexListSequence


@dataclass(frozen=True)
class TrieStats:
    nodes: int
    edges: int
    terminals: int
    edge_label_vertices: int
    max_depth: int

    def as_dict(self) -> dict[str, int]:
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "terminals": self.terminals,
            "edge_label_vertices": self.edge_label_vertices,
            "max_depth": self.max_depth,
        }


class TreeTrie:
    """Immutable trie; node 0 is the root.

    Node ``q`` is described by three parallel arrays: ``children[q]`` lists
    child node indices in increasing edge-label order, ``edge[q]`` is the
    pool id of the vertex list on the edge into ``q`` (-1 for the root) and
    ``depth[q]`` is the number of edges from the root. ``terminal_ids`` maps
    terminal nodes to the ids of the trees whose sequence ends there.
    """

    root = 0

    def __init__(self) -> None:
        self.pool: list[VertexList] = []
        self._pool_ids: dict[VertexList, int] = {}
        self.children: list[Sequence[int]] = [()]
        self.edge: list[int] = [-1]
        self.depth: list[int] = [0]
        self.terminal_ids: dict[int, tuple[int, ...]] = {}

    def __len__(self) -> int:
        return len(self.children)

    @property
    def node_count(self) -> int:
        return len(self.children)

    def _intern(self, vl: VertexList) -> int:
        pid = self._pool_ids.get(vl)
        if pid is None:
            pid = self._pool_ids[vl] = len(self.pool)
            self.pool.append(vl)
        return pid

    def _new_child(self, parent: int, vl: VertexList) -> int:
        node = len(self.children)
        self.children.append(())
        self.edge.append(self._intern(vl))
        self.depth.append(self.depth[parent] + 1)
        kids = self.children[parent]
        if not kids:
            kids = self.children[parent] = []
        kids.append(node)  # type: ignore[union-attr]
        return node

    def _check_node(self, q: int) -> None:
        if not 0 <= q < len(self.children):
            raise IndexError(f"invalid trie node {q}")

    def edge_label(self, q: int) -> VertexList:
        """Vertex list on the edge entering ``q``."""
        self._check_node(q)
        if q == self.root:
            raise ValueError("the root has no incoming edge")
        return self.pool[self.edge[q]]

    def edges(self, q: int) -> list[tuple[VertexList, int]]:
        self._check_node(q)
        pool, edge = self.pool, self.edge
        return [(pool[edge[k]], k) for k in self.children[q]]

    def delta(self, q: int, v: VertexList) -> Optional[int]:
        """Child of ``q`` reached over the edge labeled ``v``, if any."""
        self._check_node(q)
        kids = self.children[q]
        if not kids:
            return None
        pool, edge = self.pool, self.edge
        pos = bisect_left(kids, v, key=lambda k: pool[edge[k]])
        if pos < len(kids) and pool[edge[kids[pos]]] == v:
            return kids[pos]
        return None

    def is_terminal(self, q: int) -> bool:
        return q in self.terminal_ids

    def exact_lookup(self, x: Sequence[VertexList]) -> frozenset[int]:
        q: Optional[int] = self.root
        for vl in x:
            q = self.delta(q, tuple(vl))
            if q is None:
                return frozenset()
        return frozenset(self.terminal_ids.get(q, ()))

    def iter_sequences(self) -> Iterator[tuple[VertexListSequence, tuple[int, ...]]]:
        """Stored sequences with their ids, in lexicographic order."""
        path: list[VertexList] = []
        stack: list[int] = [self.root]
        while stack:
            q = stack.pop()
            if q != self.root:
                del path[self.depth[q] - 1 :]
                path.append(self.pool[self.edge[q]])
            ids = self.terminal_ids.get(q)
            if ids:
                yield tuple(path), ids
            stack.extend(reversed(self.children[q]))

    def stats(self) -> TrieStats:
        pool, edge = self.pool, self.edge
        return TrieStats(
            nodes=len(self.children),
            edges=len(self.children) - 1,
            terminals=len(self.terminal_ids),
            edge_label_vertices=sum(len(pool[edge[q]]) for q in range(1, len(edge))),
            max_depth=max(self.depth),
        )


SequenceRecords = Iterable[tuple[int, VertexListSequence]]


def build_trie(db: Union[TreeDatabase, SequenceRecords]) -> TreeTrie:
    """Insert every record's vertex list sequence as a root-to-node path.

    ``db`` is a :class:`TreeDatabase` or an iterable of ``(id, sequence)``.
    Records are inserted in sorted order, so each node's children come out
    in increasing edge-label order and shared prefixes reuse nodes.
    """
    records = db.sequences() if isinstance(db, TreeDatabase) else db
    items = sorted(((tuple(map(tuple, seq)), tree_id) for tree_id, seq in records))
    trie = TreeTrie()
    path = [trie.root]  # path[k] = node at depth k along the previous sequence
    prev: VertexListSequence = ()
    terminals: dict[int, list[int]] = {}
    for seq, tree_id in items:
        common = 0
        limit = min(len(prev), len(seq))
        while common < limit and prev[common] == seq[common]:
            common += 1
        del path[common + 1 :]
        for vl in seq[common:]:
            path.append(trie._new_child(path[-1], vl))
        terminals.setdefault(path[-1], []).append(tree_id)
        prev = seq
    trie.terminal_ids = {q: tuple(ids) for q, ids in terminals.items()}
    trie.children = [tuple(kids) for kids in trie.children]
    return trie


def delta(trie: TreeTrie, q: int, v: VertexList) -> Optional[int]:
    return trie.delta(q, v)


def exact_lookup(trie: TreeTrie, x: Sequence[VertexList]) -> frozenset[int]:
    return trie.exact_lookup(x)


def trie_stats(trie: TreeTrie) -> TrieStats:
    return trie.stats()
