"""Labeled trees and their linear form.

A tree is identified with its *vertex list sequence*: one root-to-leaf label
path per leaf, sorted lexicographically. Children of a node must carry
pairwise distinct labels, which makes the sequence a canonical encoding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence, TextIO, Union

VertexList = tuple[str, ...]
VertexListSequence = tuple[VertexList, ...]

_FORBIDDEN = frozenset("()#")


class TreeError(ValueError):
    """Base class for malformed or invalid trees."""


class TreeSyntaxError(TreeError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


class DuplicateSiblingError(TreeError):
    def __init__(self, parent: str, label: str):
        self.parent = parent
        self.label = label
        super().__init__(f"node {parent!r} has more than one child labeled {label!r}")


class InconsistentSequenceError(TreeError):
    pass


def check_label(text: str) -> str:
    if not isinstance(text, str) or not text:
        raise TreeError(f"invalid label {text!r}: labels must be non-empty strings")
    for ch in text:
        if ch in _FORBIDDEN or ch.isspace() or not ch.isprintable():
            raise TreeError(f"invalid label {text!r}: character {ch!r} not allowed")
    return text


@dataclass(frozen=True)
class Tree:
    """Immutable labeled tree with children kept sorted by label.

    Input child order is not significant: ``Tree("a", [Tree("c"), Tree("b")])``
    and ``Tree("a", [Tree("b"), Tree("c")])`` are equal.
    """

    label: str
    children: tuple[Tree, ...] = field(default=())

    def __post_init__(self) -> None:
        check_label(self.label)
        kids = tuple(sorted(self.children, key=lambda c: c.label))
        for prev, cur in zip(kids, kids[1:]):
            if prev.label == cur.label:
                raise DuplicateSiblingError(self.label, cur.label)
        object.__setattr__(self, "children", kids)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaf_count(self) -> int:
        return sum(1 for _ in self.vertex_lists())

    def size(self) -> int:
        """Total number of vertices."""
        return 1 + sum(c.size() for c in self.children)

    def depth(self) -> int:
        if not self.children:
            return 0
        return 1 + max(c.depth() for c in self.children)

    def vertex_lists(self) -> Iterator[VertexList]:
        """Yield root-to-leaf label paths in lexicographic order."""
        stack: list[tuple[Tree, VertexList]] = [(self, (self.label,))]
        while stack:
            node, path = stack.pop()
            if not node.children:
                yield path
                continue
            for child in reversed(node.children):
                stack.append((child, path + (child.label,)))

    def __str__(self) -> str:
        return format_tree(self)


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class Relation(enum.Enum):
    EQUAL = "equal"
    LABEL_DIFF = "label-diff"
    X_GREATER = "x-greater"
    X_LESS = "x-less"


def compare_vertex_lists(a: VertexList, b: VertexList) -> Ordering:
    """Lexicographic order on label paths; a proper prefix sorts first.

    Labels compare by code point, which coincides with the byte order of
    their UTF-8 encoding.
    """
    if a == b:
        return Ordering.EQUAL
    return Ordering.LESS if a < b else Ordering.GREATER


def is_label_diff(x: VertexList, y: VertexList) -> bool:
    """True when ``x`` and ``y`` differ only in their final (leaf) label."""
    return len(x) == len(y) and x[:-1] == y[:-1] and x[-1] != y[-1]


def classify_pair(x: VertexList, y: VertexList) -> Relation:
    if x == y:
        return Relation.EQUAL
    if is_label_diff(x, y):
        return Relation.LABEL_DIFF
    return Relation.X_LESS if x < y else Relation.X_GREATER


def linearize(tree: Tree) -> VertexListSequence:
    return tuple(tree.vertex_lists())


def is_strictly_increasing(seq: Sequence[VertexList]) -> bool:
    return all(a < b for a, b in zip(seq, seq[1:]))


def delinearize(seq: Sequence[VertexList]) -> Tree:
    """Rebuild the tree whose vertex list sequence is ``seq``."""
    if not seq:
        raise InconsistentSequenceError("empty vertex list sequence")
    if any(not vl for vl in seq):
        raise InconsistentSequenceError("empty vertex list")
    root = seq[0][0]
    if any(vl[0] != root for vl in seq):
        raise InconsistentSequenceError("vertex lists do not share a root label")
    if not is_strictly_increasing(seq):
        raise InconsistentSequenceError("vertex lists are not strictly increasing")

    # nested dicts: label -> children; a leaf maps to None
    top: dict = {}
    for vl in seq:
        level = top
        for pos, label in enumerate(vl):
            last = pos == len(vl) - 1
            if label in level:
                if level[label] is None or last:
                    raise InconsistentSequenceError(
                        f"{'/'.join(vl[: pos + 1])} is both a leaf and an internal node"
                    )
                level = level[label]
            elif last:
                level[label] = None
            else:
                level[label] = {}
                level = level[label]

    def build(label: str, kids: dict | None) -> Tree:
        if kids is None:
            return Tree(label)
        return Tree(label, tuple(build(k, v) for k, v in kids.items()))

    return build(root, top[root])


# -- text format -------------------------------------------------------------


def _tokenize(text: str) -> Iterator[tuple[str, int]]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            yield ch, i
            i += 1
        elif ch == "#":
            raise TreeSyntaxError("unexpected '#'", text, i)
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()#":
                j += 1
            yield text[i:j], i
            i = j


def parse_tree(text: str) -> Tree:
    """Parse ``(label child ...)`` where each child is a bare label or a subtree."""
    # frames: [label, children, open-paren position]
    stack: list[list] = []
    result: Tree | None = None
    expect_label = False
    for tok, pos in _tokenize(text):
        if result is not None:
            raise TreeSyntaxError("trailing input after tree", text, pos)
        if expect_label:
            if tok in "()":
                raise TreeSyntaxError("expected a label after '('", text, pos)
            stack[-1][0] = check_label_at(tok, text, pos)
            expect_label = False
        elif tok == "(":
            stack.append([None, [], pos])
            expect_label = True
        elif tok == ")":
            if not stack:
                raise TreeSyntaxError("unbalanced ')'", text, pos)
            label, kids, _ = stack.pop()
            node = Tree(label, tuple(kids))
            if stack:
                stack[-1][1].append(node)
            else:
                result = node
        else:
            if not stack:
                raise TreeSyntaxError("bare label outside parentheses", text, pos)
            stack[-1][1].append(Tree(check_label_at(tok, text, pos)))
    if stack:
        raise TreeSyntaxError("unclosed '('", text, stack[-1][2])
    if result is None:
        raise TreeSyntaxError("empty input", text, len(text))
    return result


def check_label_at(tok: str, text: str, pos: int) -> str:
    try:
        return check_label(tok)
    except TreeError as exc:
        raise TreeSyntaxError(str(exc), text, pos) from None


def format_tree(tree: Tree) -> str:
    parts: list[str] = []

    def emit(node: Tree) -> None:
        parts.append("(" + node.label)
        for child in node.children:
            parts.append(" ")
            if child.children:
                emit(child)
            else:
                parts.append(child.label)
        parts.append(")")

    emit(tree)
    return "".join(parts)


# -- databases ---------------------------------------------------------------


class DatabaseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


class TreeDatabase:
    """Ordered collection of ``(tree id, Tree)`` records.

    Duplicate tree content is allowed; ids must be unique. Linearizations are
    computed once and cached.
    """

    def __init__(self, records: Iterable[tuple[int, Tree]] = ()):
        self.records: list[tuple[int, Tree]] = []
        self._ids: set[int] = set()
        self._seqs: list[VertexListSequence | None] = []
        for tree_id, tree in records:
            self.add(tree, tree_id)

    @classmethod
    def from_trees(cls, trees: Iterable[Tree]) -> TreeDatabase:
        return cls(enumerate(trees))

    def add(self, tree: Tree, tree_id: int | None = None) -> int:
        if tree_id is None:
            tree_id = len(self.records)
            while tree_id in self._ids:
                tree_id += 1
        if tree_id in self._ids:
            raise DatabaseError(f"duplicate tree id {tree_id}")
        self._ids.add(tree_id)
        self.records.append((tree_id, tree))
        self._seqs.append(None)
        return tree_id

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[tuple[int, Tree]]:
        return iter(self.records)

    def __getitem__(self, index: int) -> tuple[int, Tree]:
        return self.records[index]

    def tree(self, tree_id: int) -> Tree:
        for rid, tree in self.records:
            if rid == tree_id:
                return tree
        raise KeyError(tree_id)

    def sequence(self, index: int) -> VertexListSequence:
        """Linearization of the record at position ``index`` (cached)."""
        seq = self._seqs[index]
        if seq is None:
            seq = self._seqs[index] = linearize(self.records[index][1])
        return seq

    def sequences(self) -> Iterator[tuple[int, VertexListSequence]]:
        for index, (tree_id, _) in enumerate(self.records):
            yield tree_id, self.sequence(index)


PathLike = Union[str, Path]


def parse_database(lines: Iterable[str], source: str = "<input>") -> TreeDatabase:
    """Read ``[id TAB] tree`` records; blank lines and ``#`` comments are skipped."""
    db = TreeDatabase()
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        tree_id: int | None = None
        text = line
        if "\t" in line:
            head, text = line.split("\t", 1)
            try:
                tree_id = int(head)
            except ValueError:
                raise DatabaseError(f"bad tree id {head!r}", lineno, source) from None
            if tree_id < 0:
                raise DatabaseError(f"negative tree id {tree_id}", lineno, source)
        try:
            tree = parse_tree(text)
        except TreeError as exc:
            raise DatabaseError(str(exc), lineno, source) from None
        try:
            db.add(tree, tree_id)
        except DatabaseError as exc:
            raise DatabaseError(str(exc).split(": ", 1)[-1], lineno, source) from None
    return db


def read_database(path: PathLike) -> TreeDatabase:
    with open(path, encoding="utf-8") as fh:
        return parse_database(fh, source=str(path))


def write_database(db: Iterable[tuple[int, Tree]], out: TextIO) -> int:
    count = 0
    for tree_id, tree in db:
        out.write(f"{tree_id}\t{format_tree(tree)}\n")
        count += 1
    return count
