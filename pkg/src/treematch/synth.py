"""Random tree databases and perturbed queries for benchmarking."""

from __future__ import annotations

import itertools
import random
import string
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .distance import DEFAULT_COSTS, CostParams
from .tree import Tree, TreeDatabase

Rational = Union[Fraction, float]


class GenConfigError(ValueError):
    pass


def alphabet_labels(size: int) -> list[str]:
    """``a, b, ..., z, aa, ab, ...``: ``size`` distinct lowercase labels."""
    out: list[str] = []
    width = 1
    while len(out) < size:
        for combo in itertools.product(string.ascii_lowercase, repeat=width):
            if len(out) == size:
                break
            out.append("".join(combo))
        width += 1
    return out


@dataclass(frozen=True)
class GenParams:
    """Shape of a synthetic database.

    ``alp`` is the probability that a child created above ``max_depth``
    becomes a leaf; nodes at ``max_depth`` are always leaves. The root is at
    depth 0 and is always internal.
    """

    count: int
    alp: Rational = Fraction(1, 3)
    max_children: int = 8
    max_depth: int = 5
    alphabet: int = 26
    seed: int = 0

    def __post_init__(self) -> None:
        if self.count < 0:
            raise GenConfigError("tree count must be non-negative")
        if not 0 < self.alp <= 1:
            raise GenConfigError(f"alp must be in (0, 1], got {self.alp}")
        if self.max_children < 1:
            raise GenConfigError("max_children must be positive")
        if self.max_depth < 1:
            raise GenConfigError("max_depth must be at least 1")
        if self.alphabet < self.max_children:
            raise GenConfigError(
                f"alphabet of {self.alphabet} labels cannot give {self.max_children} distinct siblings"
            )


def gen_tree(p: GenParams, rng: random.Random, labels: list[str]) -> Tree:
    alp = float(p.alp)

    def grow(label: str, depth: int) -> Tree:
        k = rng.randint(1, p.max_children)
        kids = []
        for child in rng.sample(labels, k):
            if depth + 1 >= p.max_depth or rng.random() < alp:
                kids.append(Tree(child))
            else:
                kids.append(grow(child, depth + 1))
        return Tree(label, tuple(kids))

    return grow(rng.choice(labels), 0)


def gen_database(p: GenParams) -> TreeDatabase:
    rng = random.Random(p.seed)
    labels = alphabet_labels(p.alphabet)
    return TreeDatabase.from_trees(gen_tree(p, rng, labels) for _ in range(p.count))


# -- perturbation ------------------------------------------------------------

OPS = ("delete", "insert", "relabel")


@dataclass(frozen=True)
class PerturbParams:
    """How to damage a tree.

    ``edits`` is the number of operations to apply. If ``budget`` is set,
    operations whose nominal cost would push the total past it are not
    chosen. ``weights`` gives the relative frequency of delete, insert and
    relabel.
    """

    edits: int = 1
    weights: tuple[float, float, float] = (1.0, 1.0, 1.0)
    budget: Optional[int] = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.edits < 0:
            raise ValueError("edits must be non-negative")
        if len(self.weights) != 3 or any(w < 0 for w in self.weights) or not any(self.weights):
            raise ValueError(f"weights must be three non-negative numbers, not all zero: {self.weights}")
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be non-negative")


class _Node:
    __slots__ = ("label", "children", "parent")

    def __init__(self, label: str, parent: Optional[_Node] = None):
        self.label = label
        self.children: list[_Node] = []
        self.parent = parent


def _thaw(tree: Tree) -> tuple[_Node, set[str]]:
    labels: set[str] = set()
    root = _Node(tree.label)
    stack = [(tree, root)]
    while stack:
        src, dst = stack.pop()
        labels.add(src.label)
        for child in src.children:
            node = _Node(child.label, dst)
            dst.children.append(node)
            stack.append((child, node))
    return root, labels


def _freeze(node: _Node) -> Tree:
    return Tree(node.label, tuple(_freeze(c) for c in node.children))


def _walk(root: _Node):
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(node.children)


def _label_in_slot(node: _Node) -> Optional[str]:
    """A new label for leaf ``node`` that keeps its rank among its siblings.

    Sibling order decides where the leaf's vertex list sits in the sequence;
    moving it past a sibling subtree would make one relabel cost more than
    a single label change.
    """
    if node.parent is None:
        return node.label + "!"
    ranked = sorted(c.label for c in node.parent.children)
    pos = ranked.index(node.label)
    upper = ranked[pos + 1] if pos + 1 < len(ranked) else None
    cand = node.label + "!"
    if upper is None or cand < upper:
        return cand
    return None


def perturb(
    tree: Tree,
    p: PerturbParams,
    costs: CostParams = DEFAULT_COSTS,
    rng: Optional[random.Random] = None,
) -> tuple[Tree, int]:
    """Apply ``p.edits`` random leaf edits; return the new tree and their nominal cost.

    Deletions only remove a leaf that has a sibling and insertions only go
    under nodes that already have children, so each changes exactly one
    vertex list. A relabel appends ``!`` to the leaf label, which keeps the
    leaf between the same two siblings (the generator never emits ``!``, so
    the result is not another database label). Edits that are infeasible or over budget are
    retried a bounded number of times; a shortfall shows up as fewer edits
    and a lower returned cost.
    """
    if rng is None:
        rng = random.Random(p.seed)
    root, used = _thaw(tree)
    op_cost = {"delete": costs.s, "insert": costs.s, "relabel": costs.c}
    fresh_counter = 0

    def fresh() -> str:
        nonlocal fresh_counter
        while True:
            fresh_counter += 1
            label = f"N{fresh_counter}"
            if label not in used:
                used.add(label)
                return label

    applied = 0
    done = 0
    attempts = 0
    max_attempts = 20 * p.edits + 20
    while done < p.edits and attempts < max_attempts:
        attempts += 1
        op = rng.choices(OPS, weights=p.weights)[0]
        if p.budget is not None and applied + op_cost[op] > p.budget:
            continue
        nodes = list(_walk(root))
        if op == "delete":
            targets = [n for n in nodes if not n.children and n.parent and len(n.parent.children) > 1]
        elif op == "insert":
            targets = [n for n in nodes if n.children]
        else:
            targets = [n for n in nodes if not n.children]
        if not targets:
            continue
        target = rng.choice(targets)
        if op == "delete":
            target.parent.children.remove(target)
        elif op == "insert":
            target.children.append(_Node(fresh(), target))
        else:
            label = _label_in_slot(target)
            if label is None:
                continue
            target.label = label
        applied += op_cost[op]
        done += 1
    return _freeze(root), applied
