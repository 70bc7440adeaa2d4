"""Tree generators used by the tests, independent of treematch.synth."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from hypothesis import strategies as st

from treematch.tree import Tree, VertexListSequence, linearize

EXAMPLE_A = "(a (b (a x) c k) e)"
# (b) has one extra leaf, (c) one relabeled leaf
EXAMPLE_B = "(a (b (a x) c k m) e)"
EXAMPLE_C = "(a (b (a x) c z) e)"


def random_tree(rng: random.Random, labels: str, max_depth: int, max_fanout: int, leaf_p: float = 0.4) -> Tree:
    def grow(label: str, depth: int) -> Tree:
        if depth == max_depth or (depth > 0 and rng.random() < leaf_p):
            return Tree(label)
        k = rng.randint(1, min(max_fanout, len(labels)))
        return Tree(label, tuple(grow(c, depth + 1) for c in rng.sample(labels, k)))

    return grow(rng.choice(labels), 0)


@lru_cache(maxsize=None)
def _enumerate(label: str, depth: int, max_leaves: int, labels: str) -> tuple[tuple[Tree, int], ...]:
    out: list[tuple[Tree, int]] = [(Tree(label), 1)]
    if depth == 0:
        return tuple(out)
    for k in range(1, len(labels) + 1):
        for kid_labels in itertools.combinations(labels, k):

            def fill(i: int, budget: int):
                if i == len(kid_labels):
                    yield (), 0
                    return
                for sub, used in _enumerate(kid_labels[i], depth - 1, budget, labels):
                    if used <= budget:
                        for rest, more in fill(i + 1, budget - used):
                            yield (sub,) + rest, used + more

            for kids, leaves in fill(0, max_leaves):
                out.append((Tree(label, kids), leaves))
    return tuple(out)


def all_trees(labels: str, max_depth: int, max_leaves: int, roots: str | None = None) -> list[Tree]:
    """Every valid tree over ``labels`` within the depth and leaf bounds."""
    found = []
    for root in roots if roots is not None else labels:
        found.extend(t for t, _ in _enumerate(root, max_depth, max_leaves, labels))
    return found


def all_sequences(labels: str, max_depth: int, max_leaves: int, roots: str | None = None) -> list[VertexListSequence]:
    return sorted({linearize(t) for t in all_trees(labels, max_depth, max_leaves, roots)})


label_st = st.sampled_from("abcde")


def _node(children):
    return st.builds(
        lambda label, kids: Tree(label, tuple(kids)),
        label_st,
        st.lists(children, min_size=1, max_size=3, unique_by=lambda t: t.label),
    )


trees_st = st.recursive(label_st.map(Tree), _node, max_leaves=12)
