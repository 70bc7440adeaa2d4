import io
import random
from fractions import Fraction

import pytest

from treematch.distance import CostParams, dist, dist_oracle
from treematch.synth import GenConfigError, GenParams, PerturbParams, alphabet_labels, gen_database, perturb
from treematch.tree import Tree, linearize, parse_tree, write_database

from .helpers import EXAMPLE_A


def _dump(db) -> str:
    buf = io.StringIO()
    write_database(db, buf)
    return buf.getvalue()


def test_alphabet_labels():
    assert alphabet_labels(3) == ["a", "b", "c"]
    labels = alphabet_labels(30)
    assert labels[25:] == ["z", "aa", "ab", "ac", "ad"]
    assert len(set(labels)) == 30


def test_gen_empty_and_deterministic():
    assert len(gen_database(GenParams(count=0))) == 0
    p = GenParams(count=40, seed=123)
    assert _dump(gen_database(p)) == _dump(gen_database(p))
    assert _dump(gen_database(p)) != _dump(gen_database(GenParams(count=40, seed=124)))


def test_gen_param_validation():
    with pytest.raises(GenConfigError):
        GenParams(count=1, max_children=8, alphabet=5)
    with pytest.raises(GenConfigError):
        GenParams(count=1, alp=0)
    with pytest.raises(GenConfigError):
        GenParams(count=1, max_depth=0)
    with pytest.raises(GenConfigError):
        GenParams(count=-1)


def test_gen_benchmark_shape():
    db = gen_database(GenParams(count=1000, alp=Fraction(1, 3), max_children=8, max_depth=5, seed=1))
    assert len(db) == 1000
    for _, tree in db:
        assert not tree.is_leaf
        assert tree.depth() <= 5
        stack = [tree]
        while stack:
            node = stack.pop()
            assert len(node.children) <= 8
            stack.extend(node.children)


@pytest.mark.parametrize("alp", [Fraction(1, 3), Fraction(1, 2), 0.2])
def test_gen_leaf_fraction(alp):
    db = gen_database(GenParams(count=200, alp=alp, max_children=4, max_depth=4, seed=5))
    leaves = total = 0
    for _, tree in db:
        stack = [(c, 1) for c in tree.children]
        while stack:
            node, depth = stack.pop()
            if depth < 4:
                total += 1
                leaves += node.is_leaf
                stack.extend((c, depth + 1) for c in node.children)
    assert total >= 1000
    assert abs(leaves / total - float(alp)) <= 0.05


def test_perturb_zero_edits():
    t = parse_tree(EXAMPLE_A)
    assert perturb(t, PerturbParams(edits=0)) == (t, 0)


@pytest.mark.parametrize("op, weights, expected", [
    ("relabel", (0, 0, 1), 1),
    ("delete", (1, 0, 0), 2),
    ("insert", (0, 1, 0), 2),
])
def test_single_edit_costs(op, weights, expected):
    rng = random.Random(1)
    for _ in range(50):
        t = parse_tree(EXAMPLE_A)
        q, cost = perturb(t, PerturbParams(edits=1, weights=weights), rng=rng)
        assert cost == expected
        assert dist_oracle(linearize(t), linearize(q)) == expected


def test_relabel_keeps_sibling_rank():
    # relabeling c must not move it past the subtree under a
    t = parse_tree("(r (p (a x) c))")
    q, cost = perturb(t, PerturbParams(edits=1, weights=(0, 0, 1), seed=0))
    assert dist(linearize(t), linearize(q)) == cost == 1


def test_infeasible_edits_report_shortfall():
    q, cost = perturb(Tree("r"), PerturbParams(edits=3, weights=(1, 1, 0)))
    assert (q, cost) == (Tree("r"), 0)
    q, cost = perturb(parse_tree("(r a)"), PerturbParams(edits=2, weights=(1, 0, 0)))
    assert cost == 0


def test_budget_respected():
    rng = random.Random(2)
    for budget in range(5):
        for _ in range(30):
            _, cost = perturb(parse_tree(EXAMPLE_A), PerturbParams(edits=4, budget=budget), rng=rng)
            assert cost <= budget


def test_perturbed_distance_bounded_by_cost():
    rng = random.Random(3)
    costs = CostParams(1, 2)
    db = gen_database(GenParams(count=60, max_children=4, max_depth=4, seed=3))
    for _, tree in db:
        for k in range(4):
            q, cost = perturb(tree, PerturbParams(edits=k), costs, rng)
            assert dist(linearize(tree), linearize(q), costs) <= cost


def test_perturb_validation():
    with pytest.raises(ValueError):
        PerturbParams(edits=-1)
    with pytest.raises(ValueError):
        PerturbParams(weights=(0, 0, 0))
    with pytest.raises(ValueError):
        PerturbParams(weights=(1, -1, 0))
