import random

import pytest

from treematch.distance import CostParams, dist_oracle
from treematch.search import Match, SearchParams, approx_search, linear_scan
from treematch.synth import GenParams, PerturbParams, gen_database, perturb
from treematch.tree import TreeDatabase, linearize, parse_tree
from treematch.trie import build_trie

from .helpers import EXAMPLE_A, EXAMPLE_B, EXAMPLE_C, random_tree


@pytest.fixture
def examples():
    db = TreeDatabase.from_trees(parse_tree(t) for t in (EXAMPLE_A, EXAMPLE_B, EXAMPLE_C))
    return db, build_trie(db)


@pytest.mark.parametrize(
    "t, expected",
    [
        (0, [(0, 0)]),
        (1, [(0, 0), (2, 1)]),
        (2, [(0, 0), (2, 1), (1, 2)]),
    ],
)
def test_example_queries(examples, t, expected):
    db, trie = examples
    x = linearize(parse_tree(EXAMPLE_A))
    params = SearchParams(t)
    matches, trace = approx_search(trie, x, params)
    assert [tuple(m) for m in matches] == expected
    assert linear_scan(db, x, params) == matches
    assert trace.pushed == trace.popped
    assert trace.pushed == trace.visited - 1 + trace.pruned


def test_search_params_validation():
    with pytest.raises(ValueError):
        SearchParams(-1)
    with pytest.raises(ValueError):
        SearchParams(1.5)


def test_empty_database():
    db = TreeDatabase()
    x = linearize(parse_tree(EXAMPLE_A))
    assert linear_scan(db, x, SearchParams(4)) == []
    matches, trace = approx_search(build_trie(db), x, SearchParams(4))
    assert matches == [] and trace.visited == 1


def test_large_threshold_returns_everything():
    rng = random.Random(2)
    db = TreeDatabase.from_trees(random_tree(rng, "abc", 3, 3) for _ in range(20))
    x = linearize(random_tree(rng, "abc", 3, 3))
    biggest = max(len(db.sequence(i)) for i in range(len(db)))
    t = (len(x) + biggest) * 2
    scan = linear_scan(db, x, SearchParams(t))
    assert sorted(m.tree_id for m in scan) == list(range(20))
    assert approx_search(build_trie(db), x, SearchParams(t))[0] == scan


def test_linear_scan_distances_match_oracle():
    rng = random.Random(12)
    db = TreeDatabase.from_trees(random_tree(rng, "abc", 3, 3) for _ in range(40))
    for _ in range(20):
        x = linearize(random_tree(rng, "abc", 3, 3))
        scan = linear_scan(db, x, SearchParams(6))
        expected = sorted(
            (Match(i, d) for i, seq in db.sequences() if (d := dist_oracle(x, seq)) <= 6),
            key=lambda m: (m.distance, m.tree_id),
        )
        assert scan == expected


@pytest.mark.parametrize("costs", [CostParams(1, 2), CostParams(1, 1), CostParams(2, 3)], ids=str)
def test_search_equals_scan_random(costs):
    rng = random.Random(costs.s)
    for _ in range(40):
        db = gen_database(
            GenParams(count=rng.randint(1, 40), alp=0.4, max_children=4, max_depth=3, alphabet=5, seed=rng.getrandbits(32))
        )
        trie = build_trie(db)
        queries = [linearize(random_tree(rng, "abcde", 3, 4))]
        queries.append(linearize(perturb(db[0][1], PerturbParams(edits=2), costs, rng)[0]))
        for x in queries:
            previous: set = set()
            for t in range(7):
                params = SearchParams(t, costs)
                got, trace = approx_search(trie, x, params)
                assert got == linear_scan(db, x, params)
                assert previous <= set(got)
                previous = set(got)
                assert trace.pushed == trace.popped == trace.visited - 1 + trace.pruned


def test_self_retrieval_and_exact_work_bound():
    db = gen_database(GenParams(count=50, max_children=4, max_depth=3, alphabet=6, seed=3))
    trie = build_trie(db)
    for tree_id, tree in db:
        x = linearize(tree)
        for t in (0, 1, 3):
            matches, trace = approx_search(trie, x, SearchParams(t))
            assert Match(tree_id, 0) in matches
            if t == 0:
                assert all(m.distance == 0 for m in matches)
                assert trace.visited <= len(x) + 1


def test_perturbation_recall():
    rng = random.Random(31)
    db = gen_database(GenParams(count=100, max_children=5, max_depth=4, alphabet=8, seed=31))
    trie = build_trie(db)
    for _ in range(100):
        index = rng.randrange(len(db))
        tree_id, tree = db[index]
        budget = rng.randint(0, 4)
        query, cost = perturb(tree, PerturbParams(edits=3, budget=budget), rng=rng)
        assert cost <= budget
        matches, _ = approx_search(trie, linearize(query), SearchParams(budget))
        hit = [m for m in matches if m.tree_id == tree_id]
        assert hit and hit[0].distance <= cost


def test_single_node_trees():
    db = TreeDatabase.from_trees([parse_tree("(r)"), parse_tree("(q)"), parse_tree("(r x)")])
    trie = build_trie(db)
    matches, _ = approx_search(trie, (("r",),), SearchParams(1))
    assert [tuple(m) for m in matches] == [(0, 0), (1, 1)]
    assert linear_scan(db, (("r",),), SearchParams(4)) == approx_search(trie, (("r",),), SearchParams(4))[0]
