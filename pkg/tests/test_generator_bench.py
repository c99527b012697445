# bounded_treemaps/tests/test_generator_bench.py
import math

import pytest

from models.errors import BadSpec, InputError
from services import bench_service
from services.bench_service import BenchService
from services.generator_service import TreeSpec, generate_random_tree
from utils.file_utils import tree_to_dict

SMALL = {"maxDepth": 3, "maxChildren": 4, "leafCount": 12}


def test_single_leaf_tree():
    tree = generate_random_tree(1, {"leafCount": 1})
    assert len(tree) == 1
    assert tree.weight(tree.root) == pytest.approx(1.0)


def test_same_seed_gives_same_tree():
    assert tree_to_dict(generate_random_tree(42, SMALL)) == tree_to_dict(generate_random_tree(42, SMALL))
    assert tree_to_dict(generate_random_tree(42, SMALL)) != tree_to_dict(generate_random_tree(43, SMALL))


def test_large_tree_respects_spec():
    tree = generate_random_tree(5, {"maxDepth": 12, "maxChildren": 4, "leafCount": 500})
    assert len(tree.leaves()) == 500
    assert tree.depth() <= 12
    assert all(len(tree.children(n)) <= 4 for n in tree.internal_nodes())
    assert math.fsum(tree.weight(n) for n in tree.leaves()) == pytest.approx(1.0)


def test_loguniform_weights_stay_in_range():
    tree = generate_random_tree(9, {"leafCount": 50})
    weights = [tree.weight(n) for n in tree.leaves()]
    assert max(weights) / min(weights) <= 1e4 * (1 + 1e-9)


def test_one_huge_child_everywhere():
    tree = generate_random_tree(11, {"leafCount": 30, "weightDistribution": "oneHuge"})
    for node_id in tree.internal_nodes():
        heaviest = max(tree.weight(c) for c in tree.children(node_id))
        assert heaviest >= 0.75 * tree.weight(node_id) - 1e-12


@pytest.mark.parametrize("spec", [
    {"leafCount": 0},
    {"leafs": 3},
    {"leafCount": "10"},
    {"maxDepth": 1, "maxChildren": 2, "leafCount": 5},
    {"leafCount": 4, "maxChildren": 1},
    {"weightDistribution": "zipf"},
    [1, 2],
])
def test_bad_specs(spec):
    with pytest.raises(BadSpec):
        TreeSpec.parse(spec)


def test_bench_is_reproducible():
    first = bench_service.run_bench("ortho", 3, 7, SMALL)
    second = bench_service.run_bench("ortho", 3, 7, SMALL)
    assert first.to_dict() == second.to_dict()
    assert [t.trial for t in first.trials] == [0, 1, 2]


def test_bench_does_not_depend_on_workers():
    serial = BenchService(1).run_bench("convex", 4, 3, SMALL)
    parallel = BenchService(3).run_bench("convex", 4, 3, SMALL)
    assert serial.to_dict() == parallel.to_dict()


def test_bench_summary():
    report = bench_service.run_bench("single", 5, 2)
    summary = report.summary()
    assert summary["trials"] == 5
    assert summary["failures"] == 0
    assert report.passed
    assert set(summary["shape_totals"]) <= {"rectangle", "lShape"}
    assert summary["s_shape_fraction"] == 0.0
    assert report.to_dict()["pass"] is True


def test_bench_rejects_bad_arguments():
    with pytest.raises(BadSpec):
        bench_service.run_bench("single", 2, 1, {"maxDepth": 2, "leafCount": 5})
    with pytest.raises(BadSpec):
        bench_service.run_bench("ortho", -1, 1)
    with pytest.raises(InputError):
        bench_service.run_bench("spiral", 1, 1)


def test_trial_seeds_are_independent_of_count():
    assert BenchService.trial_seeds(7, 5)[:3] == BenchService.trial_seeds(7, 3)
