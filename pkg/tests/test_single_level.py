# bounded_treemaps/tests/test_single_level.py
import math
from fractions import Fraction

import numpy as np
import pytest

from models.errors import DomainError, EmptyInstance, Overfull
from models.geometry import ShapeKind
from models.instances import SingleLevelInstance, SquarePackingInstance
from services import single_level_service as sls
from services.single_level_service import SingleLevelService
from services.verification_service import verify
from trees import flat_tree, leaf, node

# 1/x ของรากจริงของ 4x³ − 4x² + 4x − 1
LOWER_BOUND_RATIO = 3.130395434767


def test_constants():
    assert sls.TAU == pytest.approx(0.3169872981)
    assert sls.LEAF_BOUND == pytest.approx(3.1547005384)
    assert sls.INTERNAL_BOUND == pytest.approx(2.7320508076)


@pytest.mark.parametrize("r1, a, case", [
    (0.2, 1.0, 1),
    (0.4, 1.0, 3),
    (0.4, 2.0, 2),
    (0.7, 2.0, 3),
])
def test_dispatch_case(r1, a, case):
    assert SingleLevelService.dispatch_case(r1, a) == case


def test_two_equal_weights_use_l_shape():
    layout = sls.layout_single_level(SingleLevelInstance((0.5, 0.5)))
    assert layout.stats["cases"] == {"case3": 1}
    first, second = layout.region("root/1"), layout.region("root/2")
    assert first.shape.kind is ShapeKind.L_SHAPE
    assert first.asp_ortho == pytest.approx(2.0)
    assert second.shape.kind is ShapeKind.RECTANGLE
    assert second.asp_ortho == pytest.approx(1.0)


def test_four_equal_weights_give_four_squares():
    layout = sls.layout_single_level(SingleLevelInstance((0.25,) * 4))
    assert layout.stats["cases"] == {"case1": 1, "case2": 2}
    for region in layout.leaf_regions():
        assert region.shape.kind is ShapeKind.RECTANGLE
        assert region.asp_ortho == pytest.approx(1.0)


def test_weights_are_normalized():
    inst = SingleLevelInstance((2, 3, 5))
    assert inst.weights == pytest.approx((0.2, 0.3, 0.5))
    assert inst.ids == ("root/1", "root/2", "root/3")


def test_instance_rejects_bad_input():
    with pytest.raises(EmptyInstance):
        SingleLevelInstance(())
    with pytest.raises(EmptyInstance):
        sls.layout_single_level(None)
    with pytest.raises(DomainError):
        SingleLevelInstance((1.0, -1.0))


def test_root_only_instance(make_tree):
    tree = make_tree({"name": "root", "weight": 4})
    layout = sls.layout_single_level(SingleLevelInstance.from_tree(tree))
    assert list(layout.regions) == ["root"]
    assert verify(tree, layout).passed


def test_from_tree_rejects_deep_trees(make_tree):
    tree = make_tree(node("root", node("a", leaf("x", 1), leaf("y", 1)), leaf("b", 1)))
    with pytest.raises(DomainError):
        SingleLevelInstance.from_tree(tree)


@pytest.mark.parametrize("weights", [
    (0.5, 0.5),
    (0.25, 0.25, 0.25, 0.25),
    (0.6, 0.2, 0.1, 0.05, 0.05),
    (0.9, 0.05, 0.05),
    tuple(range(1, 17)),
])
def test_layouts_verify_within_bounds(weights):
    tree = flat_tree(*weights)
    layout = sls.layout_single_level(SingleLevelInstance.from_tree(tree))
    report = verify(tree, layout)
    assert report.passed, report.failures()
    assert layout.max_aspect(leaves_only=True) <= sls.LEAF_BOUND + 1e-9
    assert layout.stats["max_intermediate_asp"] <= sls.INTERNAL_BOUND + 1e-9


def test_lower_bound_root_solves_cubic():
    x = SingleLevelService.lower_bound_root()
    assert 0.31 < x < 0.32
    assert 4 * x ** 3 - 4 * x ** 2 + 4 * x - 1 == pytest.approx(0.0, abs=1e-12)
    assert SingleLevelService.lower_bound_closed_form() == pytest.approx(1 / x)


def test_lower_bound_profile_balances_both_drawings():
    x = SingleLevelService.lower_bound_root()
    one, other = sls.lower_bound_profile(x)
    assert one == pytest.approx(other)
    assert one == pytest.approx(LOWER_BOUND_RATIO, abs=1e-9)
    with pytest.raises(DomainError):
        sls.lower_bound_profile(0.5)


def test_lower_bound_instance_layout():
    inst = sls.lower_bound_instance()
    layout = sls.layout_single_level(inst)
    assert layout.stats["cases"] == {"case3": 3}
    x = inst.weights[0]
    assert layout.max_aspect(leaves_only=True) == pytest.approx(LOWER_BOUND_RATIO, abs=1e-9)
    assert LOWER_BOUND_RATIO - 1e-9 <= layout.max_aspect() <= sls.LEAF_BOUND


@pytest.mark.parametrize("side, squares, fractions", [
    (2, (1, 1), [Fraction(1, 4)] * 4),
    (3, (2, 2), [Fraction(4, 9), Fraction(4, 9), Fraction(1, 9)]),
    (1, (1,), [Fraction(1)]),
])
def test_reduction_fractions(side, squares, fractions):
    sp = SquarePackingInstance(side, squares)
    assert SingleLevelService.reduction_fractions(sp) == fractions
    inst = sls.reduce_square_packing(sp)
    assert list(inst.weights) == pytest.approx([float(f) for f in fractions])


def test_overfull_packing_instance():
    with pytest.raises(Overfull):
        SquarePackingInstance(2, (2, 1))
    with pytest.raises(Overfull):
        SquarePackingInstance(2, (3,))


@pytest.mark.slow
def test_random_single_level_instances():
    rng = np.random.default_rng(2024)
    for index in range(10_000):
        n = int(rng.integers(2, 17))
        weights = np.exp(rng.uniform(math.log(1e-4), 0.0, size=n))
        tree = flat_tree(*weights.tolist())
        layout = sls.layout_single_level(SingleLevelInstance.from_tree(tree))
        assert layout.max_aspect(leaves_only=True) <= sls.LEAF_BOUND + 1e-9
        assert layout.stats["max_intermediate_asp"] <= sls.INTERNAL_BOUND + 1e-9
        # verify ทุก 100 อินสแตนซ์
        if index % 100 == 0:
            assert verify(tree, layout).passed
