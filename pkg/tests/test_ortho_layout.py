# bounded_treemaps/tests/test_ortho_layout.py
import math

import pytest

from models.errors import CasePreconditionViolated
from models.geometry import UNIT_SQUARE, Corner, Rect, ShapeKind
from services import ortho_layout_service as ols
from services import tree_service
from services.generator_service import generate_random_tree
from services.verification_service import verify
from trees import CORPUS_SEEDS, corpus_spec, leaf, node
from utils import geometry as geo


def frame_for(tree, marked=None):
    binary = tree_service.to_binary_generic(tree)
    if marked is None:
        return ols.OrthoCallFrame.root(binary)
    return ols.OrthoCallFrame(binary, UNIT_SQUARE, ols.Mark.of(binary, marked))


def rect_tuple(rect):
    return rect.x0, rect.y0, rect.x1, rect.y1


@pytest.fixture
def case_b_tree(make_tree):
    return make_tree(node(
        "root", node("P", leaf("m1", 0.05), leaf("m2", 0.15)), leaf("Q", 0.8),
    ))


@pytest.fixture
def case_c_corner_tree(make_tree):
    return make_tree(node("root", node("F", leaf("m1", 0.02), leaf("H", 0.88)), leaf("G", 0.1)))


@pytest.fixture
def case_c_slice_tree(make_tree):
    return make_tree(node(
        "root",
        node("F", leaf("m1", 0.02), node("X", leaf("H", 0.6), leaf("G", 0.33))),
        leaf("Y", 0.05),
    ))


@pytest.fixture
def case_c_empty_tree(make_tree):
    return make_tree(node("root", leaf("m1", 0.05), leaf("H", 0.95)))


# ---- การตัดต้นไม้ทวิภาค ----

def test_detach_collapses_sibling(three_leaves):
    binary = tree_service.to_binary_generic(three_leaves)
    rest, sibling = ols.detach(binary, (1, 0))
    assert rest.weight == pytest.approx(0.7)
    assert rest.right.id == "root/c"
    assert sibling == (1,)


def test_detach_root_is_rejected(two_halves):
    with pytest.raises(CasePreconditionViolated):
        ols.detach(tree_service.to_binary_generic(two_halves), ())


def test_remap_path():
    assert ols.remap_path((1, 1, 0), (1, 0)) == (1, 0)
    assert ols.remap_path((1, 0, 1), (1, 0)) is None
    assert ols.remap_path((0, 1), (1, 0)) == (0, 1)


# ---- dispatch ----

def test_dispatch_root_frame_is_case_a(two_halves):
    assert ols.dispatch_case(frame_for(two_halves)) == "a"


def test_dispatch_order(case_b_tree, case_c_corner_tree, case_d_tree):
    assert ols.dispatch_case(frame_for(case_b_tree, "root/P/m1")) == "b"
    assert ols.dispatch_case(frame_for(case_c_corner_tree, "root/F/m1")) == "c"
    assert ols.dispatch_case(frame_for(case_d_tree, "root/Y1")) == "d"


# ---- case (a) ----

def test_case_a_splits_equal_leaves(two_halves):
    step = ols.case_a(frame_for(two_halves))
    assert (step.case, step.variant) == ("a", "split")
    rest, drawn = step.frames
    assert drawn.tree.id == "root/a"
    assert rect_tuple(rest.container) == pytest.approx((0.0, 0.0, 0.5, 1.0))
    assert rect_tuple(drawn.container) == pytest.approx((0.5, 0.0, 1.0, 1.0))


def test_case_a_draws_drawable_node_on_the_right(make_tree):
    tree = make_tree(node("root", node("a", leaf("a1", 0.85), leaf("a2", 0.05)), leaf("b", 0.1)))
    step = ols.case_a(frame_for(tree))
    rest, drawn = step.frames
    assert drawn.tree.id == "root/a/a1"
    assert drawn.container.x0 == pytest.approx(0.15)
    assert rest.tree.weight == pytest.approx(0.15)
    # พี่น้อง a2 ถูกยุบขึ้นไปแทน a และกลายเป็นโหนดที่ถูกทำเครื่องหมาย
    assert rest.mark.node_id == "root/a/a2"


def test_case_a_huge_leaf_becomes_l_shape(huge_leaf_tree):
    step = ols.case_a(frame_for(huge_leaf_tree))
    assert step.variant == "huge_leaf"
    (leaf_node, vertices), = step.shapes
    assert leaf_node.id == "root/a"
    assert geo.classify_shape(vertices).kind is ShapeKind.L_SHAPE
    assert geo.asp_ortho(vertices) == pytest.approx(1 / 0.95)
    (inner,) = step.frames
    side = math.sqrt(0.05)
    assert rect_tuple(inner.container) == pytest.approx((0.0, 1 - side, side, 1.0))


def test_case_a_requires_non_tiny_mark(case_b_tree):
    with pytest.raises(CasePreconditionViolated):
        ols.case_a(frame_for(case_b_tree, "root/P/m1"))


# ---- case (b) ----

def test_case_b_splits_off_drawable_ancestor(case_b_tree):
    step = ols.case_b(frame_for(case_b_tree, "root/P/m1"))
    assert (step.case, step.variant) == ("b", "split")
    rest, ancestor = step.frames
    assert rest.tree.id == "root/Q"
    assert ancestor.tree.id == "root/P"
    assert rect_tuple(ancestor.container) == pytest.approx((0.8, 0.0, 1.0, 1.0))
    # โหนดเดิมยังถูกทำเครื่องหมายอยู่ในกิ่ง
    assert ancestor.mark.node_id == "root/P/m1"


def test_case_b_rejects_non_tiny_mark(case_b_tree):
    with pytest.raises(CasePreconditionViolated):
        ols.case_b(frame_for(case_b_tree, "root/P"))


# ---- case (c) ----

def test_case_c_tiny_rest_goes_to_top_left(case_c_corner_tree):
    step = ols.case_c(frame_for(case_c_corner_tree, "root/F/m1"))
    assert (step.case, step.variant) == ("c", "corner")
    (bent, vertices), = step.shapes
    assert bent.id == "root/F/H"
    assert geo.classify_shape(vertices).kind is ShapeKind.S_SHAPE
    assert geo.asp_ortho(vertices) == pytest.approx(1 / 0.88)
    rest, branch = step.frames
    assert rest.tree.id == "root/G"
    assert rest.container.x0 == 0.0 and rest.container.y1 == pytest.approx(1.0)
    assert branch.tree.id == "root/F/m1"
    assert rect_tuple(branch.container) == pytest.approx(
        (1 - math.sqrt(0.02), 0.0, 1.0, math.sqrt(0.02)))


def test_case_c_large_rest_becomes_left_slice(case_c_slice_tree):
    step = ols.case_c(frame_for(case_c_slice_tree, "root/F/m1"))
    assert step.variant == "slice"
    (bent, vertices), = step.shapes
    assert bent.id == "root/F/X/H"
    assert geo.classify_shape(vertices).kind is ShapeKind.L_SHAPE
    rest, _ = step.frames
    assert rect_tuple(rest.container) == pytest.approx((0.0, 0.0, 0.38, 1.0))


def test_case_c_without_rest(case_c_empty_tree):
    step = ols.case_c(frame_for(case_c_empty_tree, "root/m1"))
    assert step.variant == "empty"
    assert [f.tree.id for f in step.frames] == ["root/m1"]
    (_, vertices), = step.shapes
    assert geo.area(vertices) == pytest.approx(0.95)


# ---- case (d) ----

def test_case_d_three_slices(case_d_tree):
    step = ols.case_d(frame_for(case_d_tree, "root/Y1"))
    assert (step.case, step.variant) == ("d", "slices")
    rest, middle, joined = step.frames
    assert rest.tree.id == "root/X1/X3"
    assert [round(f.tree.weight, 9) for f in step.frames] == [0.45, 0.35, 0.2]
    assert [f.container.width for f in step.frames] == pytest.approx([0.45, 0.35, 0.2])
    assert middle.mark.corner is Corner.TOP_RIGHT
    assert joined.tree.id == "root/Y1+root/X1/X2/X4/a#join"
    assert joined.mark.node_id == "root/Y1"


def test_case_d_requires_tiny_mark(case_d_tree):
    with pytest.raises(CasePreconditionViolated):
        ols.case_d(frame_for(case_d_tree))


# ---- ทั้งต้นไม้ ----

def test_layout_single_leaf(make_tree):
    tree = make_tree({"name": "root", "weight": 1})
    layout = ols.layout_ortho(tree)
    assert rect_tuple(geo.bbox(layout.region("root").vertices)) == (0.0, 0.0, 1.0, 1.0)


def test_layout_two_halves(two_halves):
    layout = ols.layout_ortho(two_halves)
    for node_id in ("root/a", "root/b"):
        region = layout.region(node_id)
        assert region.shape.kind is ShapeKind.RECTANGLE
        assert region.asp_ortho == pytest.approx(2.0)
    assert rect_tuple(geo.bbox(layout.region("root/a").vertices)) == pytest.approx(
        (0.5, 0.0, 1.0, 1.0))
    assert layout.stats["cases"]["case_a"] == 1


def test_layout_huge_leaf(huge_leaf_tree):
    layout = ols.layout_ortho(huge_leaf_tree)
    assert layout.region("root/a").shape.kind is ShapeKind.L_SHAPE
    assert layout.region("root/a").asp_ortho == pytest.approx(1 / 0.95)
    assert layout.stats["variants"] == {"a_huge_leaf": 1}


@pytest.mark.parametrize("fixture", [
    "two_halves", "huge_leaf_tree", "three_leaves", "nested_tree", "case_b_tree",
    "case_c_corner_tree", "case_c_slice_tree", "case_c_empty_tree", "case_d_tree",
])
def test_hand_built_trees_verify(fixture, request):
    tree = request.getfixturevalue(fixture)
    layout, records = ols.layout_ortho_traced(tree)
    report = verify(tree, layout)
    assert report.passed, report.failures()
    assert ols.staircase_violations(layout, records) == []
    assert layout.stats["max_container_asp"] <= ols.CONTAINER_BOUND + 1e-9


def test_all_leaves_are_rectangles_or_bent(nested_tree):
    layout = ols.layout_ortho(nested_tree)
    kinds = {r.shape.kind for r in layout.leaf_regions()}
    assert kinds <= {ShapeKind.RECTANGLE, ShapeKind.L_SHAPE, ShapeKind.S_SHAPE}


@pytest.mark.slow
@pytest.mark.parametrize("seed", CORPUS_SEEDS)
def test_random_trees_verify(seed):
    tree = generate_random_tree(seed, corpus_spec(seed))
    layout, records = ols.layout_ortho_traced(tree)
    report = verify(tree, layout)
    assert report.passed, report.failures()[:5]
    assert ols.staircase_violations(layout, records) == []
    assert layout.max_aspect() <= ols.INTERNAL_BOUND + 1e-6


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(25))
def test_random_trees_with_one_huge_leaf_verify(seed):
    tree = generate_random_tree(seed, {"maxDepth": 6, "maxChildren": 6, "leafCount": 60,
                                       "weightDistribution": "oneHuge"})
    layout = ols.layout_ortho(tree)
    assert verify(tree, layout).passed
