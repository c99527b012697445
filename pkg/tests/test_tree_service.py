# bounded_treemaps/tests/test_tree_service.py
import pytest

from models.errors import (
    DomainError,
    InconsistentInternalWeight,
    MalformedTree,
    NonPositiveLeafWeight,
)
from models.tree import BinaryNode, NodeKind, RelCategory, TreeNode, WeightedTree
from services import tree_service
from trees import flat_tree, leaf, node


def raw_tree(weights, internal=None):
    children = tuple(f"root/{i + 1}" for i in range(len(weights)))
    nodes = {c: TreeNode(c, c[-1], w) for c, w in zip(children, weights)}
    nodes["root"] = TreeNode("root", "root", internal, children)
    return WeightedTree(nodes, "root")


def test_normalize_scales_leaves_to_unit_root():
    tree = tree_service.validate_and_normalize(raw_tree([2, 3, 5]))
    assert [tree.weight(c) for c in tree.children("root")] == pytest.approx([0.2, 0.3, 0.5])
    assert tree.weight("root") == 1.0


def test_normalize_single_leaf():
    tree = tree_service.validate_and_normalize(
        WeightedTree({"root": TreeNode("root", "root", 7.0)}, "root"))
    assert tree.weight("root") == 1.0
    assert tree.depth() == 0


@pytest.mark.parametrize("bad", [0, -1.5, float("nan")])
def test_normalize_rejects_non_positive_leaf(bad):
    with pytest.raises(NonPositiveLeafWeight) as info:
        tree_service.validate_and_normalize(raw_tree([1, bad]))
    assert info.value.node_id == "root/2"


def test_strict_mode_checks_internal_weight():
    tree_service.validate_and_normalize(raw_tree([1, 2], internal=3.0), strict=True)
    with pytest.raises(InconsistentInternalWeight):
        tree_service.validate_and_normalize(raw_tree([1, 2], internal=4.0), strict=True)
    # ไม่ strict ก็ใช้ผลรวมของลูก
    tree = tree_service.validate_and_normalize(raw_tree([1, 2], internal=4.0))
    assert tree.weight("root") == 1.0


def test_weighted_tree_rejects_cycles_and_orphans():
    with pytest.raises(MalformedTree):
        WeightedTree({"r": TreeNode("r", "r", None, ("x",))}, "r")
    with pytest.raises(MalformedTree):
        WeightedTree({"r": TreeNode("r", "r", 1.0), "o": TreeNode("o", "o", 1.0)}, "r")
    with pytest.raises(MalformedTree):
        WeightedTree({
            "r": TreeNode("r", "r", None, ("a", "b")),
            "a": TreeNode("a", "a", None, ("b",)),
            "b": TreeNode("b", "b", 1.0),
        }, "r")


def test_convex_conversion_splits_off_heavy_child(three_leaves):
    binary = tree_service.to_binary_convex(three_leaves)
    assert binary.d == 0
    assert binary.left.id == "root/a" and binary.left.d == 1
    aux = binary.right
    assert aux.kind is NodeKind.AUXILIARY and aux.id == "root#aux1"
    assert aux.d == 0 and aux.weight == pytest.approx(0.5)
    assert [c.id for c in aux.children] == ["root/b", "root/c"]
    assert all(c.d == 1 for c in aux.children)
    tree_service.check_binary_structure(binary)


def test_convex_conversion_keeps_binary_nodes(two_halves):
    binary = tree_service.to_binary_convex(two_halves)
    assert [c.id for c in binary.children] == ["root/a", "root/b"]
    assert [c.d for c in binary.children] == [1, 1]


def test_convex_conversion_without_heavy_child_uses_lpt():
    binary = tree_service.to_binary_convex(flat_tree(1, 1, 1, 1))
    left, right = binary.children
    assert left.kind is NodeKind.AUXILIARY and right.kind is NodeKind.AUXILIARY
    assert left.d == right.d == 0
    assert left.weight == pytest.approx(0.5) and right.weight == pytest.approx(0.5)
    assert {c.id for c in left.children} == {"root/1", "root/3"}


def test_generic_conversion_groups_children(three_leaves):
    binary = tree_service.to_binary_generic(three_leaves)
    assert binary.left.id == "root/a"
    assert binary.right.kind is NodeKind.AUXILIARY
    assert {c.id for c in binary.right.children} == {"root/b", "root/c"}


def test_generic_conversion_node_count():
    binary = tree_service.to_binary_generic(flat_tree(1, 1, 1, 1, 1))
    internal = [n for n in binary.iter_nodes() if not n.is_leaf]
    assert len(internal) == 4
    assert binary.leaf_count() == 5
    tree_service.check_binary_structure(binary)


def test_unary_chain_is_collapsed(make_tree):
    tree = make_tree(node("root", node("only", leaf("a", 1), leaf("b", 3))))
    binary = tree_service.to_binary_generic(tree)
    assert binary.id == "root/only"
    assert binary.aliases == ("root",)
    assert binary.input_ids == ("root", "root/only")


def test_convex_labels_restart_at_zero_after_collapsed_chain(make_tree):
    tree = make_tree(node("root", node("a", node("u", leaf("b", 0.5), leaf("c", 0.5)))))
    binary = tree_service.to_binary_convex(tree)
    assert binary.id == "root/a/u" and binary.d == 0
    assert [(c.id, c.d) for c in binary.children] == [("root/a/u/b", 1), ("root/a/u/c", 1)]
    tree_service.check_binary_structure(binary)


def test_convex_labels_step_by_one_per_level(make_tree):
    tree = make_tree(node(
        "root",
        node("x", node("y", leaf("p", 3), leaf("q", 1), leaf("r", 1))),
        leaf("z", 2), leaf("w", 1),
    ))
    binary = tree_service.to_binary_convex(tree)
    tree_service.check_binary_structure(binary)
    labels = {n.id: n.d for n in binary.iter_nodes() if n.kind is NodeKind.ORIGINAL}
    assert labels["root"] == 0
    assert labels["root/x/y"] == 1
    assert labels["root/x/y/p"] == 2
    assert labels["root/x/y/q"] == labels["root/x/y/r"] == 2


def test_structure_check_rejects_label_jumps():
    a = BinaryNode("r/a", 0.5, d=2, origin="r/a")
    b = BinaryNode("r/b", 0.5, d=1, origin="r/b")
    with pytest.raises(MalformedTree):
        tree_service.check_binary_structure(BinaryNode("r", 1.0, d=0, origin="r", left=a, right=b))
    low = BinaryNode("r/a", 0.5, d=0, origin="r/a")
    with pytest.raises(MalformedTree):
        tree_service.check_binary_structure(
            BinaryNode("r", 1.0, d=1, origin="r", left=low, right=b))


@pytest.mark.parametrize("rel, expected", [
    (0.05, RelCategory.TINY),
    (1 / 8, RelCategory.SMALL),
    (0.2, RelCategory.SMALL),
    (1 / 4, RelCategory.LARGE),
    (7 / 8, RelCategory.LARGE),
    (0.9, RelCategory.HUGE),
    (1.0, RelCategory.HUGE),
])
def test_classify_rel(rel, expected):
    assert tree_service.classify_rel(rel, 1.0) is expected


def test_classify_rel_rejects_bad_input():
    with pytest.raises(DomainError):
        tree_service.classify_rel(0.0, 1.0)
    with pytest.raises(DomainError):
        tree_service.classify_rel(1.5, 1.0)


def test_find_drawable_walks_heavier_children(make_tree):
    tree = make_tree(node("root", node("a", leaf("a1", 0.85), leaf("a2", 0.05)), leaf("b", 0.1)))
    binary = tree_service.to_binary_generic(tree)
    assert tree_service.find_drawable(binary, 1.0).id == "root/a/a1"
    assert tree_service.find_drawable_path(binary, 1.0) == (0, 0)


def test_find_drawable_stops_at_large_internal_node(make_tree):
    tree = make_tree(node("root", node("a", leaf("a1", 0.4), leaf("a2", 0.4)), leaf("b", 0.2)))
    binary = tree_service.to_binary_generic(tree)
    found = tree_service.find_drawable(binary, 1.0)
    assert found.id == "root/a" and not found.is_leaf
    # โหนด small คืนตัวเอง
    small = binary.right
    assert tree_service.find_drawable(small, 1.0) is small


def test_find_drawable_rejects_tiny_start():
    tiny = BinaryNode("t", 0.05, origin="t")
    with pytest.raises(DomainError):
        tree_service.find_drawable(tiny, 1.0)


def test_heavier_child_ties_go_left(two_halves):
    binary = tree_service.to_binary_generic(two_halves)
    assert tree_service.heavier_child_index(binary) == 0
