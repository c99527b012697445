# bounded_treemaps/services/tree_service.py
"""
การตรวจสอบ/normalize ต้นไม้ input, การแปลงเป็นต้นไม้ทวิภาค
และการจัดหมวดน้ำหนักสัมพัทธ์ (tiny / small / large / huge)
"""
import logging
import math

from models.errors import (
    DomainError,
    InconsistentInternalWeight,
    MalformedTree,
    NonPositiveLeafWeight,
)
from models.tree import (
    HUGE_BOUND,
    SMALL_BOUND,
    TINY_BOUND,
    BinaryNode,
    NodeKind,
    RelCategory,
    TreeNode,
    WeightedTree,
)
from services.partition_service import lpt_partition

logger = logging.getLogger(__name__)

STRICT_TOLERANCE = 1e-6


class TreeService:
    """
    คลาสสำหรับจัดการต้นไม้ถ่วงน้ำหนัก
    """

    def __init__(self, strict_tolerance=STRICT_TOLERANCE):
        self.strict_tolerance = strict_tolerance

    # ---- validation ----

    def validate_and_normalize(self, raw: WeightedTree, strict=False) -> WeightedTree:
        """
        ตรวจน้ำหนักของต้นไม้และ normalize ให้รากมีน้ำหนัก 1

        Args:
            raw (WeightedTree): ต้นไม้ที่ผ่านการตรวจโครงสร้างแล้ว
            strict (bool): ถ้า True ตรวจน้ำหนักของโหนดภายในที่ระบุมากับผลรวมของลูก

        Returns:
            WeightedTree: ต้นไม้ใหม่ที่น้ำหนักถูก normalize

        Raises:
            NonPositiveLeafWeight: ถ้าใบมีน้ำหนัก ≤ 0
            InconsistentInternalWeight: ในโหมด strict เมื่อผลรวมไม่ตรง
        """
        sums = {}
        for node_id in _postorder(raw):
            node = raw.node(node_id)
            if node.is_leaf:
                weight = node.weight
                if weight is None or not math.isfinite(weight) or weight <= 0:
                    raise NonPositiveLeafWeight(node_id, weight)
                sums[node_id] = float(weight)
                continue
            computed = math.fsum(sums[c] for c in node.children)
            if strict and node.weight is not None:
                if abs(node.weight - computed) > self.strict_tolerance * max(abs(computed), 1e-300):
                    raise InconsistentInternalWeight(node_id, node.weight, computed)
            sums[node_id] = computed

        total = sums[raw.root]
        normalized = {}
        for node_id in _postorder(raw):
            node = raw.node(node_id)
            if node.is_leaf:
                weight = sums[node_id] / total
            else:
                weight = math.fsum(normalized[c].weight for c in node.children)
            normalized[node_id] = TreeNode(node.id, node.label, weight, node.children)
        root = normalized[raw.root]
        normalized[raw.root] = TreeNode(root.id, root.label, 1.0, root.children)
        logger.debug("normalized tree with %d nodes (total weight %.6g)", len(raw), total)
        return WeightedTree(normalized, raw.root)

    # ---- binary conversion ----

    def to_binary_convex(self, tree: WeightedTree) -> BinaryNode:
        """
        แปลงเป็นต้นไม้ทวิภาคพร้อมป้ายความลึก d สำหรับอัลกอริทึม convex

        ลูกที่หนัก (≥ ครึ่งหนึ่งของพ่อ) แยกออกไปก่อนด้วย d+1 และโหนดเสริมที่เหลือคง d
        ถ้าไม่มีลูกหนัก แบ่งลูกด้วย LPT เป็นสองกลุ่มที่หนักไม่เกิน 2/3
        """
        return _ConvexBuilder(tree).build()

    def to_binary_generic(self, tree: WeightedTree) -> BinaryNode:
        """
        แปลงเป็นต้นไม้ทวิภาคโดยจัดกลุ่มลูกด้วย LPT ซ้ำไปเรื่อยๆ (ไม่มีป้ายความลึก)
        """
        return _GenericBuilder(tree).build()

    # ---- weight categories ----

    @staticmethod
    def classify_rel(node_weight, subtree_weight) -> RelCategory:
        """
        จัดหมวดน้ำหนักสัมพัทธ์ rel = node_weight / subtree_weight

        Raises:
            DomainError: ถ้าน้ำหนักไม่เป็นบวกหรือโหนดหนักกว่าต้นไม้ย่อย
        """
        if node_weight <= 0 or subtree_weight <= 0:
            raise DomainError(
                f"น้ำหนักต้องเป็นบวก (node={node_weight}, subtree={subtree_weight})",
                node_weight=node_weight, subtree_weight=subtree_weight,
            )
        if node_weight > subtree_weight * (1 + 1e-12):
            raise DomainError(
                f"น้ำหนักโหนด {node_weight} มากกว่าน้ำหนักต้นไม้ย่อย {subtree_weight}",
                node_weight=node_weight, subtree_weight=subtree_weight,
            )
        rel = min(node_weight / subtree_weight, 1.0)
        if rel < TINY_BOUND:
            return RelCategory.TINY
        if rel < SMALL_BOUND:
            return RelCategory.SMALL
        if rel <= HUGE_BOUND:
            return RelCategory.LARGE
        return RelCategory.HUGE

    def find_drawable_path(self, node: BinaryNode, subtree_weight) -> tuple:
        """
        เหมือน find_drawable แต่คืน path (ลำดับของ 0/1) จาก node ไปยังโหนดที่พบ
        """
        path = []
        current = node
        category = self.classify_rel(current.weight, subtree_weight)
        if category is RelCategory.TINY:
            raise DomainError("find_drawable ต้องเริ่มจากโหนดที่ไม่ tiny", node_id=node.id)
        while category is RelCategory.HUGE and not current.is_leaf:
            step = heavier_child_index(current)
            path.append(step)
            current = current.child(step)
            category = self.classify_rel(current.weight, subtree_weight)
        return tuple(path)

    def find_drawable(self, node: BinaryNode, subtree_weight) -> BinaryNode:
        """
        หาโหนดที่วาดเป็นสี่เหลี่ยมได้ในต้นไม้ย่อยของ node: ใบที่ไม่ tiny หรือโหนด small/large

        เดินลงไปทางลูกที่หนักกว่า (เท่ากันเลือกซ้าย) จนพบใบหรือโหนดที่ไม่ huge

        Args:
            node (BinaryNode): โหนดเริ่มต้น (rel ≥ 1/8)
            subtree_weight (float): น้ำหนักของต้นไม้ที่กำลังจัดวาง

        Returns:
            BinaryNode: โหนดที่พบ
        """
        return node.at(self.find_drawable_path(node, subtree_weight))


def heavier_child_index(node: BinaryNode) -> int:
    """ลูกที่หนักกว่า เท่ากันเลือกซ้าย"""
    return 0 if node.left.weight >= node.right.weight else 1


def _postorder(tree: WeightedTree):
    order = list(tree.preorder())
    order.reverse()
    return order


class _BuilderBase:
    """
    ส่วนร่วมของการแปลงเป็นต้นไม้ทวิภาค: การยุบโหนดที่มีลูกเดียว
    และการตั้งชื่อโหนดเสริม
    """

    def __init__(self, tree: WeightedTree):
        self.tree = tree
        self._aux_counter = {}

    def _aux_id(self, parent_id):
        n = self._aux_counter.get(parent_id, 0) + 1
        self._aux_counter[parent_id] = n
        return f"{parent_id}#aux{n}"

    def _collapse(self, node_id):
        """
        ยุบสายโซ่ของโหนดที่มีลูกเดียว คืน (id ของโหนดล่างสุด, tuple ของ id ที่ถูกยุบ)
        """
        aliases = []
        while len(self.tree.children(node_id)) == 1:
            aliases.append(node_id)
            node_id = self.tree.children(node_id)[0]
        return node_id, tuple(aliases)


class _ConvexBuilder(_BuilderBase):

    def build(self):
        return self._original(self.tree.root, 0)

    def _original(self, node_id, d):
        node_id, aliases = self._collapse(node_id)
        weight = self.tree.weight(node_id)
        children = list(self.tree.children(node_id))
        if not children:
            return BinaryNode(node_id, weight, d=d, origin=node_id, aliases=aliases)
        left, right = self._group(node_id, children, d)
        return BinaryNode(node_id, weight, d=d, origin=node_id, left=left,
                          right=right, aliases=aliases)

    def _group(self, parent_id, children, d):
        """แปลงกลุ่มลูก (≥ 2 โหนด) ที่อยู่ใต้โหนดป้าย d ให้เป็นลูกซ้ายและขวา"""
        if len(children) == 2:
            return self._original(children[0], d + 1), self._original(children[1], d + 1)

        weights = [self.tree.weight(c) for c in children]
        total = math.fsum(weights)
        heavy = max(range(len(children)), key=lambda i: (weights[i], -i))
        if weights[heavy] >= total / 2:
            rest = children[:heavy] + children[heavy + 1:]
            return self._original(children[heavy], d + 1), self._aux(parent_id, rest, d)

        split = lpt_partition(weights)
        first = [children[i] for i in split.h1]
        second = [children[i] for i in split.h2]
        return self._member(parent_id, first, d), self._member(parent_id, second, d)

    def _member(self, parent_id, group, d):
        if len(group) == 1:
            return self._original(group[0], d + 1)
        return self._aux(parent_id, group, d)

    def _aux(self, parent_id, group, d):
        left, right = self._group(parent_id, group, d)
        return BinaryNode(self._aux_id(parent_id), left.weight + right.weight, d=d,
                          left=left, right=right, kind=NodeKind.AUXILIARY)


class _GenericBuilder(_BuilderBase):

    def build(self):
        return self._original(self.tree.root)

    def _original(self, node_id):
        node_id, aliases = self._collapse(node_id)
        weight = self.tree.weight(node_id)
        children = list(self.tree.children(node_id))
        if not children:
            return BinaryNode(node_id, weight, origin=node_id, aliases=aliases)
        left, right = self._group(node_id, children)
        return BinaryNode(node_id, weight, origin=node_id, left=left, right=right,
                          aliases=aliases)

    def _group(self, parent_id, children):
        if len(children) == 2:
            return self._original(children[0]), self._original(children[1])
        split = lpt_partition([self.tree.weight(c) for c in children])
        return (
            self._member(parent_id, [children[i] for i in split.h1]),
            self._member(parent_id, [children[i] for i in split.h2]),
        )

    def _member(self, parent_id, group):
        if len(group) == 1:
            return self._original(group[0])
        left, right = self._group(parent_id, group)
        return BinaryNode(self._aux_id(parent_id), left.weight + right.weight,
                          left=left, right=right, kind=NodeKind.AUXILIARY)


def check_binary_structure(root: BinaryNode):
    """
    ตรวจคุณสมบัติของต้นไม้ทวิภาค: น้ำหนักเท่าผลรวมของลูก และป้าย d ของลูกเท่ากับ d หรือ d + 1 ของพ่อ

    Raises:
        MalformedTree: ถ้าพบโหนดที่ผิดคุณสมบัติ
    """
    for node in root.iter_nodes():
        if node.is_leaf:
            continue
        if not math.isclose(node.weight, node.left.weight + node.right.weight,
                            rel_tol=1e-9, abs_tol=1e-15):
            raise MalformedTree(f"น้ำหนักของ '{node.id}' ไม่เท่ากับผลรวมของลูก", node_id=node.id)
        for child in node.children:
            if child.d - node.d not in (0, 1):
                raise MalformedTree(
                    f"ป้าย d ของ '{child.id}' ({child.d}) ไม่ใช่ {node.d} หรือ {node.d + 1}",
                    node_id=child.id,
                )


# ---- convenience functions ----

_default_service = TreeService()


def validate_and_normalize(raw, strict=False):
    return _default_service.validate_and_normalize(raw, strict=strict)


def to_binary_convex(tree):
    return _default_service.to_binary_convex(tree)


def to_binary_generic(tree):
    return _default_service.to_binary_generic(tree)


def classify_rel(node_weight, subtree_weight):
    return TreeService.classify_rel(node_weight, subtree_weight)


def find_drawable(node, subtree_weight):
    return _default_service.find_drawable(node, subtree_weight)


def find_drawable_path(node, subtree_weight):
    return _default_service.find_drawable_path(node, subtree_weight)
