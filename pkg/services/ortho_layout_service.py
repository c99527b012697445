# bounded_treemaps/services/ortho_layout_service.py
"""
การจัดวาง treemap แบบ orthoconvex ที่มีอัตราส่วนคงที่

แต่ละรอบได้รับ container (อัตราส่วน ≤ 8) ต้นไม้ย่อย (fragment) โหนดที่ถูกทำเครื่องหมาย
และมุมที่ถูกทำเครื่องหมาย แล้วเลือกกรณี (a)–(d) ตามหมวดน้ำหนักสัมพัทธ์
ใบถูกวาดเป็นสี่เหลี่ยม รูปตัว L หรือรูปตัว S ส่วนพื้นที่ของโหนดภายใน
คือ union ของใบทั้งหมดใต้โหนดนั้น ซึ่งรวมครั้งเดียวตอนท้าย
"""
import logging
from dataclasses import dataclass, field

import shapely

from models.errors import CasePreconditionViolated, FragmentedRegion, LayoutError, SearchFailed
from models.geometry import UNIT_SQUARE, Corner, Point, Rect
from models.layout import Layout, Region
from models.tree import (
    HUGE_BOUND,
    SMALL_BOUND,
    BinaryNode,
    NodeKind,
    RelCategory,
    WeightedTree,
)
from services import tree_service
from services.partition_service import similar_corner_split, similar_rect, split_rect
from utils import geometry as geo

logger = logging.getLogger(__name__)

CONTAINER_BOUND = 8.0
LEAF_RECT_BOUND = 8.0
LEAF_BENT_BOUND = 32.0
INTERNAL_BOUND = 64.0
SEARCH_BOUND = 6 / 8
UNION_GRID = 1e-12


# ---- การตัดต้นไม้ทวิภาค ----

def detach(root: BinaryNode, path):
    """
    ตัดต้นไม้ย่อยที่ path ออก แล้วยุบพี่น้องขึ้นไปแทนที่พ่อ

    Returns:
        tuple[BinaryNode, tuple]: (ต้นไม้ที่เหลือ, path ใหม่ของพี่น้องที่ถูกยุบขึ้นไป)

    Raises:
        CasePreconditionViolated: ถ้า path เป็นราก
    """
    path = tuple(path)
    if not path:
        raise CasePreconditionViolated("ตัดรากออกจากต้นไม้ไม่ได้")

    def rebuild(node, rest):
        if len(rest) == 1:
            return node.child(1 - rest[0])
        return node.with_child(rest[0], rebuild(node.child(rest[0]), rest[1:]))

    return rebuild(root, path), path[:-1]


def remap_path(path, removed):
    """
    path ของโหนดเดิมหลังจาก detach(root, removed)

    Returns:
        tuple | None: path ใหม่ หรือ None ถ้าโหนดอยู่ในต้นไม้ย่อยที่ถูกตัดออก
    """
    path, removed = tuple(path), tuple(removed)
    if path[:len(removed)] == removed:
        return None
    parent = removed[:-1]
    sibling = 1 - removed[-1]
    k = len(parent)
    if len(path) > k and path[:k] == parent and path[k] == sibling:
        return parent + path[k + 1:]
    return path


def path_of(root: BinaryNode, node_id):
    """path จากรากไปยังโหนดที่มี id ตรงกัน (None ถ้าไม่พบ)"""
    for path, node in iter_paths(root):
        if node.id == node_id:
            return path
    return None


def iter_paths(root: BinaryNode):
    """เดินแบบ preorder คืน (path, node) ลูกซ้ายมาก่อน"""
    stack = [((), root)]
    while stack:
        path, node = stack.pop()
        yield path, node
        if not node.is_leaf:
            stack.append((path + (1,), node.right))
            stack.append((path + (0,), node.left))


# ---- ชนิดข้อมูลของแต่ละรอบ ----

@dataclass(frozen=True)
class Mark:
    """โหนดที่ถูกทำเครื่องหมาย (ระบุด้วย path ใน fragment) และมุมของ container"""
    node_id: str
    corner: Corner
    path: tuple = ()

    @classmethod
    def of(cls, tree: BinaryNode, node_id, corner=Corner.BOTTOM_RIGHT):
        path = path_of(tree, node_id)
        if path is None:
            raise CasePreconditionViolated(f"ไม่พบโหนด '{node_id}' ใน fragment", node_id=node_id)
        return cls(node_id, corner, path)


@dataclass(frozen=True)
class OrthoCallFrame:
    """
    หนึ่งรอบของการเรียกซ้ำ: fragment, container ในพิกัดจริง และเครื่องหมาย

    Args:
        tree (BinaryNode): fragment ที่ต้องวาด (น้ำหนักสัมบูรณ์)
        container (Rect): สี่เหลี่ยมที่มีพื้นที่เท่ากับน้ำหนักของ fragment
        mark (Mark): โหนดและมุมที่ถูกทำเครื่องหมาย
    """
    tree: BinaryNode
    container: Rect
    mark: Mark

    @classmethod
    def root(cls, tree: BinaryNode, container=UNIT_SQUARE):
        return cls(tree, container, Mark(tree.id, Corner.BOTTOM_RIGHT, ()))

    def rel(self, node: BinaryNode):
        return node.weight / self.tree.weight

    def category(self, node: BinaryNode) -> RelCategory:
        return tree_service.classify_rel(node.weight, self.tree.weight)

    @property
    def marked(self) -> BinaryNode:
        return self.tree.at(self.mark.path)

    def ancestors(self):
        """บรรพบุรุษแท้ของโหนดที่ถูกทำเครื่องหมาย เรียงจากรากลงมา"""
        return [self.tree.at(self.mark.path[:k]) for k in range(len(self.mark.path))]


@dataclass(frozen=True)
class OrthoStep:
    """
    ผลของการแยกกรณีหนึ่งครั้ง

    Args:
        case (str): 'a', 'b', 'c' หรือ 'd'
        variant (str): กรณีย่อย (เช่น 'split', 'huge_leaf', 'slice', 'corner', 'empty')
        frames (tuple[OrthoCallFrame]): รอบย่อยที่ต้องเรียกต่อ
        shapes (tuple): (ใบ, จุดยอดในพิกัดจริง) ของใบที่วาดในรอบนี้
    """
    case: str
    variant: str
    frames: tuple = ()
    shapes: tuple = ()


@dataclass(frozen=True)
class MarkRecord:
    """
    บันทึกของหนึ่งรอบ: มุมที่ถูกทำเครื่องหมาย และชุดใบของโหนดที่ถูกทำเครื่องหมาย
    กับบรรพบุรุษทุกตัว ใช้ตรวจว่าแต่ละโหนดเป็นขั้นบันไดที่ยึดกับมุมนั้น
    """
    corner: Corner
    anchor: Point
    lineage: tuple


@dataclass
class _Canvas:
    """container ในรูปแบบมาตรฐาน (มุมล่างขวาถูกทำเครื่องหมาย, W ≥ H)"""
    frame: OrthoCallFrame
    iso: object = field(init=False)

    def __post_init__(self):
        self.iso = geo.canonicalize(self.frame.container, self.frame.mark.corner)

    @property
    def rect(self) -> Rect:
        return self.iso.canonical_rect

    @property
    def scale(self):
        return self.rect.area / self.frame.tree.weight

    def to_world(self, points):
        return tuple(self.iso.inverse(p) for p in points)

    def sub(self, tree, rect, corner, path=()):
        world = self.iso.rect_to_world(rect)
        node = tree.at(path)
        return OrthoCallFrame(tree, world, Mark(node.id, self.iso.corner_to_world(corner), tuple(path)))


class OrthoLayoutService:
    """
    คลาสสำหรับการจัดวางแบบ orthoconvex
    """

    def __init__(self, container_bound=CONTAINER_BOUND, tolerance=1e-9):
        self.container_bound = container_bound
        self.tolerance = tolerance

    # ---- dispatch ----

    def dispatch_case(self, frame: OrthoCallFrame) -> str:
        """
        เลือกกรณีของรอบนี้ (fragment ต้องมีมากกว่าหนึ่งโหนด)

        Returns:
            str: 'a' ถ้าโหนดที่ถูกทำเครื่องหมายไม่ tiny, 'b' ถ้ามีบรรพบุรุษ small/large,
            'c' ถ้ามีใบ large/huge, มิฉะนั้น 'd'
        """
        if frame.tree.is_leaf:
            raise CasePreconditionViolated("fragment ที่มีใบเดียวไม่ต้องแยกกรณี")
        if frame.category(frame.marked) is not RelCategory.TINY:
            return "a"
        if any(frame.category(a).drawable for a in frame.ancestors()):
            return "b"
        if self._large_leaf(frame) is not None:
            return "c"
        return "d"

    @staticmethod
    def _large_leaf(frame):
        """ใบที่หนักที่สุดที่ rel ≥ 1/4 (เท่ากันเลือกตัวแรกแบบ preorder)"""
        best = None
        for path, node in iter_paths(frame.tree):
            if node.is_leaf and frame.rel(node) >= SMALL_BOUND:
                if best is None or node.weight > best[1].weight:
                    best = (path, node)
        return best

    @staticmethod
    def _lowest_huge_ancestor(frame):
        """index k ที่ tree.at(path[:k]) เป็นบรรพบุรุษ huge ที่ต่ำที่สุด (รากเป็น huge เสมอ)"""
        path = frame.mark.path
        for k in range(len(path) - 1, -1, -1):
            if frame.category(frame.tree.at(path[:k])) is RelCategory.HUGE:
                return k
        raise CasePreconditionViolated("ไม่พบบรรพบุรุษ huge ของโหนดที่ถูกทำเครื่องหมาย")

    def _branch_path(self, frame):
        """path ของลูกของบรรพบุรุษ huge ที่ต่ำที่สุด บนทางจากรากไปหาโหนดที่ถูกทำเครื่องหมาย"""
        if frame.category(frame.marked) is not RelCategory.TINY:
            raise CasePreconditionViolated("โหนดที่ถูกทำเครื่องหมายไม่ tiny", node_id=frame.mark.node_id)
        k = self._lowest_huge_ancestor(frame)
        return frame.mark.path[:k + 1]

    # ---- cases ----

    def case_a(self, frame: OrthoCallFrame) -> OrthoStep:
        """
        กรณี (a): โหนดที่ถูกทำเครื่องหมายไม่ tiny

        หาโหนดที่วาดเป็นสี่เหลี่ยมได้ใต้โหนดที่ถูกทำเครื่องหมายด้วย find_drawable แล้วตัดออก
        (พี่น้องที่ถูกยุบขึ้นไปกลายเป็นโหนดที่ถูกทำเครื่องหมายของส่วนที่เหลือ)
        ถ้า rel ≤ 7/8 แบ่ง container เป็นส่วนที่เหลือ (ซ้าย) กับโหนดที่ตัดออก (ขวา)
        มิฉะนั้นโหนดนั้นเป็นใบ huge: ส่วนที่เหลือวางในสี่เหลี่ยมคล้ายที่มุมบนซ้าย และใบเป็นรูปตัว L

        Raises:
            CasePreconditionViolated: ถ้าโหนดที่ถูกทำเครื่องหมายเป็น tiny
        """
        marked = frame.marked
        if frame.category(marked) is RelCategory.TINY:
            raise CasePreconditionViolated("กรณี (a) ต้องการโหนดที่ไม่ tiny", node_id=marked.id)
        target_path = frame.mark.path + tree_service.find_drawable_path(marked, frame.tree.weight)
        target = frame.tree.at(target_path)
        rest, sibling = detach(frame.tree, target_path)
        canvas = _Canvas(frame)
        rect = canvas.rect

        if frame.rel(target) <= HUGE_BOUND:
            left, right = split_rect(rect, rest.weight * canvas.scale, target.weight * canvas.scale)
            return OrthoStep("a", "split", (
                canvas.sub(rest, left, Corner.BOTTOM_RIGHT, sibling),
                canvas.sub(target, right, Corner.BOTTOM_RIGHT),
            ))
        if not target.is_leaf:
            raise CasePreconditionViolated("โหนด huge ที่ find_drawable คืนต้องเป็นใบ", node_id=target.id)
        inner, l_shape = similar_corner_split(rect, rest.weight / frame.tree.weight)
        return OrthoStep(
            "a", "huge_leaf",
            (canvas.sub(rest, inner, Corner.BOTTOM_RIGHT, sibling),),
            ((target, canvas.to_world(l_shape)),),
        )

    def case_b(self, frame: OrthoCallFrame) -> OrthoStep:
        """
        กรณี (b): โหนดที่ถูกทำเครื่องหมาย tiny และมีบรรพบุรุษ small/large

        กิ่ง (ลูกของบรรพบุรุษ huge ที่ต่ำที่สุด) เป็น small หรือ large จึงแยกออกไปทางขวา
        โดยโหนดเดิมยังถูกทำเครื่องหมายอยู่ในกิ่ง ส่วนที่เหลือวางทางซ้าย
        """
        branch_path = self._branch_path(frame)
        branch = frame.tree.at(branch_path)
        if not frame.category(branch).drawable:
            raise CasePreconditionViolated("กรณี (b) ต้องการกิ่งที่เป็น small หรือ large", node_id=branch.id)
        rest, sibling = detach(frame.tree, branch_path)
        canvas = _Canvas(frame)
        left, right = split_rect(canvas.rect, rest.weight * canvas.scale, branch.weight * canvas.scale)
        return OrthoStep("b", "split", (
            canvas.sub(rest, left, Corner.BOTTOM_RIGHT, sibling),
            canvas.sub(branch, right, Corner.BOTTOM_RIGHT, frame.mark.path[len(branch_path):]),
        ))

    def case_c(self, frame: OrthoCallFrame) -> OrthoStep:
        """
        กรณี (c): โหนดที่ถูกทำเครื่องหมาย tiny ไม่มีบรรพบุรุษ small/large แต่มีใบ large หรือ huge

        กิ่ง (tiny) วาดในสี่เหลี่ยมคล้าย container ที่มุมล่างขวา ส่วนที่เหลือหลังตัดกิ่งและใบนั้นออก
        วาดที่มุมบนซ้ายถ้า tiny หรือเป็นแถบเต็มความสูงทางซ้ายถ้าไม่ tiny
        ใบ large ได้พื้นที่ที่เหลือระหว่างสองรูป (รูปตัว L หรือ S)
        """
        branch_path = self._branch_path(frame)
        branch = frame.tree.at(branch_path)
        if frame.category(branch) is not RelCategory.TINY:
            raise CasePreconditionViolated("กรณี (c) ต้องการกิ่งที่ tiny", node_id=branch.id)
        found = self._large_leaf(frame)
        if found is None:
            raise CasePreconditionViolated("กรณี (c) ต้องมีใบที่ large หรือ huge")
        bent_path, bent = found

        remaining, _ = detach(frame.tree, branch_path)
        bent_path = remap_path(bent_path, branch_path)
        rest, sibling = (None, None) if bent_path == () else detach(remaining, bent_path)

        canvas = _Canvas(frame)
        rect = canvas.rect
        w, h = rect.x1, rect.y1
        corner = similar_rect(rect, frame.rel(branch), Corner.BOTTOM_RIGHT)
        frames = []
        if rest is None:
            variant = "empty"
            bent_shape = (
                Point(0.0, 0.0), Point(corner.x0, 0.0), Point(corner.x0, corner.y1),
                Point(w, corner.y1), Point(w, h), Point(0.0, h),
            )
        elif frame.category(rest) is RelCategory.TINY:
            variant = "corner"
            top_left = similar_rect(rect, frame.rel(rest), Corner.TOP_LEFT)
            bent_shape = (
                Point(0.0, 0.0), Point(corner.x0, 0.0), Point(corner.x0, corner.y1),
                Point(w, corner.y1), Point(w, h), Point(top_left.x1, h),
                Point(top_left.x1, top_left.y0), Point(0.0, top_left.y0),
            )
            frames.append(canvas.sub(rest, top_left, Corner.BOTTOM_RIGHT, sibling))
        else:
            variant = "slice"
            cut = w * frame.rel(rest)
            if cut >= corner.x0:
                raise LayoutError("แถบของส่วนที่เหลือทับกับสี่เหลี่ยมของกิ่ง", cut=cut, corner=corner.x0)
            bent_shape = (
                Point(cut, 0.0), Point(corner.x0, 0.0), Point(corner.x0, corner.y1),
                Point(w, corner.y1), Point(w, h), Point(cut, h),
            )
            frames.append(canvas.sub(rest, Rect(0.0, 0.0, cut, h), Corner.BOTTOM_RIGHT, sibling))
        frames.append(canvas.sub(branch, corner, Corner.BOTTOM_RIGHT, frame.mark.path[len(branch_path):]))
        return OrthoStep("c", variant, tuple(frames), ((bent, canvas.to_world(bent_shape)),))

    def case_d(self, frame: OrthoCallFrame) -> OrthoStep:
        """
        กรณี (d): โหนดที่ถูกทำเครื่องหมาย tiny ไม่มีบรรพบุรุษ small/large และไม่มีใบ large/huge

        เดินจากบรรพบุรุษ huge ที่ต่ำที่สุดไปทางลูกที่หนักกว่าจนพบ pivot ที่ rel ≤ 6/8
        แล้วเดินต่อใต้ pivot จนพบโหนด small จากนั้นแบ่ง container เป็นสามแถบแนวตั้ง:
        ส่วนที่เหลือ | pivot ที่ตัดโหนด small ออก | รากใหม่ที่รวมกิ่งกับโหนด small

        Raises:
            SearchFailed: ถ้าไม่พบโหนด small ใต้ pivot
        """
        branch_path = self._branch_path(frame)
        branch = frame.tree.at(branch_path)
        if frame.category(branch) is not RelCategory.TINY:
            raise CasePreconditionViolated("กรณี (d) ต้องการกิ่งที่ tiny", node_id=branch.id)

        pivot_path = self._descend(frame, branch_path[:-1], lambda n: frame.rel(n) <= SEARCH_BOUND)
        if pivot_path[:len(branch_path)] == branch_path:
            raise CasePreconditionViolated("pivot อยู่ในกิ่งของโหนดที่ถูกทำเครื่องหมาย")
        small_path = self._descend(frame, pivot_path,
                                   lambda n: frame.category(n) is RelCategory.SMALL)
        pivot, small = frame.tree.at(pivot_path), frame.tree.at(small_path)

        remaining, _ = detach(frame.tree, branch_path)
        rest, rest_mark = detach(remaining, remap_path(pivot_path, branch_path))
        middle, middle_mark = detach(pivot, small_path[len(pivot_path):])
        joined = BinaryNode(
            f"{branch.id}+{small.id}#join", branch.weight + small.weight,
            left=branch, right=small, kind=NodeKind.AUXILIARY,
        )

        canvas = _Canvas(frame)
        w, h = canvas.rect.x1, canvas.rect.y1
        a = w * frame.rel(rest)
        b = a + w * frame.rel(middle)
        return OrthoStep("d", "slices", (
            canvas.sub(rest, Rect(0.0, 0.0, a, h), Corner.BOTTOM_RIGHT, rest_mark),
            canvas.sub(middle, Rect(a, 0.0, b, h), Corner.TOP_RIGHT, middle_mark),
            canvas.sub(joined, Rect(b, 0.0, w, h), Corner.BOTTOM_RIGHT,
                       (0,) + frame.mark.path[len(branch_path):]),
        ))

    @staticmethod
    def _descend(frame, start, stop):
        path = tuple(start)
        node = frame.tree.at(path)
        while not stop(node):
            if node.is_leaf:
                raise SearchFailed(f"เดินลงจนถึงใบ '{node.id}' โดยไม่พบโหนดที่ต้องการ", node_id=node.id)
            step = tree_service.heavier_child_index(node)
            path += (step,)
            node = node.child(step)
        return path

    # ---- recursion ----

    def step(self, frame: OrthoCallFrame) -> OrthoStep:
        """แยกกรณีและวาดหนึ่งรอบ"""
        case = self.dispatch_case(frame)
        handler = {"a": self.case_a, "b": self.case_b, "c": self.case_c, "d": self.case_d}[case]
        return handler(frame)

    def layout_ortho(self, tree: WeightedTree) -> Layout:
        """
        จัดวาง treemap แบบ orthoconvex ของต้นไม้ที่ normalize แล้ว

        Returns:
            Layout: ใบเป็นสี่เหลี่ยม (asp ≤ 8) หรือรูปตัว L/S (asp ≤ 32)
            โหนดภายในเป็น orthoconvex (asp ≤ 64)
        """
        layout, _ = self._run(tree, record_marks=False)
        return layout

    def layout_ortho_traced(self, tree: WeightedTree):
        """
        เหมือน layout_ortho แต่คืนบันทึกเครื่องหมายของทุกรอบด้วย

        Returns:
            tuple[Layout, list[MarkRecord]]
        """
        return self._run(tree, record_marks=True)

    def _run(self, tree, record_marks):
        binary = tree_service.to_binary_generic(tree)
        stack = [OrthoCallFrame.root(binary)]
        leaf_shapes = {}
        records = []
        cases = {"case_a": 0, "case_b": 0, "case_c": 0, "case_d": 0}
        variants = {}
        worst_container = 0.0

        while stack:
            frame = stack.pop()
            asp = geo.asp_ortho(frame.container)
            worst_container = max(worst_container, asp)
            if asp > self.container_bound + self.tolerance:
                raise LayoutError(
                    f"container มีอัตราส่วน {asp:.6g} เกิน {self.container_bound}",
                    asp=asp, node_id=frame.tree.id,
                )
            if frame.tree.is_leaf:
                leaf_shapes[frame.tree.origin] = frame.container.corners()
                continue
            if record_marks:
                records.append(self._record(frame))
            result = self.step(frame)
            logger.debug("ortho case (%s/%s) on '%s': %d leaves, marked '%s'", result.case,
                         result.variant, frame.tree.id, frame.tree.leaf_count(), frame.mark.node_id)
            cases[f"case_{result.case}"] += 1
            key = f"{result.case}_{result.variant}"
            variants[key] = variants.get(key, 0) + 1
            for leaf, vertices in result.shapes:
                leaf_shapes[leaf.origin] = vertices
            stack.extend(reversed(result.frames))

        stats = {
            "cases": cases,
            "variants": dict(sorted(variants.items())),
            "max_container_asp": worst_container,
        }
        layout = assemble_regions(tree, leaf_shapes, stats)
        logger.info("ortho layout: %d regions, max asp %.4f, cases %s", len(layout),
                    layout.max_aspect(), cases)
        return layout, records

    @staticmethod
    def _record(frame):
        lineage = tuple(
            frame.tree.at(frame.mark.path[:k]).leaf_origins
            for k in range(len(frame.mark.path) + 1)
        )
        corner = frame.mark.corner
        return MarkRecord(corner, frame.container.corner(corner), lineage)


# ---- การรวมพื้นที่ ----

def _union(node_id, geoms):
    if len(geoms) == 1:
        return geoms[0]
    merged = shapely.union_all(geoms)
    if _is_simple_region(merged):
        return merged
    logger.warning("union of '%s' is fragmented, retrying on a %g grid", node_id, UNION_GRID)
    merged = shapely.union_all(geoms, grid_size=UNION_GRID)
    if _is_simple_region(merged):
        return merged
    raise FragmentedRegion(
        f"พื้นที่ของโหนด '{node_id}' ไม่เป็นรูปหลายเหลี่ยมชิ้นเดียว ({merged.geom_type})",
        node_id=node_id,
    )


def _is_simple_region(geom):
    return geom.geom_type == "Polygon" and not geom.is_empty and len(geom.interiors) == 0


def assemble_regions(tree: WeightedTree, leaf_shapes, stats=None, algorithm="ortho") -> Layout:
    """
    รวมรูปของใบเป็นพื้นที่ของทุกโหนดใน input (union จากล่างขึ้นบน)

    Args:
        tree (WeightedTree): ต้นไม้ input ที่ normalize แล้ว
        leaf_shapes (dict): id ของใบ → จุดยอดในพิกัดจริง

    Returns:
        Layout: พื้นที่ของทุกโหนด พร้อมชนิดรูปและอัตราส่วน

    Raises:
        FragmentedRegion: ถ้า union ของโหนดใดไม่เป็นรูปชิ้นเดียวที่ไม่มีรู
    """
    geoms = {}
    regions = {}
    for node_id in reversed(list(tree.preorder())):
        depth = tree.node_depth(node_id)
        if tree.is_leaf(node_id):
            if node_id not in leaf_shapes:
                raise LayoutError(f"ไม่มีรูปของใบ '{node_id}'", node_id=node_id)
            vertices = geo.normalize_vertices(leaf_shapes[node_id])
            geoms[node_id] = geo.to_shapely(vertices)
            regions[node_id] = Region.build(node_id, vertices, tree.weight(node_id), depth, True)
            continue
        merged = _union(node_id, [geoms[c] for c in tree.children(node_id)])
        geoms[node_id] = merged
        regions[node_id] = Region.build(
            node_id, geo.from_shapely(merged), tree.weight(node_id), depth, False,
        )
    return Layout(algorithm, regions, dict(stats or {}))


def staircase_violations(layout: Layout, records, tol=1e-12):
    """
    ตรวจว่าโหนดที่ถูกทำเครื่องหมายและบรรพบุรุษของมันในแต่ละรอบ
    เป็นขั้นบันไดที่ยึดกับมุมที่ถูกทำเครื่องหมายของ container

    Returns:
        list[dict]: รายการที่ไม่ผ่าน (ว่างถ้าผ่านทั้งหมด)
    """
    leaves = {r.node_id: geo.to_shapely(r.vertices) for r in layout.leaf_regions()}
    violations = []
    for index, record in enumerate(records):
        for depth, members in enumerate(record.lineage):
            geom = _union(f"record{index}", [leaves[m] for m in sorted(members)])
            vertices = geo.from_shapely(geom)
            corner = geo.bbox(vertices).corner(record.corner)
            anchored = abs(corner.x - record.anchor.x) <= tol and abs(corner.y - record.anchor.y) <= tol
            if not (anchored and geo.is_staircase(vertices, record.corner)):
                violations.append({
                    "record": index, "depth": depth, "corner": record.corner.value,
                    "leaves": sorted(members),
                })
    return violations


# ---- convenience functions ----

_default_service = OrthoLayoutService()


def dispatch_case(frame):
    return _default_service.dispatch_case(frame)


def case_a(frame):
    return _default_service.case_a(frame)


def case_b(frame):
    return _default_service.case_b(frame)


def case_c(frame):
    return _default_service.case_c(frame)


def case_d(frame):
    return _default_service.case_d(frame)


def layout_ortho(tree):
    return _default_service.layout_ortho(tree)


def layout_ortho_traced(tree):
    return _default_service.layout_ortho_traced(tree)
