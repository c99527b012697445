# bounded_treemaps/services/single_level_service.py
"""
การจัดวางต้นไม้ระดับเดียวด้วยสี่เหลี่ยมและรูปตัว L
อัตราส่วนของใบไม่เกิน 2 + 2√3/3 และสี่เหลี่ยมระหว่างทางไม่เกิน 1 + √3

รวมถึงอินสแตนซ์ขอบล่าง (สี่น้ำหนัก) และการลดรูปจากปัญหาจัดวางสี่เหลี่ยมจัตุรัส
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from models.errors import DomainError, EmptyInstance, LayoutError, Overfull
from models.geometry import UNIT_SQUARE, Rect, ShapeClass, ShapeKind
from models.instances import SingleLevelInstance, SquarePackingInstance
from models.layout import Layout, Region
from services.partition_service import lpt_partition, similar_corner_split, split_rect
from utils import geometry as geo

logger = logging.getLogger(__name__)

TAU = (3 - math.sqrt(3)) / 4
LEAF_BOUND = 2 + 2 * math.sqrt(3) / 3
INTERNAL_BOUND = 1 + math.sqrt(3)


@dataclass
class _Group:
    rect: Rect
    members: list


class SingleLevelService:
    """
    คลาสสำหรับการจัดวางแบบระดับเดียว
    """

    def __init__(self, tolerance=1e-9):
        self.tolerance = tolerance

    @staticmethod
    def dispatch_case(r1, a):
        """
        เลือกกรณีจากน้ำหนักสัมพัทธ์ของลูกที่หนักที่สุด r1 และอัตราส่วน a ของสี่เหลี่ยม

        Returns:
            int: 1, 2 หรือ 3 (ช่วงของกรณีที่ 2 ว่างเมื่อ a = 1)
        """
        if r1 < TAU:
            return 1
        if r1 < a * TAU:
            return 2
        return 3

    def layout_single_level(self, inst: SingleLevelInstance) -> Layout:
        """
        จัดวางอินสแตนซ์ระดับเดียวในสี่เหลี่ยมจัตุรัสหน่วย

        สร้างต้นไม้ทวิภาคไปพร้อมกับการตัด: กรณีที่ 1 แบ่งด้วย LPT, กรณีที่ 2 ตัดลูกที่หนักที่สุด
        ออกเป็นสี่เหลี่ยม, กรณีที่ 3 วางลูกที่เหลือในสี่เหลี่ยมคล้ายที่มุมบนซ้าย
        และให้ลูกที่หนักที่สุดเป็นรูปตัว L ล้อมรอบ

        Args:
            inst (SingleLevelInstance): น้ำหนักที่ normalize แล้ว

        Returns:
            Layout: พื้นที่ของรากและใบทุกใบ พร้อมสถิติของแต่ละขั้น

        Raises:
            EmptyInstance: ถ้าไม่มีน้ำหนัก
        """
        if inst is None or len(inst) == 0:
            raise EmptyInstance("อินสแตนซ์ว่าง")
        regions = {}
        steps = []
        intermediate = []

        def emit_leaf(index, vertices, shape=None):
            node_id = inst.ids[index]
            region = Region.build(node_id, vertices, inst.weights[index], 1, True, shape)
            if region.asp_ortho > LEAF_BOUND + self.tolerance:
                raise LayoutError(
                    f"อัตราส่วนของใบ '{node_id}' = {region.asp_ortho:.6g} เกิน {LEAF_BOUND:.6g}",
                    node_id=node_id,
                )
            regions[node_id] = region

        if len(inst) == 1 and inst.ids == (inst.root_id,):
            regions[inst.root_id] = Region.build(inst.root_id, UNIT_SQUARE.corners(), 1.0, 0, True)
            return Layout("single", regions, {"cases": {}, "steps": [], "intermediate_rects": []})

        regions[inst.root_id] = Region.build(inst.root_id, UNIT_SQUARE.corners(), 1.0, 0, False)
        stack = [_Group(UNIT_SQUARE, list(range(len(inst))))]
        while stack:
            group = stack.pop()
            if len(group.members) == 1:
                emit_leaf(group.members[0], group.rect.corners())
                continue
            rect = group.rect
            a = geo.asp_ortho(rect)
            if a > INTERNAL_BOUND + self.tolerance:
                raise LayoutError(f"อัตราส่วนของสี่เหลี่ยมระหว่างทาง {a:.6g} เกิน {INTERNAL_BOUND:.6g}")
            intermediate.append(rect)
            weights = [inst.weights[i] for i in group.members]
            total = math.fsum(weights)
            scale = rect.area / total
            heaviest = max(range(len(weights)), key=lambda i: (weights[i], -i))
            r1 = weights[heaviest] / total
            case = self.dispatch_case(r1, a)
            steps.append({"case": case, "members": len(group.members), "asp": a, "r1": r1})
            logger.debug("single-level case %d: %d members, r1=%.4f, a=%.4f",
                         case, len(group.members), r1, a)

            if case == 1:
                split = lpt_partition(weights)
                first = [group.members[i] for i in split.h1]
                second = [group.members[i] for i in split.h2]
                r_first, r_second = split_rect(rect, split.w1 * scale, split.w2 * scale)
                stack.append(_Group(r_second, second))
                stack.append(_Group(r_first, first))
                continue

            heavy_member = group.members[heaviest]
            rest = [m for k, m in enumerate(group.members) if k != heaviest]
            rest_weight = math.fsum(inst.weights[m] for m in rest)
            if case == 2:
                r_heavy, r_rest = split_rect(rect, weights[heaviest] * scale, rest_weight * scale)
                emit_leaf(heavy_member, r_heavy.corners())
                stack.append(_Group(r_rest, rest))
                continue

            inner, l_shape = similar_corner_split(rect, rest_weight / total)
            emit_leaf(heavy_member, l_shape, ShapeClass(ShapeKind.L_SHAPE))
            stack.append(_Group(inner, rest))

        counts = {}
        for step in steps:
            counts[step["case"]] = counts.get(step["case"], 0) + 1
        stats = {
            "cases": {f"case{k}": v for k, v in sorted(counts.items())},
            "steps": steps,
            "intermediate_rects": [[r.x0, r.y0, r.x1, r.y1] for r in intermediate],
            "max_intermediate_asp": max((geo.asp_ortho(r) for r in intermediate), default=1.0),
        }
        layout = Layout("single", regions, stats)
        logger.info("single-level layout: %d leaves, max asp %.4f", len(inst), layout.max_aspect())
        return layout

    # ---- lower bound ----

    @staticmethod
    def lower_bound_root(tol=1e-15):
        """
        รากจริงของ 4x³ − 4x² + 4x − 1 = 0 ในช่วง (0.31, 0.32) ด้วย bisection
        """
        def cubic(x):
            return ((4 * x - 4) * x + 4) * x - 1

        lo, hi = 0.31, 0.32
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if mid in (lo, hi):
                break
            if cubic(mid) < 0:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2

    @staticmethod
    def lower_bound_closed_form():
        """1/x ในรูปรากซ้อน: 6 / (2 + ∛(3√57 − 1) − ∛(3√57 + 1))"""
        s = 3 * math.sqrt(57)
        return 6 / (2 + float(np.cbrt(s - 1)) - float(np.cbrt(s + 1)))

    def lower_bound_instance(self) -> SingleLevelInstance:
        """
        อินสแตนซ์ [x, x, x, 1 − 3x] ที่ทำให้สองวิธีวาดมีอัตราส่วนเท่ากัน
        """
        x = self.lower_bound_root()
        return SingleLevelInstance((x, x, x, 1 - 3 * x))

    @staticmethod
    def lower_bound_profile(x):
        """
        อัตราส่วนของสองวิธีวาดอินสแตนซ์ [x, x, x, 1 − 3x]

        Returns:
            tuple[float, float]: (1/x, (1 − 2x)² / (1 − 3x))
        """
        if not 0 < x < 1 / 3:
            raise DomainError(f"x ต้องอยู่ใน (0, 1/3) แต่ได้ {x}", x=x)
        return 1 / x, (1 - 2 * x) ** 2 / (1 - 3 * x)

    # ---- square packing reduction ----

    @staticmethod
    def reduction_fractions(sp: SquarePackingInstance):
        """น้ำหนักของการลดรูปในรูปเศษส่วนแบบตรงตัว"""
        cells = sp.container_side ** 2
        used = sum(s * s for s in sp.square_sides)
        if used > cells:
            raise Overfull(f"พื้นที่รวม {used} เกินพื้นที่กล่อง {cells}")
        squares = [Fraction(s * s, cells) for s in sp.square_sides]
        return squares + [Fraction(1, cells)] * (cells - used)

    def reduce_square_packing(self, sp: SquarePackingInstance) -> SingleLevelInstance:
        """
        แปลงปัญหาจัดวางสี่เหลี่ยมจัตุรัสเป็นอินสแตนซ์ระดับเดียว: สี่เหลี่ยมแต่ละรูปมีน้ำหนัก
        area(si)/area(S) ตามด้วยช่องหน่วยน้ำหนัก 1/area(S) สำหรับพื้นที่ที่เหลือ

        Raises:
            Overfull: ถ้าพื้นที่รวมเกินกล่อง
        """
        return SingleLevelInstance(tuple(float(f) for f in self.reduction_fractions(sp)))


# ---- convenience functions ----

_default_service = SingleLevelService()


def layout_single_level(inst):
    return _default_service.layout_single_level(inst)


def lower_bound_instance():
    return _default_service.lower_bound_instance()


def lower_bound_profile(x):
    return SingleLevelService.lower_bound_profile(x)


def reduce_square_packing(sp):
    return _default_service.reduce_square_packing(sp)
