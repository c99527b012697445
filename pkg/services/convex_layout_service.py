# bounded_treemaps/services/convex_layout_service.py
"""
การจัดวางแบบรูปหลายเหลี่ยมนูน อัตราส่วน O(depth)

รักษาสองเงื่อนไขที่ทุกโหนดระดับ d ของต้นไม้ทวิภาค:
  - จำนวนขอบเอียงของพื้นที่ ≤ d + 4
  - พื้นที่เป็น (k, φ)-polygon โดย k = 4 และ φ = π / (2(d + 6))
"""
import logging
import math
from dataclasses import dataclass

from models.errors import (
    BadWeights,
    CasePreconditionViolated,
    DepthTooLarge,
    FractionOutOfRange,
    LayoutError,
)
from models.geometry import UNIT_SQUARE, ConvexPolygon
from models.layout import Layout, Region
from models.tree import NodeKind, WeightedTree
from services import tree_service
from services.partition_service import ONE_THIRD, TWO_THIRDS, balanced_axis_cut
from utils import geometry as geo

logger = logging.getLogger(__name__)

K_BOUND = 4
MAX_DEPTH = 64


def phi_for_depth(d):
    """มุมแยกขั้นต่ำ φ = π / (2(d + 6))"""
    return math.pi / (2 * (d + 6))


@dataclass(frozen=True)
class ConvexRegionState:
    """
    สถานะของพื้นที่หนึ่งระหว่างการแบ่ง

    Args:
        region (ConvexPolygon): รูปนูนของโหนด
        d (int): ป้ายความลึก
        n_non_axis (int): จำนวนขอบที่ไม่ขนานแกน
    """
    region: ConvexPolygon
    d: int
    n_non_axis: int

    @classmethod
    def of(cls, region, d):
        return cls(region, d, geo.non_axis_edge_count(region))

    @property
    def phi(self):
        return phi_for_depth(self.d)

    @property
    def satisfies_edge_budget(self):
        return self.n_non_axis <= self.d + 4


@dataclass(frozen=True)
class KPhiReport:
    """
    ผลการตรวจ (k, φ)-polygon

    Args:
        min_pairwise_angle (float): มุมเล็กสุดระหว่างขอบเอียงกับขอบอื่นหรือแกน
        has_two_horizontal, has_two_vertical (bool): มีขอบแนวนอน/แนวตั้งสองเส้นหรือไม่
        width_height_ratio (float): width / height ของกล่องล้อมรอบ
        ok (bool): ผ่านทุกเงื่อนไข
        phi_separated (bool): มีขอบนอนสองเส้นแล้วสูง ≥ กว้าง และกลับกันสำหรับขอบตั้ง
        violations (tuple[str]): รายการเงื่อนไขที่ไม่ผ่าน
    """
    min_pairwise_angle: float
    has_two_horizontal: bool
    has_two_vertical: bool
    width_height_ratio: float
    ok: bool
    phi_separated: bool
    violations: tuple = ()


def check_k_phi(polygon, k, phi, tol=geo.ANGLE_TOLERANCE) -> KPhiReport:
    """
    ตรวจเงื่อนไขของ (k, φ)-polygon:
    (i) ไม่มีขอบเอียงคู่ใดขนานกัน และขอบเอียงทำมุม ≥ φ กับขอบอื่นและแกนทั้งสอง
    (ii) ถ้ามีขอบนอนสองเส้น width/height ≤ k
    (iii) ถ้ามีขอบตั้งสองเส้น height/width ≤ k
    """
    angles = geo.edge_angles(polygon)
    slanted = [i for i, a in enumerate(angles) if not geo.is_axis_parallel(a, tol)]
    horizontal = sum(1 for a in angles if geo.is_horizontal(a, tol))
    vertical = sum(1 for a in angles if geo.is_vertical(a, tol))
    box = geo.bbox(polygon)
    ratio = box.width / box.height
    violations = []

    min_angle = math.pi / 2
    for i in slanted:
        others = [angles[j] for j in range(len(angles)) if j != i] + [0.0, math.pi / 2]
        min_angle = min([min_angle] + [geo.angle_distance(angles[i], o) for o in others])
    for a, i in enumerate(slanted):
        for j in slanted[a + 1:]:
            if geo.angle_distance(angles[i], angles[j]) <= tol:
                violations.append("parallel_non_axis_edges")
                break
    if min_angle < phi - tol:
        violations.append("angle_below_phi")
    two_horizontal = horizontal >= 2
    two_vertical = vertical >= 2
    if two_horizontal and ratio > k + tol:
        violations.append("width_height_ratio")
    if two_vertical and 1 / ratio > k + tol:
        violations.append("height_width_ratio")
    separated = (not two_horizontal or box.height >= box.width * (1 - tol)) and (
        not two_vertical or box.width >= box.height * (1 - tol)
    )
    return KPhiReport(
        min_pairwise_angle=min_angle,
        has_two_horizontal=two_horizontal,
        has_two_vertical=two_vertical,
        width_height_ratio=ratio,
        ok=not violations,
        phi_separated=separated,
        violations=tuple(dict.fromkeys(violations)),
    )


def choose_direction(polygon, d):
    """
    เลือกทิศของเส้นตัดเอียง: จุดกึ่งกลางของช่องว่างเชิงมุมที่กว้างที่สุด
    ระหว่างทิศของขอบทั้งหมดและแกนทั้งสอง (mod π) เท่ากันเลือกช่องแรก

    Raises:
        CasePreconditionViolated: ถ้าได้มุมห่างจากขอบน้อยกว่า π/(2(d+6))
    """
    raw = sorted(set(geo.edge_angles(polygon)) | {0.0, math.pi / 2})
    angles = []
    for a in raw:
        if not angles or a - angles[-1] > 1e-12:
            angles.append(a)
    best_gap, best_mid = -1.0, 0.0
    for i, a in enumerate(angles):
        b = angles[i + 1] if i + 1 < len(angles) else angles[0] + math.pi
        if b - a > best_gap:
            best_gap = b - a
            best_mid = (a + b) / 2 % math.pi
    separation = best_gap / 2
    if separation < phi_for_depth(d) - geo.ANGLE_TOLERANCE:
        raise CasePreconditionViolated(
            f"ไม่มีทิศที่ห่างจากขอบทุกเส้นอย่างน้อย φ (d={d}, separation={separation:.6g})",
            d=d, separation=separation,
        )
    return best_mid


class ConvexLayoutService:
    """
    คลาสสำหรับการจัดวางแบบรูปหลายเหลี่ยมนูน
    """

    def __init__(self, max_depth=MAX_DEPTH, tolerance=1e-9):
        self.max_depth = max_depth
        self.tolerance = tolerance

    def _check_weights(self, state, w1, w2):
        if w1 <= 0 or w2 <= 0:
            raise BadWeights(f"น้ำหนักต้องเป็นบวก (w1={w1}, w2={w2})", w1=w1, w2=w2)
        area = geo.area(state.region)
        if not math.isclose(w1 + w2, area, rel_tol=self.tolerance):
            raise BadWeights(
                f"ผลรวมน้ำหนัก {w1 + w2} ไม่เท่ากับพื้นที่ {area}", w1=w1, w2=w2, area=area,
            )

    def _checked_state(self, piece, d):
        state = ConvexRegionState.of(piece, d)
        if not state.satisfies_edge_budget:
            raise LayoutError(
                f"จำนวนขอบเอียง {state.n_non_axis} เกิน d + 4 = {d + 4}",
                n_non_axis=state.n_non_axis, d=d,
            )
        report = check_k_phi(piece, K_BOUND, phi_for_depth(d))
        if not report.ok:
            raise LayoutError(
                f"ชิ้นที่ตัดไม่เป็น (k, φ)-polygon: {', '.join(report.violations)}", d=d,
            )
        return state

    def split_case1(self, state: ConvexRegionState, w1, w2, labels=None):
        """
        ตัดด้วยเส้นเอียงในทิศที่ได้จาก choose_direction (กรณีลูกหนักอยู่ระดับใหม่)

        วางเส้นแบ่งครึ่งพื้นที่ในทิศนั้นก่อน ชิ้นที่มีขอบเอียงน้อยกว่าคือชิ้นเป้าหมาย
        (เท่ากันเลือกฝั่งลบ) แล้วตัดจริงให้ชิ้นเบา (w2) อยู่ภายในชิ้นเป้าหมาย

        Args:
            state (ConvexRegionState): พื้นที่ของโหนดพ่อ
            w1, w2 (float): น้ำหนักของลูก โดย w1 ≥ w2
            labels (tuple[int, int] | None): ป้าย d ของลูก (ค่าเริ่มต้น d + 1 ทั้งคู่)

        Returns:
            tuple[ConvexRegionState, ConvexRegionState]: สถานะของลูกที่หนักกว่าและเบากว่า
        """
        self._check_weights(state, w1, w2)
        if w1 < w2:
            raise BadWeights(f"ต้องมี w1 ≥ w2 (w1={w1}, w2={w2})", w1=w1, w2=w2)
        d1, d2 = labels or (state.d + 1, state.d + 1)
        total = w1 + w2
        region = state.region
        direction = choose_direction(region, state.d)

        neg_half, pos_half = geo.clip_convex(region, geo.area_cut(region, direction, 0.5))
        prime_negative = geo.non_axis_edge_count(neg_half) <= geo.non_axis_edge_count(pos_half)
        if prime_negative:
            neg, pos = geo.clip_convex(region, geo.area_cut(region, direction, w2 / total))
            heavy, light = pos, neg
        else:
            neg, pos = geo.clip_convex(region, geo.area_cut(region, direction, w1 / total))
            heavy, light = neg, pos
        logger.debug("case 1 at d=%d: direction %.6f, R' on %s side", state.d, direction,
                     "negative" if prime_negative else "positive")
        return self._checked_state(heavy, d1), self._checked_state(light, d2)

    def split_case2(self, state: ConvexRegionState, w1, w2, labels=None):
        """
        ตัดแนวแกนตั้งฉากกับด้านที่ยาวกว่าของกล่องล้อมรอบ (กรณีลูกอยู่ระดับเดียวกัน)

        Raises:
            FractionOutOfRange: ถ้า w1/(w1+w2) อยู่นอก [1/3, 2/3]
        """
        self._check_weights(state, w1, w2)
        d1, d2 = labels or (state.d, state.d)
        fraction = w1 / (w1 + w2)
        if not ONE_THIRD - 1e-12 <= fraction <= TWO_THIRDS + 1e-12:
            raise FractionOutOfRange(fraction)
        box = geo.bbox(state.region)
        vertical = box.width >= box.height
        report = balanced_axis_cut(state.region, fraction, vertical=vertical)
        if not report.ok:
            raise LayoutError(
                "ตำแหน่งตัดแนวแกนทำให้ชิ้นแคบกว่าหนึ่งในสี่ของความกว้าง",
                extents=str(report.extents), extent=report.extent,
            )
        lower, upper = geo.clip_convex(state.region, report.line)
        first, second = (lower, upper) if report.left_fraction == fraction else (upper, lower)
        logger.debug("case 2 at d=%d: %s cut at %.6f", state.d,
                     "vertical" if vertical else "horizontal", report.position)
        return self._checked_state(first, d1), self._checked_state(second, d2)

    def layout_convex(self, tree: WeightedTree) -> Layout:
        """
        จัดวาง treemap แบบรูปนูนของต้นไม้ที่ normalize แล้ว

        Returns:
            Layout: พื้นที่ของทุกโหนดใน input (โหนดเสริมไม่ถูกส่งออก)

        Raises:
            DepthTooLarge: ถ้าต้นไม้ลึกเกิน max_depth
        """
        if tree.depth() > self.max_depth:
            raise DepthTooLarge(
                f"ต้นไม้ลึก {tree.depth()} ระดับ เกินกว่าที่รองรับ ({self.max_depth})",
                depth=tree.depth(), max_depth=self.max_depth,
            )
        binary = tree_service.to_binary_convex(tree)
        square = geo.make_convex(UNIT_SQUARE.corners())
        stack = [(binary, ConvexRegionState.of(square, binary.d))]
        regions = {}
        cases = {"case1": 0, "case2": 0}
        worst = 0.0

        while stack:
            node, state = stack.pop()
            if node.kind is NodeKind.ORIGINAL:
                for node_id in node.input_ids:
                    region = Region.build(
                        node_id, state.region.vertices, tree.weight(node_id),
                        tree.node_depth(node_id), tree.is_leaf(node_id),
                    )
                    regions[node_id] = region
                    worst = max(worst, region.asp_convex / (state.d + 6))
            if node.is_leaf:
                continue
            heavy_index = tree_service.heavier_child_index(node)
            heavy, light = node.child(heavy_index), node.child(1 - heavy_index)
            labels = (heavy.d, light.d)
            if heavy.d > state.d:
                cases["case1"] += 1
                s_heavy, s_light = self.split_case1(state, heavy.weight, light.weight, labels)
            else:
                cases["case2"] += 1
                s_heavy, s_light = self.split_case2(state, heavy.weight, light.weight, labels)
            stack.append((light, s_light))
            stack.append((heavy, s_heavy))

        stats = {
            "cases": cases,
            "max_asp_convex_over_depth": worst,
            "depth": tree.depth(),
        }
        layout = Layout("convex", regions, stats)
        logger.info("convex layout: %d regions, max asp_convex %.4f", len(layout),
                    layout.max_aspect("convex"))
        return layout


# ---- convenience functions ----

_default_service = ConvexLayoutService()


def split_case1(state, w1, w2, labels=None):
    return _default_service.split_case1(state, w1, w2, labels)


def split_case2(state, w1, w2, labels=None):
    return _default_service.split_case2(state, w1, w2, labels)


def layout_convex(tree):
    return _default_service.layout_convex(tree)
