# bounded_treemaps/services/verification_service.py
"""
ตัวตรวจสอบ treemap ที่ไม่ขึ้นกับอัลกอริทึม: ใช้เฉพาะรูปเรขาคณิตใน Layout กับต้นไม้ input

ตรวจว่ารากเป็นสี่เหลี่ยมจัตุรัสหน่วย พื้นที่ของทุกโหนดเท่ากับน้ำหนัก
ลูกแบ่งพื้นที่ของพ่อพอดี และขอบเขตของรูปร่าง/อัตราส่วนตาม profile ของอัลกอริทึม
"""
import logging
import math
from dataclasses import dataclass, field

import shapely
from shapely.geometry import box as shapely_box

from models.errors import DegeneratePolygon, InputError, MalformedRegion, MissingRegion
from models.geometry import ShapeKind
from models.layout import Layout
from models.tree import WeightedTree
from services.convex_layout_service import K_BOUND, check_k_phi, phi_for_depth
from services.ortho_layout_service import INTERNAL_BOUND, LEAF_BENT_BOUND, LEAF_RECT_BOUND
from services.single_level_service import INTERNAL_BOUND as SINGLE_INTERNAL_BOUND
from services.single_level_service import LEAF_BOUND as SINGLE_LEAF_BOUND
from utils import geometry as geo

logger = logging.getLogger(__name__)

AREA_TOLERANCE = 1e-6
ASPECT_TOLERANCE = 1e-6
PROFILES = ("convex", "ortho", "singleLevel")
# ชื่อ algorithm ใน Layout → profile ที่ใช้ตรวจ
PROFILE_ALIASES = {"single": "singleLevel", "packing": "singleLevel"}


@dataclass
class RegionCheck:
    """ผลการตรวจพื้นที่ของโหนดหนึ่ง"""
    node_id: str
    shape: str
    area: float
    weight: float
    asp_ortho: float
    asp_convex: float
    violations: list = field(default_factory=list)

    def to_dict(self):
        return {
            "node": self.node_id,
            "shape": self.shape,
            "area": self.area,
            "weight": self.weight,
            "asp_ortho": self.asp_ortho,
            "asp_convex": self.asp_convex,
            "violations": list(self.violations),
        }


@dataclass
class VerificationReport:
    """
    รายงานการตรวจ

    Args:
        profile (str): convex, ortho หรือ singleLevel
        per_region (list[RegionCheck]): ผลของแต่ละโหนด เรียงแบบ preorder
        residuals (dict): ค่าคลาดเคลื่อนสูงสุดของพื้นที่และการแบ่ง
        violations (list[str]): ข้อผิดพลาดระดับทั้งต้น
    """
    profile: str
    per_region: list
    residuals: dict
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations and all(not r.violations for r in self.per_region)

    def failures(self):
        """(node id, violation) ทุกคู่ที่ไม่ผ่าน"""
        found = [(None, v) for v in self.violations]
        for check in self.per_region:
            found.extend((check.node_id, v) for v in check.violations)
        return found

    def to_dict(self):
        return {
            "profile": self.profile,
            "pass": self.passed,
            "residuals": dict(self.residuals),
            "violations": list(self.violations),
            "regions": [r.to_dict() for r in self.per_region],
        }


class VerificationService:
    """
    คลาสสำหรับตรวจ Layout กับต้นไม้ input
    """

    def __init__(self, area_tolerance=AREA_TOLERANCE, aspect_tolerance=ASPECT_TOLERANCE,
                 angle_tolerance=geo.ANGLE_TOLERANCE):
        self.area_tolerance = area_tolerance
        self.aspect_tolerance = aspect_tolerance
        self.angle_tolerance = angle_tolerance

    @staticmethod
    def resolve_profile(profile):
        profile = PROFILE_ALIASES.get(profile, profile)
        if profile not in PROFILES:
            raise InputError(f"profile ไม่ถูกต้อง: {profile}", profile=profile)
        return profile

    def verify(self, tree: WeightedTree, layout: Layout, profile=None) -> VerificationReport:
        """
        ตรวจ layout ของต้นไม้ที่ normalize แล้ว

        Args:
            tree (WeightedTree): ต้นไม้ input
            layout (Layout): ผลการจัดวาง
            profile (str | None): ขอบเขตที่ใช้ตรวจ (ค่าเริ่มต้นตาม layout.algorithm)

        Returns:
            VerificationReport: ผลการตรวจ (pass เมื่อไม่มี violation)

        Raises:
            MissingRegion: ถ้าโหนดใดไม่มีพื้นที่ใน layout
            MalformedRegion: ถ้าพื้นที่มีจุดยอดไม่ถึง 3 จุดหรือพิกัดไม่จำกัด
        """
        profile = self.resolve_profile(profile or layout.algorithm)
        geoms = {}
        invalid = set()
        aspects = {}
        for node_id in tree.preorder():
            region = layout.region(node_id)
            if region is None:
                raise MissingRegion(f"ไม่มีพื้นที่ของโหนด '{node_id}'", node_id=node_id)
            if len(region.vertices) < 3 or not all(
                math.isfinite(c) for p in region.vertices for c in p
            ):
                raise MalformedRegion(f"พื้นที่ของโหนด '{node_id}' ไม่สมบูรณ์", node_id=node_id)
            try:
                _, _, asp_o, asp_c = geo.measure(region.vertices)
                aspects[node_id] = (asp_o, asp_c)
            except DegeneratePolygon as exc:
                raise MalformedRegion(f"พื้นที่ของโหนด '{node_id}' มีพื้นที่เป็นศูนย์", node_id=node_id) from exc
            geom = geo.to_shapely(region.vertices)
            if not geom.is_valid:
                invalid.add(node_id)
                geom = shapely.make_valid(geom)
            geoms[node_id] = geom

        checks = {}
        max_area_error = 0.0
        for node_id in tree.preorder():
            region = layout.region(node_id)
            area = geoms[node_id].area
            weight = tree.weight(node_id)
            check = RegionCheck(node_id, str(region.shape), area, weight, *aspects[node_id])
            if node_id in invalid:
                check.violations.append("invalid_polygon")
            error = abs(area - weight)
            max_area_error = max(max_area_error, error)
            if error > self.area_tolerance:
                check.violations.append(f"area {area:.9g} != weight {weight:.9g}")
            checks[node_id] = check

        violations = []
        root_error = geoms[tree.root].symmetric_difference(shapely_box(0.0, 0.0, 1.0, 1.0)).area
        if root_error > self.area_tolerance:
            violations.append(f"root is not the unit square (residual {root_error:.3g})")

        max_tiling_error = 0.0
        for node_id in tree.internal_nodes():
            children = [geoms[c] for c in tree.children(node_id)]
            union = shapely.union_all(children)
            gap = geoms[node_id].symmetric_difference(union).area
            overlap = max(0.0, math.fsum(c.area for c in children) - union.area)
            residual = max(gap, overlap)
            max_tiling_error = max(max_tiling_error, residual)
            if residual > self.area_tolerance:
                checks[node_id].violations.append(
                    f"children do not tile the region (gap {gap:.3g}, overlap {overlap:.3g})"
                )

        rule = {"convex": self._convex_rules, "ortho": self._ortho_rules,
                "singleLevel": self._single_rules}[profile]
        for node_id in tree.preorder():
            rule(tree, node_id, layout.region(node_id), checks[node_id])

        report = VerificationReport(
            profile=profile,
            per_region=[checks[n] for n in tree.preorder()],
            residuals={
                "max_area_error": max_area_error,
                "max_tiling_error": max_tiling_error,
                "root_error": root_error,
            },
            violations=violations,
        )
        if report.passed:
            logger.info("verification (%s) passed for %d regions", profile, len(checks))
        else:
            logger.warning("verification (%s) failed: %d problems", profile, len(report.failures()))
        return report

    # ---- profile rules ----

    def _convex_rules(self, tree, node_id, region, check):
        d = _label_depth(tree, node_id)
        vertices = geo.normalize_vertices(region.vertices)
        if not geo.is_convex_chain(vertices, 1e-12):
            check.violations.append("region is not convex")
            return
        n = geo.non_axis_edge_count(vertices, self.angle_tolerance)
        if n > d + 4:
            check.violations.append(f"{n} non-axis edges > d + 4 = {d + 4}")
        report = check_k_phi(vertices, K_BOUND, phi_for_depth(d), self.angle_tolerance)
        for violation in report.violations:
            check.violations.append(f"(k, phi)-polygon: {violation}")

    def _ortho_rules(self, tree, node_id, region, check):
        vertices = geo.normalize_vertices(region.vertices)
        if not geo.is_rectilinear(vertices, self.angle_tolerance):
            check.violations.append("region is not rectilinear")
            return
        if not geo.is_orthoconvex(vertices):
            check.violations.append("region is not orthoconvex")
            return
        asp = check.asp_ortho
        if tree.is_leaf(node_id):
            kind = geo.classify_shape(vertices).kind
            if kind is ShapeKind.RECTANGLE:
                bound = LEAF_RECT_BOUND
            elif kind in (ShapeKind.L_SHAPE, ShapeKind.S_SHAPE):
                bound = LEAF_BENT_BOUND
            else:
                check.violations.append(f"leaf drawn as {kind.value}")
                return
        else:
            bound = INTERNAL_BOUND
        if asp > bound + self.aspect_tolerance:
            check.violations.append(f"asp {asp:.6g} > {bound:g}")

    def _single_rules(self, tree, node_id, region, check):
        vertices = geo.normalize_vertices(region.vertices)
        if not geo.is_rectilinear(vertices, self.angle_tolerance):
            check.violations.append("region is not rectilinear")
            return
        kind = geo.classify_region(vertices).kind
        if kind not in (ShapeKind.RECTANGLE, ShapeKind.L_SHAPE):
            check.violations.append(f"region drawn as {kind.value}")
            return
        bound = SINGLE_LEAF_BOUND if tree.is_leaf(node_id) else SINGLE_INTERNAL_BOUND
        if check.asp_ortho > bound + self.aspect_tolerance:
            check.violations.append(f"asp {check.asp_ortho:.6g} > {bound:.6g}")


def _label_depth(tree: WeightedTree, node_id):
    # ป้าย d ของการจัดวางแบบนูน: จำนวนบรรพบุรุษที่มีลูกอย่างน้อยสองโหนด
    # โหนดที่มีลูกเดียวใช้พื้นที่ร่วมกับลูก จึงนับจากโหนดล่างสุดในสายโซ่
    while len(tree.children(node_id)) == 1:
        node_id = tree.children(node_id)[0]
    parents = tree.parents
    d = 0
    while node_id in parents:
        node_id = parents[node_id]
        if len(tree.children(node_id)) > 1:
            d += 1
    return d


# ---- convenience functions ----

_default_service = VerificationService()


def verify(tree, layout, profile=None):
    return _default_service.verify(tree, layout, profile)
