# bounded_treemaps/services/partition_service.py
"""
เครื่องมือแบ่งน้ำหนักและพื้นที่ที่อัลกอริทึมทั้งสามแบบใช้ร่วมกัน:
การแบ่งสองกลุ่มด้วย LPT, การตัดสี่เหลี่ยมตามน้ำหนัก และการตัดแนวแกนของรูปนูน
"""
import logging
import math
from dataclasses import dataclass

from models.errors import BadWeights, FractionOutOfRange, GeometryError, PartitionError, TooFewItems
from models.geometry import ConvexPolygon, Corner, DirectedLine, Point, Rect
from utils import geometry as geo

logger = logging.getLogger(__name__)

ONE_THIRD = 1 / 3
TWO_THIRDS = 2 / 3


@dataclass(frozen=True)
class WeightSplit:
    """
    ผลการแบ่งสองกลุ่ม: h1 หนักกว่าหรือเท่ากับ h2 เสมอ

    Args:
        h1, h2 (tuple[int]): ดัชนีของสมาชิกในแต่ละกลุ่ม (เรียงจากน้อยไปมาก)
        w1, w2 (float): น้ำหนักรวมของแต่ละกลุ่ม
    """
    h1: tuple
    h2: tuple
    w1: float
    w2: float

    @property
    def total(self):
        return self.w1 + self.w2


def lpt_bound(t):
    """
    ขอบบนของ w1/total ที่ LPT รับประกันเมื่อทุกน้ำหนัก ≤ t·total

    Returns:
        float | None: 2t สำหรับ 3/10 ≤ t < 1/3, 2/3 สำหรับ 1/3 ≤ t ≤ 2/3, None นอกช่วง
    """
    if 0.3 <= t < ONE_THIRD:
        return 2 * t
    if ONE_THIRD <= t <= TWO_THIRDS:
        return TWO_THIRDS
    return None


def lpt_partition(weights) -> WeightSplit:
    """
    แบ่งน้ำหนักเป็นสองกลุ่มด้วย LPT: เรียงจากมากไปน้อย (เท่ากันเรียงตามดัชนี)
    แล้ววางทีละตัวในกลุ่มที่เบากว่า (เท่ากันลงกลุ่มแรก)

    Args:
        weights (list[float]): น้ำหนักที่เป็นบวกอย่างน้อย 2 ค่า

    Returns:
        WeightSplit: ผลการแบ่ง โดย w1 ≥ w2

    Raises:
        TooFewItems: ถ้ามีน้อยกว่า 2 ค่า
        BadWeights: ถ้ามีน้ำหนักที่ไม่เป็นบวก
    """
    weights = [float(w) for w in weights]
    if len(weights) < 2:
        raise TooFewItems(f"ต้องมีอย่างน้อย 2 น้ำหนัก แต่ได้ {len(weights)}", count=len(weights))
    if any(not math.isfinite(w) or w <= 0 for w in weights):
        raise BadWeights("น้ำหนักทุกค่าต้องเป็นบวก")

    order = sorted(range(len(weights)), key=lambda i: (-weights[i], i))
    bins = ([], [])
    loads = [0.0, 0.0]
    for i in order:
        target = 0 if loads[0] <= loads[1] else 1
        bins[target].append(i)
        loads[target] += weights[i]

    first, second = 0, 1
    if loads[1] > loads[0]:
        first, second = 1, 0
    w1 = math.fsum(weights[i] for i in bins[first])
    w2 = math.fsum(weights[i] for i in bins[second])
    split = WeightSplit(tuple(sorted(bins[first])), tuple(sorted(bins[second])), w1, w2)

    total = w1 + w2
    t = max(max(weights) / total, 0.3)
    bound = lpt_bound(t)
    if bound is not None and w1 > bound * total * (1 + 1e-12):
        raise PartitionError(
            f"ผลการแบ่ง LPT เกินขอบเขต ({w1 / total:.6g} > {bound:.6g})",
            ratio=w1 / total, bound=bound,
        )
    return split


def split_rect(rect: Rect, w1, w2):
    """
    ตัดสี่เหลี่ยมเป็นสองชิ้นตามน้ำหนักด้วยเส้นตรงตั้งฉากกับด้านที่ยาวกว่า
    (ด้านเท่ากันตัดแนวตั้ง) ชิ้นแรกอยู่ซ้าย/ล่าง

    Args:
        rect (Rect): สี่เหลี่ยมที่ต้องการตัด
        w1, w2 (float): น้ำหนักของสองชิ้น ผลรวมต้องเท่ากับพื้นที่

    Returns:
        tuple[Rect, Rect]: (ชิ้นของ w1, ชิ้นของ w2)

    Raises:
        BadWeights: ถ้าน้ำหนักไม่เป็นบวกหรือผลรวมไม่เท่ากับพื้นที่
    """
    if w1 <= 0 or w2 <= 0:
        raise BadWeights(f"น้ำหนักต้องเป็นบวก (w1={w1}, w2={w2})", w1=w1, w2=w2)
    if not math.isclose(w1 + w2, rect.area, rel_tol=1e-9):
        raise BadWeights(
            f"ผลรวมน้ำหนัก {w1 + w2} ไม่เท่ากับพื้นที่ {rect.area}", w1=w1, w2=w2, area=rect.area,
        )
    share = w1 / (w1 + w2)
    if rect.width >= rect.height:
        cut = rect.x0 + rect.width * share
        first = Rect(rect.x0, rect.y0, cut, rect.y1)
        second = Rect(cut, rect.y0, rect.x1, rect.y1)
    else:
        cut = rect.y0 + rect.height * share
        first = Rect(rect.x0, rect.y0, rect.x1, cut)
        second = Rect(rect.x0, cut, rect.x1, rect.y1)

    parent_asp = geo.asp_ortho(rect)
    for piece, w in ((first, w1), (second, w2)):
        bound = max(parent_asp, rect.area / w)
        if geo.asp_ortho(piece) > bound * (1 + 1e-12) + 1e-9:
            raise PartitionError(
                f"อัตราส่วนของชิ้นที่ตัด {geo.asp_ortho(piece):.6g} เกินขอบเขต {bound:.6g}",
                asp=geo.asp_ortho(piece), bound=bound,
            )
    return first, second


@dataclass(frozen=True)
class AxisCutReport:
    """
    ผลการตัดแนวแกนของรูปนูนตามสัดส่วนพื้นที่

    Args:
        position (float): พิกัดของเส้นตัด (x สำหรับแนวตั้ง, y สำหรับแนวนอน)
        left_fraction (float): สัดส่วนพื้นที่ของชิ้นซ้าย/ล่าง
        extents (tuple[float, float]): ความกว้าง (หรือสูง) ของสองชิ้น
        extent (float): ความกว้าง (หรือสูง) ของรูปทั้งหมด
        ok (bool): ทั้งสองชิ้นอยู่ในช่วง [extent/4, 3·extent/4]
    """
    position: float
    left_fraction: float
    extents: tuple
    extent: float
    ok: bool
    vertical: bool = True

    @property
    def line(self):
        angle = math.pi / 2 if self.vertical else math.pi
        return DirectedLine(angle, self.position)


def balanced_axis_cut(polygon: ConvexPolygon, fraction, vertical=True, tol=1e-9) -> AxisCutReport:
    """
    ตัดรูปนูนด้วยเส้นแนวแกนให้ชิ้นหนึ่งมีพื้นที่ fraction หรือ 1 − fraction
    โดยเลือกฝั่งที่ทำให้ทั้งสองชิ้นกว้างอย่างน้อยหนึ่งในสี่ของความกว้างเดิม

    ลองวางชิ้น fraction ไว้ซ้าย/ล่างก่อน ถ้าไม่ผ่านจึงสลับข้าง
    """
    box = geo.bbox(polygon)
    lo, hi = (box.x0, box.x1) if vertical else (box.y0, box.y1)
    extent = hi - lo
    angle = math.pi / 2 if vertical else math.pi
    first = None
    for left_fraction in (fraction, 1 - fraction):
        position = geo.area_cut(polygon, angle, left_fraction).offset
        extents = (position - lo, hi - position)
        ok = all(extent / 4 - tol * extent <= e <= 3 * extent / 4 + tol * extent for e in extents)
        report = AxisCutReport(position, left_fraction, extents, extent, ok, vertical)
        if ok:
            return report
        first = first or report
    return first


def check_vertical_cut(polygon: ConvexPolygon, fraction) -> AxisCutReport:
    """
    ตัดแนวตั้งตามสัดส่วน fraction ∈ [1/3, 2/3] และรายงานว่าความกว้าง
    ของทั้งสองชิ้นอยู่ใน [w/4, 3w/4] หรือไม่ (ใช้เป็น oracle ในการทดสอบ)

    Raises:
        FractionOutOfRange: ถ้า fraction อยู่นอก [1/3, 2/3]
        GeometryError: ถ้ารูปสูงกว่ากว้าง
    """
    if not ONE_THIRD - 1e-12 <= fraction <= TWO_THIRDS + 1e-12:
        raise FractionOutOfRange(fraction)
    box = geo.bbox(polygon)
    if box.width < box.height:
        raise GeometryError("รูปต้องกว้างไม่น้อยกว่าสูง", width=box.width, height=box.height)
    return balanced_axis_cut(polygon, fraction, vertical=True)


def similar_rect(rect: Rect, share, corner: Corner) -> Rect:
    """
    สี่เหลี่ยมคล้าย rect ที่มีพื้นที่ share·area และใช้มุม corner ร่วมกับ rect
    """
    s = math.sqrt(share)
    w, h = s * rect.width, s * rect.height
    x0, x1 = (rect.x1 - w, rect.x1) if corner.is_right else (rect.x0, rect.x0 + w)
    y0, y1 = (rect.y1 - h, rect.y1) if corner.is_top else (rect.y0, rect.y0 + h)
    return Rect(x0, y0, x1, y1)


def similar_corner_split(rect: Rect, share):
    """
    วางสี่เหลี่ยมคล้าย rect ที่มีพื้นที่ share·area ไว้ที่มุมบนซ้าย

    Returns:
        tuple: (สี่เหลี่ยมด้านใน, จุดยอดของรูปตัว L ที่เหลือ เรียงทวนเข็มนาฬิกา)
    """
    inner = similar_rect(rect, share, Corner.TOP_LEFT)
    l_shape = (
        Point(rect.x0, rect.y0), Point(rect.x1, rect.y0), Point(rect.x1, rect.y1),
        Point(inner.x1, rect.y1), Point(inner.x1, inner.y0), Point(rect.x0, inner.y0),
    )
    return inner, l_shape
