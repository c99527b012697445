# bounded_treemaps/utils/geometry.py
"""
ฟังก์ชันเรขาคณิตพื้นฐานที่อัลกอริทึมทั้งสามแบบและตัวตรวจสอบใช้ร่วมกัน
"""
from __future__ import annotations

import logging
import math

import numpy as np
from shapely.geometry import Polygon as ShapelyPolygon
from shapely.geometry.polygon import orient

from models.errors import DegeneratePolygon, NoIntersection, NotOrthoconvex
from models.geometry import (
    ConvexPolygon,
    Corner,
    DirectedLine,
    Isometry,
    OrthoPolygon,
    Point,
    Rect,
    ShapeClass,
    ShapeKind,
)

logger = logging.getLogger(__name__)

ANGLE_TOLERANCE = 1e-9
# จุดที่ห่างจากเส้นตัดไม่เกินค่านี้ถือว่าอยู่บนเส้น
SIDE_TOLERANCE = 1e-13
MERGE_DISTANCE = 1e-13
# รูปที่มีจุดยอดน้อยกว่านี้คำนวณด้วยลูปธรรมดา
VECTOR_MIN_VERTICES = 32


def vertices_of(shape):
    """
    ดึงจุดยอดของรูปร่างในรูปแบบ tuple ของ Point

    Args:
        shape: Rect, ConvexPolygon, OrthoPolygon หรือ sequence ของจุด

    Returns:
        tuple: จุดยอดเรียงตามลำดับเดิม
    """
    if isinstance(shape, Rect):
        return shape.corners()
    if isinstance(shape, (ConvexPolygon, OrthoPolygon)):
        return shape.vertices
    return tuple(Point(float(x), float(y)) for x, y in shape)


def signed_area(points):
    n = len(points)
    if n < 3:
        return 0.0
    if n >= VECTOR_MIN_VERTICES:
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        x, y = pts[:, 0], pts[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))
    total = 0.0
    px, py = points[-1][0], points[-1][1]
    for p in points:
        x, y = p[0], p[1]
        total += px * y - x * py
        px, py = x, y
    return 0.5 * total


def area(shape):
    """
    พื้นที่ของรูปหลายเหลี่ยม (สูตร shoelace)

    Raises:
        DegeneratePolygon: ถ้าพื้นที่ไม่เป็นบวกหรือพิกัดไม่เป็นจำนวนจำกัด
    """
    verts = vertices_of(shape)
    if len(verts) < 3 or not all(math.isfinite(p[0]) and math.isfinite(p[1]) for p in verts):
        raise DegeneratePolygon("รูปหลายเหลี่ยมต้องมีอย่างน้อย 3 จุดยอดที่มีพิกัดจำกัด")
    value = abs(signed_area(verts))
    if value <= 0.0:
        raise DegeneratePolygon("รูปหลายเหลี่ยมมีพื้นที่เป็นศูนย์")
    return value


def bbox(shape) -> Rect:
    verts = vertices_of(shape)
    xs = [p[0] for p in verts]
    ys = [p[1] for p in verts]
    return Rect(min(xs), min(ys), max(xs), max(ys))


def diameter_sq(shape):
    verts = vertices_of(shape)
    if len(verts) >= VECTOR_MIN_VERTICES:
        pts = np.asarray(verts, dtype=float)
        diff = pts[:, None, :] - pts[None, :, :]
        return float(np.max(np.einsum("ijk,ijk->ij", diff, diff)))
    best = 0.0
    for i, (ax, ay) in enumerate(verts):
        for bx, by in verts[i + 1:]:
            dx, dy = ax - bx, ay - by
            best = max(best, dx * dx + dy * dy)
    return best


def measure(shape):
    """
    คำนวณพื้นที่ กล่องล้อมรอบ และอัตราส่วนทั้งสองแบบในครั้งเดียว

    Returns:
        tuple: (area, bbox, asp_ortho, asp_convex)
    """
    verts = vertices_of(shape)
    value = area(verts)
    box = bbox(verts)
    side = box.longer_side
    return value, box, side * side / value, diameter_sq(verts) / value


def asp_ortho(shape):
    """
    อัตราส่วนแบบสี่เหลี่ยมจัตุรัสล้อมรอบ: พื้นที่จัตุรัสล้อมรอบ / area

    สำหรับ Rect ค่านี้เท่ากับ max(w/h, h/w)
    """
    if isinstance(shape, Rect):
        if shape.area <= 0.0:
            raise DegeneratePolygon("สี่เหลี่ยมมีพื้นที่เป็นศูนย์")
        side = shape.longer_side
        return side * side / shape.area
    side = bbox(shape).longer_side
    return side * side / area(shape)


def asp_convex(shape):
    """อัตราส่วนแบบเส้นผ่านศูนย์กลาง: diam² / area"""
    return diameter_sq(shape) / area(shape)


def aspect_bracket(shape):
    """
    คืนค่า (พื้นที่จัตุรัสล้อมรอบ, diam², 2 เท่าของพื้นที่จัตุรัส) ซึ่งต้องเรียงจากน้อยไปมากเสมอ
    """
    side = bbox(shape).longer_side
    square = side * side
    return square, diameter_sq(shape), 2.0 * square


# ---- ทิศทางของขอบ ----

def edge_angle(a, b):
    """มุมของขอบ a→b แบบไม่มีทิศ อยู่ในช่วง [0, π)"""
    angle = math.atan2(b[1] - a[1], b[0] - a[0]) % math.pi
    return 0.0 if angle >= math.pi - 1e-15 else angle


def angle_distance(a, b):
    """ระยะเชิงมุมระหว่างสองทิศทาง (mod π)"""
    diff = abs(a - b) % math.pi
    return min(diff, math.pi - diff)


def is_axis_parallel(angle, tol=ANGLE_TOLERANCE):
    return angle_distance(angle, 0.0) <= tol or angle_distance(angle, math.pi / 2) <= tol


def is_horizontal(angle, tol=ANGLE_TOLERANCE):
    return angle_distance(angle, 0.0) <= tol


def is_vertical(angle, tol=ANGLE_TOLERANCE):
    return angle_distance(angle, math.pi / 2) <= tol


def edge_angles(shape):
    verts = vertices_of(shape)
    n = len(verts)
    return [edge_angle(verts[i], verts[(i + 1) % n]) for i in range(n)]


def non_axis_edge_count(shape, tol=ANGLE_TOLERANCE):
    """จำนวนขอบที่ไม่ขนานแกน"""
    return sum(1 for a in edge_angles(shape) if not is_axis_parallel(a, tol))


def is_rectilinear(shape, tol=ANGLE_TOLERANCE):
    return all(is_axis_parallel(a, tol) for a in edge_angles(shape))


# ---- การทำให้จุดยอดเป็นรูปแบบมาตรฐาน ----

def normalize_vertices(points, merge_distance=MERGE_DISTANCE, angle_tol=ANGLE_TOLERANCE):
    """
    ตัดจุดซ้ำและจุดที่อยู่บนเส้นตรงเดียวกัน แล้วเรียงจุดทวนเข็มนาฬิกา

    Args:
        points: ลำดับของจุด
        merge_distance (float): ระยะที่ถือว่าสองจุดเป็นจุดเดียวกัน
        angle_tol (float): มุมเลี้ยวต่ำสุด (เรเดียน) ที่ยังนับเป็นจุดยอด

    Returns:
        list[Point]: จุดยอดที่ทำความสะอาดแล้ว
    """
    pts = [Point(float(x), float(y)) for x, y in points]
    cleaned = []
    for p in pts:
        if cleaned and math.dist(cleaned[-1], p) <= merge_distance:
            continue
        cleaned.append(p)
    while len(cleaned) > 1 and math.dist(cleaned[0], cleaned[-1]) <= merge_distance:
        cleaned.pop()
    if signed_area(cleaned) < 0:
        cleaned.reverse()

    changed = True
    while changed and len(cleaned) >= 3:
        changed = False
        n = len(cleaned)
        for i in range(n):
            a, b, c = cleaned[i - 1], cleaned[i], cleaned[(i + 1) % n]
            ux, uy = b[0] - a[0], b[1] - a[1]
            vx, vy = c[0] - b[0], c[1] - b[1]
            turn = math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)
            if abs(turn) < angle_tol:
                del cleaned[i]
                changed = True
                break
    return cleaned


def is_convex_chain(points, tol=1e-15):
    n = len(points)
    for i in range(n):
        a, b, c = points[i - 1], points[i], points[(i + 1) % n]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if cross < -tol:
            return False
    return True


def make_convex(points) -> ConvexPolygon:
    """
    สร้าง ConvexPolygon จากจุด พร้อมตรวจความถูกต้อง

    Raises:
        DegeneratePolygon: ถ้าพื้นที่เป็นศูนย์หรือรูปไม่นูน
    """
    verts = normalize_vertices(points)
    if len(verts) < 3:
        raise DegeneratePolygon("รูปหลายเหลี่ยมนูนต้องมีอย่างน้อย 3 จุดยอด")
    area(verts)
    if not is_convex_chain(verts):
        raise DegeneratePolygon("รูปหลายเหลี่ยมไม่นูน")
    return ConvexPolygon(tuple(verts))


def make_ortho(points) -> OrthoPolygon:
    """
    สร้าง OrthoPolygon จากจุด พร้อมตรวจว่าขอบทุกเส้นขนานแกน

    Raises:
        DegeneratePolygon: ถ้าพื้นที่เป็นศูนย์หรือมีขอบเอียง
    """
    verts = normalize_vertices(points)
    if len(verts) < 4:
        raise DegeneratePolygon("รูปหลายเหลี่ยมแนวแกนต้องมีอย่างน้อย 4 จุดยอด")
    area(verts)
    if not is_rectilinear(verts):
        raise DegeneratePolygon("รูปหลายเหลี่ยมมีขอบที่ไม่ขนานแกน")
    return OrthoPolygon(tuple(verts))


# ---- predicates ของรูปหลายเหลี่ยมแนวแกน ----

def reflex_count(shape):
    verts = vertices_of(shape)
    n = len(verts)
    count = 0
    for i in range(n):
        a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if cross < 0:
            count += 1
    return count


def _crossings(lo, hi, levels):
    # จำนวนขอบที่ตัดกับแต่ละระดับ (ระดับอยู่กึ่งกลางระหว่างพิกัดจุดยอด)
    return np.sum((lo[None, :] < levels[:, None]) & (levels[:, None] < hi[None, :]), axis=1)


def _axis_aligned_quad(verts, tol=1e-12):
    for i in range(4):
        a, b = verts[i], verts[(i + 1) % 4]
        if abs(a[0] - b[0]) > tol and abs(a[1] - b[1]) > tol:
            return False
    return True


def is_orthoconvex(shape):
    """
    ตรวจว่าเส้นตรงแนวนอนและแนวตั้งทุกเส้นตัดรูปเป็นช่วงเดียว

    ตรวจที่ระดับกึ่งกลางระหว่างพิกัดจุดยอดที่ติดกัน ซึ่งต้องตัดขอบพอดีสองเส้น
    """
    verts = vertices_of(shape)
    if len(verts) == 4 and _axis_aligned_quad(verts):
        return True
    pts = np.asarray(verts, dtype=float)
    nxt = np.roll(pts, -1, axis=0)
    vertical = np.isclose(pts[:, 0], nxt[:, 0], rtol=0.0, atol=1e-12)
    horizontal = np.isclose(pts[:, 1], nxt[:, 1], rtol=0.0, atol=1e-12)

    ys = np.unique(pts[:, 1])
    if len(ys) > 1:
        levels = (ys[:-1] + ys[1:]) / 2
        lo = np.minimum(pts[vertical, 1], nxt[vertical, 1])
        hi = np.maximum(pts[vertical, 1], nxt[vertical, 1])
        if np.any(_crossings(lo, hi, levels) != 2):
            return False
    xs = np.unique(pts[:, 0])
    if len(xs) > 1:
        levels = (xs[:-1] + xs[1:]) / 2
        lo = np.minimum(pts[horizontal, 0], nxt[horizontal, 0])
        hi = np.maximum(pts[horizontal, 0], nxt[horizontal, 0])
        if np.any(_crossings(lo, hi, levels) != 2):
            return False
    return True


def _monotone(values, tol=1e-12):
    steps = np.diff(np.asarray(values, dtype=float))
    return bool(np.all(steps <= tol) or np.all(steps >= -tol))


def is_staircase(shape, anchor: Corner):
    """
    ตรวจว่ารูปเป็นขั้นบันไดที่มีจุดยึด (anchor) ที่มุม anchor ของกล่องล้อมรอบ

    จุดยึด v ต้องเป็นจุดยอดของรูป และสายโซ่จากจุดถัดไปของ v
    วนไปจนถึงจุดก่อนหน้าของ v ต้องเป็นทางเดียวทั้งแกน x และแกน y
    """
    verts = vertices_of(shape)
    target = bbox(verts).corner(anchor)
    index = next(
        (i for i, p in enumerate(verts) if math.dist(p, target) <= 1e-12), None
    )
    if index is None:
        return False
    n = len(verts)
    chain = [verts[(index + k) % n] for k in range(1, n)]
    return _monotone([p.x for p in chain]) and _monotone([p.y for p in chain])


def classify_shape(shape) -> ShapeClass:
    """
    จำแนกรูปหลายเหลี่ยมแนวแกนที่ orthoconvex ตามจำนวนมุมหักเข้า

    Raises:
        NotOrthoconvex: ถ้ารูปไม่ orthoconvex
    """
    if not is_orthoconvex(shape):
        raise NotOrthoconvex("รูปหลายเหลี่ยมไม่เป็น orthoconvex")
    reflex = reflex_count(shape)
    if reflex == 0:
        return ShapeClass(ShapeKind.RECTANGLE)
    if reflex == 1:
        return ShapeClass(ShapeKind.L_SHAPE)
    if reflex == 2:
        return ShapeClass(ShapeKind.S_SHAPE)
    for corner in Corner:
        if is_staircase(shape, corner):
            return ShapeClass(ShapeKind.STAIRCASE, corner)
    return ShapeClass(ShapeKind.ORTHO_OTHER)


def classify_region(shape) -> ShapeClass:
    """จำแนกรูปใดๆ: แนวแกนใช้ classify_shape, ที่เหลือถือเป็น convex"""
    if not is_rectilinear(shape):
        return ShapeClass(ShapeKind.CONVEX)
    if len(vertices_of(shape)) == 4:
        return ShapeClass(ShapeKind.RECTANGLE)
    if not is_orthoconvex(shape):
        return ShapeClass(ShapeKind.ORTHO_OTHER)
    return classify_shape(shape)


# ---- การตัดรูปนูน ----

def _axis_snap(line: DirectedLine):
    """ถ้าเส้นขนานแกน คืน (ดัชนีแกน, ค่าพิกัด) ที่แน่นอน"""
    nx, ny = line.normal
    if ny == 0.0:
        return 0, line.offset / nx
    if nx == 0.0:
        return 1, line.offset / ny
    return None


def _split_points(points, line: DirectedLine):
    snap = _axis_snap(line)
    sides = [line.side(p[0], p[1]) for p in points]
    sides = [0.0 if abs(s) <= SIDE_TOLERANCE else s for s in sides]
    neg, pos = [], []
    n = len(points)
    for i in range(n):
        a, b = points[i], points[(i + 1) % n]
        sa, sb = sides[i], sides[(i + 1) % n]
        if sa == 0.0 and snap is not None:
            a = _snapped(a, snap)
        if sa <= 0.0:
            neg.append(a)
        if sa >= 0.0:
            pos.append(a)
        if sa * sb < 0.0:
            t = sa / (sa - sb)
            p = Point(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
            if snap is not None:
                p = _snapped(p, snap)
            neg.append(p)
            pos.append(p)
    return neg, pos


def _snapped(p, snap):
    axis, value = snap
    return Point(value, p[1]) if axis == 0 else Point(p[0], value)


def clip_convex(polygon: ConvexPolygon, line: DirectedLine):
    """
    ตัดรูปนูนด้วยเส้นตรงมีทิศ

    Args:
        polygon (ConvexPolygon): รูปที่ต้องการตัด
        line (DirectedLine): เส้นตัด

    Returns:
        tuple: (ชิ้นฝั่งซ้าย/ฝั่งลบ, ชิ้นฝั่งขวา/ฝั่งบวก)

    Raises:
        NoIntersection: ถ้าเส้นไม่ผ่านภายในรูป
    """
    neg, pos = _split_points(polygon.vertices, line)
    if abs(signed_area(neg)) <= 0.0 or abs(signed_area(pos)) <= 0.0:
        raise NoIntersection("เส้นตัดไม่ผ่านภายในรูปหลายเหลี่ยม", angle=line.angle, offset=line.offset)
    try:
        return make_convex(neg), make_convex(pos)
    except DegeneratePolygon as e:
        raise NoIntersection(f"การตัดให้ชิ้นส่วนเสื่อม: {e.message}") from e


def _negative_area(points, line):
    neg, _ = _split_points(points, line)
    return abs(signed_area(neg)) if len(neg) >= 3 else 0.0


def area_cut(polygon: ConvexPolygon, direction, fraction, tol=1e-10) -> DirectedLine:
    """
    หาเส้นตัดที่มีทิศ direction ซึ่งทำให้ชิ้นฝั่งลบมีพื้นที่ fraction ของทั้งหมด

    พื้นที่ฝั่งลบเป็นฟังก์ชันกำลังสองเป็นช่วงๆ ของ offset ระหว่างเงาของจุดยอด
    จึงหาช่วงที่ครอบค่าเป้าหมาย แล้วแก้สมการกำลังสองในช่วงนั้น
    ถ้าผลไม่แม่นพอจะ bisection แทน

    Args:
        polygon (ConvexPolygon): รูปนูน
        direction (float): มุมของเส้นตัด (เรเดียน)
        fraction (float): สัดส่วนพื้นที่ฝั่งลบ ใน (0, 1)

    Returns:
        DirectedLine: เส้นตัด
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction ต้องอยู่ใน (0, 1): {fraction}")
    points = polygon.vertices
    total = area(points)
    target = fraction * total
    reference = DirectedLine(direction, 0.0)
    nx, ny = reference.normal
    levels = sorted({nx * p[0] + ny * p[1] for p in points})

    def profile(c):
        return _negative_area(points, DirectedLine(direction, c))

    lo, hi = levels[0], levels[-1]
    for a, b in zip(levels, levels[1:]):
        if profile(b) >= target:
            lo, hi = a, b
            break

    offset = _solve_quadratic_piece(profile, lo, hi, target)
    if offset is None or abs(profile(offset) - target) > tol * total:
        logger.debug("area_cut: quadratic solve inaccurate, falling back to bisection")
        offset = _bisect(profile, lo, hi, target)
    return DirectedLine(direction, offset)


def _solve_quadratic_piece(profile, lo, hi, target):
    mid = 0.5 * (lo + hi)
    span = hi - lo
    if span <= 0.0:
        return lo
    ts = np.array([0.0, 0.5, 1.0])
    values = np.array([profile(lo), profile(mid), profile(hi)]) - target
    coeffs = np.polyfit(ts, values, 2)
    roots = np.roots(coeffs) if abs(coeffs[0]) > 1e-18 else np.roots(coeffs[1:])
    candidates = [
        float(r.real) for r in np.atleast_1d(roots)
        if abs(r.imag) <= 1e-12 and -1e-9 <= r.real <= 1.0 + 1e-9
    ]
    if not candidates:
        return None
    best = min(candidates, key=lambda t: abs(profile(lo + min(max(t, 0.0), 1.0) * span) - target))
    return lo + min(max(best, 0.0), 1.0) * span


def _bisect(profile, lo, hi, target, iterations=200):
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if profile(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---- isometry ของ container ----

def canonicalize(rect: Rect, marked: Corner) -> Isometry:
    """
    หา isometry ที่พา container ไปสู่รูปแบบมาตรฐาน
    (มุมที่ทำเครื่องหมายอยู่ล่างขวา และ width ≥ height)

    Args:
        rect (Rect): container ในพิกัดจริง
        marked (Corner): มุมที่ถูกทำเครื่องหมาย

    Returns:
        Isometry: มีทั้ง forward และ inverse
    """
    swap = rect.height > rect.width
    right, top = marked.is_right, marked.is_top
    if swap:
        right, top = top, right
    return Isometry(rect=rect, swap=swap, flip_u=not right, flip_v=top)


# ---- shapely ----

def to_shapely(shape) -> ShapelyPolygon:
    return ShapelyPolygon(vertices_of(shape))


def from_shapely(polygon: ShapelyPolygon):
    """คืนจุดยอดทวนเข็มนาฬิกาของขอบนอก (ไม่รวมจุดปิด)"""
    ring = orient(polygon, sign=1.0).exterior.coords[:-1]
    return normalize_vertices(ring)
