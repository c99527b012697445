# bounded_treemaps/models/geometry.py
"""
ชนิดข้อมูลเรขาคณิต: จุด สี่เหลี่ยม รูปหลายเหลี่ยม มุม และการแปลงแบบ isometry

ฟังก์ชันคำนวณ (พื้นที่ อัตราส่วน การตัด ฯลฯ) อยู่ใน utils/geometry.py
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional


class Point(NamedTuple):
    x: float
    y: float


class Corner(str, Enum):
    BOTTOM_LEFT = "bottomLeft"
    BOTTOM_RIGHT = "bottomRight"
    TOP_LEFT = "topLeft"
    TOP_RIGHT = "topRight"

    @property
    def is_right(self):
        return self in (Corner.BOTTOM_RIGHT, Corner.TOP_RIGHT)

    @property
    def is_top(self):
        return self in (Corner.TOP_LEFT, Corner.TOP_RIGHT)

    @classmethod
    def from_flags(cls, right, top):
        if top:
            return cls.TOP_RIGHT if right else cls.TOP_LEFT
        return cls.BOTTOM_RIGHT if right else cls.BOTTOM_LEFT

    def opposite(self):
        return Corner.from_flags(not self.is_right, not self.is_top)


@dataclass(frozen=True)
class Rect:
    """
    สี่เหลี่ยมแนวแกน กำหนดด้วยมุมล่างซ้าย (x0, y0) และมุมบนขวา (x1, y1)
    """
    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def width(self):
        return self.x1 - self.x0

    @property
    def height(self):
        return self.y1 - self.y0

    @property
    def area(self):
        return self.width * self.height

    @property
    def longer_side(self):
        return max(self.width, self.height)

    def corner(self, corner: Corner) -> Point:
        return Point(self.x1 if corner.is_right else self.x0,
                     self.y1 if corner.is_top else self.y0)

    def corners(self):
        """มุมทั้งสี่ เรียงทวนเข็มนาฬิกาเริ่มจากล่างซ้าย"""
        return (Point(self.x0, self.y0), Point(self.x1, self.y0),
                Point(self.x1, self.y1), Point(self.x0, self.y1))

    def to_polygon(self) -> "OrthoPolygon":
        return OrthoPolygon(self.corners())


UNIT_SQUARE = Rect(0.0, 0.0, 1.0, 1.0)


@dataclass(frozen=True)
class ConvexPolygon:
    """รูปหลายเหลี่ยมนูน จุดยอดเรียงทวนเข็มนาฬิกา"""
    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]


@dataclass(frozen=True)
class OrthoPolygon:
    """รูปหลายเหลี่ยมที่ขอบทุกเส้นขนานแกน จุดยอดเรียงทวนเข็มนาฬิกา"""
    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]


class ShapeKind(str, Enum):
    RECTANGLE = "rectangle"
    L_SHAPE = "lShape"
    S_SHAPE = "sShape"
    STAIRCASE = "staircase"
    ORTHO_OTHER = "orthoOther"
    CONVEX = "convex"


@dataclass(frozen=True)
class ShapeClass:
    kind: ShapeKind
    anchor: Optional[Corner] = None

    def __str__(self):
        if self.kind is ShapeKind.STAIRCASE:
            return f"staircase({self.anchor.value})"
        return self.kind.value

    @classmethod
    def parse(cls, text):
        if text.startswith("staircase(") and text.endswith(")"):
            return cls(ShapeKind.STAIRCASE, Corner(text[len("staircase("):-1]))
        return cls(ShapeKind(text))


# เส้นแนวแกนใช้ normal แบบตรงตัว ไม่ผ่าน sin/cos
_EXACT_NORMALS = {
    0.0: (0.0, -1.0),
    math.pi / 2: (1.0, 0.0),
    math.pi: (0.0, 1.0),
    3 * math.pi / 2: (-1.0, 0.0),
}


@dataclass(frozen=True)
class DirectedLine:
    """
    เส้นตรงมีทิศ ทิศทาง (cos θ, sin θ)

    ฝั่งลบคือจุดที่ sin θ·x − cos θ·y < offset (ด้านซ้ายเมื่อมองตามทิศของเส้น)
    """
    angle: float
    offset: float

    @property
    def normal(self):
        a = self.angle % (2 * math.pi)
        if a in _EXACT_NORMALS:
            return _EXACT_NORMALS[a]
        return (math.sin(a), -math.cos(a))

    def side(self, x, y):
        nx, ny = self.normal
        return nx * x + ny * y - self.offset

    @property
    def axis(self):
        """คืน 'x' ถ้าเส้นตั้งฉากแกน x (เส้นดิ่ง), 'y' ถ้าเป็นเส้นนอน, None ถ้าเอียง"""
        a = self.angle % math.pi
        if a == 0.0:
            return "y"
        if a == math.pi / 2:
            return "x"
        return None

    @classmethod
    def vertical(cls, x):
        """เส้นดิ่ง x = const ฝั่งลบคือด้าน x < const"""
        return cls(math.pi / 2, x)

    @classmethod
    def horizontal(cls, y):
        """เส้นนอน y = const (ทิศ π) ฝั่งลบคือด้าน y < const"""
        return cls(math.pi, y)


@dataclass(frozen=True)
class Isometry:
    """
    การสะท้อน/สลับแกนที่พาสี่เหลี่ยม container ไปสู่รูปแบบมาตรฐาน
    (มุมที่ถูกทำเครื่องหมายอยู่ล่างขวา และ width ≥ height)

    forward: พิกัดจริง → พิกัดมาตรฐาน (u, v) ใน [0, W] × [0, H]
    inverse: พิกัดมาตรฐาน → พิกัดจริง
    """
    rect: Rect
    swap: bool
    flip_u: bool
    flip_v: bool

    @property
    def width(self):
        return self.rect.height if self.swap else self.rect.width

    @property
    def height(self):
        return self.rect.width if self.swap else self.rect.height

    @property
    def canonical_rect(self) -> Rect:
        return Rect(0.0, 0.0, self.width, self.height)

    def forward(self, point) -> Point:
        px, py = point[0] - self.rect.x0, point[1] - self.rect.y0
        p, q = (py, px) if self.swap else (px, py)
        u = self.width - p if self.flip_u else p
        v = self.height - q if self.flip_v else q
        return Point(u, v)

    def inverse(self, point) -> Point:
        u, v = point
        if self.swap:
            # u อยู่บนแกน y จริง, v อยู่บนแกน x จริง
            x = _to_world(v, self.height, self.flip_v, self.rect.x0, self.rect.x1)
            y = _to_world(u, self.width, self.flip_u, self.rect.y0, self.rect.y1)
        else:
            x = _to_world(u, self.width, self.flip_u, self.rect.x0, self.rect.x1)
            y = _to_world(v, self.height, self.flip_v, self.rect.y0, self.rect.y1)
        return Point(x, y)

    def rect_to_world(self, rect: Rect) -> Rect:
        a = self.inverse((rect.x0, rect.y0))
        b = self.inverse((rect.x1, rect.y1))
        return Rect(min(a.x, b.x), min(a.y, b.y), max(a.x, b.x), max(a.y, b.y))

    def corner_to_world(self, corner: Corner) -> Corner:
        right = corner.is_right != self.flip_u
        top = corner.is_top != self.flip_v
        if self.swap:
            right, top = top, right
        return Corner.from_flags(right, top)


def _to_world(c, extent, flip, lo, hi):
    # ขอบของ container ต้องได้ค่าเดิมทุกบิต เพื่อให้ชิ้นส่วนข้างเคียงต่อกันสนิท
    if c == 0:
        return hi if flip else lo
    if c == extent:
        return lo if flip else hi
    return hi - c if flip else lo + c
