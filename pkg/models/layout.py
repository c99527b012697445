# bounded_treemaps/models/layout.py
"""
ผลลัพธ์ของการจัดวาง: พื้นที่ (Region) ของแต่ละโหนด และ Layout ทั้งต้นไม้
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from models.geometry import Point, ShapeClass
from utils import geometry as geo


@dataclass(frozen=True)
class Region:
    """
    พื้นที่ของโหนดหนึ่งในต้นไม้ input

    Args:
        node_id (str): รหัสโหนด (path)
        vertices (tuple[Point]): จุดยอดทวนเข็มนาฬิกา
        shape (ShapeClass): ชนิดของรูป
        area (float): พื้นที่จริงของรูป
        weight (float): น้ำหนักของโหนดหลัง normalize
        depth (int): ความลึกของโหนดในต้นไม้ input
        is_leaf (bool): เป็นใบหรือไม่
        asp_ortho (float): อัตราส่วนแบบสี่เหลี่ยมจัตุรัสล้อมรอบ
        asp_convex (float): อัตราส่วนแบบเส้นผ่านศูนย์กลาง
    """
    node_id: str
    vertices: tuple
    shape: ShapeClass
    area: float
    weight: float
    depth: int
    is_leaf: bool
    asp_ortho: float
    asp_convex: float

    @classmethod
    def build(cls, node_id, vertices, weight, depth, is_leaf, shape=None):
        """
        สร้าง Region และคำนวณพื้นที่ ชนิดรูป และอัตราส่วนทั้งสองแบบ
        """
        verts = tuple(Point(float(x), float(y)) for x, y in vertices)
        value, _, asp_ortho, asp_convex = geo.measure(verts)
        return cls(
            node_id=node_id,
            vertices=verts,
            shape=shape or geo.classify_region(verts),
            area=value,
            weight=weight,
            depth=depth,
            is_leaf=is_leaf,
            asp_ortho=asp_ortho,
            asp_convex=asp_convex,
        )

    def to_record(self):
        return {
            "node": self.node_id,
            "shape": str(self.shape),
            "area": self.area,
            "weight": self.weight,
            "depth": self.depth,
            "leaf": self.is_leaf,
            "asp_ortho": self.asp_ortho,
            "asp_convex": self.asp_convex,
            "vertices": [[p.x, p.y] for p in self.vertices],
        }


@dataclass(frozen=True)
class Layout:
    """
    การจัดวางของต้นไม้ทั้งต้น: node id → Region พร้อมสถิติของอัลกอริทึม
    """
    algorithm: str
    regions: Mapping[str, Region]
    stats: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "regions", MappingProxyType(dict(self.regions)))

    def __len__(self):
        return len(self.regions)

    def __contains__(self, node_id):
        return node_id in self.regions

    def region(self, node_id) -> Optional[Region]:
        return self.regions.get(node_id)

    def leaf_regions(self):
        return [r for r in self.regions.values() if r.is_leaf]

    def internal_regions(self):
        return [r for r in self.regions.values() if not r.is_leaf]

    def max_aspect(self, definition="ortho", leaves_only=False):
        """อัตราส่วนสูงสุดของทุกพื้นที่ (หรือเฉพาะใบ)"""
        pool = self.leaf_regions() if leaves_only else self.regions.values()
        key = "asp_convex" if definition == "convex" else "asp_ortho"
        return max((getattr(r, key) for r in pool), default=0.0)

    def shape_counts(self, leaves_only=True):
        counts = {}
        pool = self.leaf_regions() if leaves_only else self.regions.values()
        for region in pool:
            name = region.shape.kind.value
            counts[name] = counts.get(name, 0) + 1
        return dict(sorted(counts.items()))
