# bounded_treemaps/services/packing_service.py
"""
ตัวแก้ปัญหาจัดวางสี่เหลี่ยมจัตุรัสบนตารางจำนวนเต็มแบบค้นหาทุกกรณี (ขนาดเล็กเท่านั้น)
และการสร้าง treemap อัตราส่วน 1 จากผลการจัดวาง
"""
import logging
from dataclasses import dataclass

import numpy as np

from models.errors import TooLarge
from models.geometry import UNIT_SQUARE, Rect
from models.instances import SquarePackingInstance
from models.layout import Layout, Region
from services.single_level_service import reduce_square_packing

logger = logging.getLogger(__name__)

MAX_CONTAINER_SIDE = 6
MAX_SQUARES = 8


@dataclass(frozen=True)
class Placement:
    """ตำแหน่งมุมล่างซ้าย (col, row) บนตารางของสี่เหลี่ยมแต่ละรูป ตามลำดับใน input"""
    positions: tuple


class PackingService:
    """
    คลาสสำหรับค้นหาการจัดวางสี่เหลี่ยมจัตุรัส
    """

    def __init__(self, max_side=MAX_CONTAINER_SIDE, max_squares=MAX_SQUARES):
        self.max_side = max_side
        self.max_squares = max_squares

    def _check_size(self, sp):
        if sp.container_side > self.max_side or len(sp.square_sides) > self.max_squares:
            raise TooLarge(
                f"อินสแตนซ์ใหญ่เกินไป (กล่องด้าน ≤ {self.max_side}, สี่เหลี่ยม ≤ {self.max_squares} รูป)",
                container_side=sp.container_side, squares=len(sp.square_sides),
            )

    def find_packing(self, sp: SquarePackingInstance):
        """
        ค้นหาการวางสี่เหลี่ยมทุกรูปแบบไม่ซ้อนทับบนตารางจำนวนเต็ม

        เติมช่องว่างแรก (เรียงตามแถว) ด้วยสี่เหลี่ยมขนาดที่ยังเหลือ
        หรือปล่อยว่างได้ไม่เกินจำนวนช่องที่เหลือหลังวางครบ

        Returns:
            Placement | None: ตำแหน่งของสี่เหลี่ยม หรือ None ถ้าวางไม่ได้

        Raises:
            TooLarge: ถ้าอินสแตนซ์ใหญ่เกินขนาดที่ค้นหาได้
        """
        self._check_size(sp)
        n = sp.container_side
        grid = np.zeros((n, n), dtype=bool)
        remaining = {}
        for index, side in enumerate(sp.square_sides):
            remaining.setdefault(side, []).append(index)
        positions = [None] * len(sp.square_sides)

        def search(free_budget):
            empty = np.argwhere(~grid)
            if len(empty) == 0:
                return True
            row, col = (int(v) for v in empty[0])
            for side in sorted(remaining, reverse=True):
                if not remaining[side]:
                    continue
                if row + side > n or col + side > n or grid[row:row + side, col:col + side].any():
                    continue
                index = remaining[side].pop()
                grid[row:row + side, col:col + side] = True
                positions[index] = (col, row)
                if search(free_budget):
                    return True
                grid[row:row + side, col:col + side] = False
                positions[index] = None
                remaining[side].append(index)
            if free_budget > 0:
                grid[row, col] = True
                if search(free_budget - 1):
                    grid[row, col] = False
                    return True
                grid[row, col] = False
            return False

        found = search(sp.free_cells)
        logger.debug("square packing side=%d squares=%s: %s", n, sp.square_sides,
                     "found" if found else "infeasible")
        return Placement(tuple(positions)) if found else None

    def packing_oracle(self, sp: SquarePackingInstance) -> bool:
        """True ถ้าวางสี่เหลี่ยมทั้งหมดลงกล่องได้"""
        return self.find_packing(sp) is not None

    def packing_layout(self, sp: SquarePackingInstance, placement: Placement = None) -> Layout:
        """
        สร้าง treemap ของอินสแตนซ์ที่ลดรูปแล้ว โดยทุกพื้นที่เป็นสี่เหลี่ยมจัตุรัส:
        สี่เหลี่ยมตามตำแหน่งที่พบ และช่องหน่วยในช่องที่ยังว่าง (เรียงตามแถว)

        Returns:
            Layout | None: None ถ้าวางไม่ได้
        """
        placement = placement or self.find_packing(sp)
        if placement is None:
            return None
        inst = reduce_square_packing(sp)
        n = sp.container_side
        grid = np.zeros((n, n), dtype=bool)
        regions = {inst.root_id: Region.build(inst.root_id, UNIT_SQUARE.corners(), 1.0, 0,
                                              False)}
        cells = []
        for index, ((col, row), side) in enumerate(zip(placement.positions, sp.square_sides)):
            grid[row:row + side, col:col + side] = True
            cells.append((index, Rect(col / n, row / n, (col + side) / n, (row + side) / n)))
        unit_index = len(sp.square_sides)
        for row, col in np.argwhere(~grid):
            cells.append((unit_index, Rect(col / n, row / n, (col + 1) / n, (row + 1) / n)))
            unit_index += 1
        for index, rect in cells:
            node_id = inst.ids[index]
            regions[node_id] = Region.build(node_id, rect.corners(), inst.weights[index], 1, True)
        return Layout("packing", regions, {"container_side": n})


# ---- convenience functions ----

_default_service = PackingService()


def find_packing(sp):
    return _default_service.find_packing(sp)


def packing_oracle(sp):
    return _default_service.packing_oracle(sp)


def packing_layout(sp, placement=None):
    return _default_service.packing_layout(sp, placement)
