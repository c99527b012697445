# bounded_treemaps/models/instances.py
"""
อินสแตนซ์ของปัญหาระดับเดียว (single-level) และปัญหาจัดวางสี่เหลี่ยมจัตุรัส (square packing)
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from models.errors import DomainError, EmptyInstance, Overfull
from models.tree import TreeNode, WeightedTree

ROOT_ID = "root"


@dataclass(frozen=True)
class SingleLevelInstance:
    """
    น้ำหนักของลูกทั้งหมดใต้รากเดียว (ผลรวมเท่ากับ 1)

    Args:
        weights (tuple[float]): น้ำหนักเป็นบวก
        ids (tuple[str] | None): id ของใบแต่ละใบ (ค่าเริ่มต้น root/1 … root/n)
        root_id (str): id ของราก
    """
    weights: tuple
    ids: Optional[tuple] = None
    root_id: str = ROOT_ID

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if not weights:
            raise EmptyInstance("อินสแตนซ์ต้องมีน้ำหนักอย่างน้อยหนึ่งค่า", count=0)
        if any(not math.isfinite(w) or w <= 0 for w in weights):
            raise DomainError("น้ำหนักทุกค่าต้องเป็นบวก")
        total = math.fsum(weights)
        if not math.isclose(total, 1.0, rel_tol=1e-9):
            weights = tuple(w / total for w in weights)
        object.__setattr__(self, "weights", weights)
        if self.ids is None:
            object.__setattr__(
                self, "ids", tuple(f"{self.root_id}/{i + 1}" for i in range(len(weights)))
            )
        elif len(self.ids) != len(weights):
            raise DomainError("จำนวน id ไม่เท่ากับจำนวนน้ำหนัก")

    def __len__(self):
        return len(self.weights)

    @classmethod
    def from_tree(cls, tree: WeightedTree) -> "SingleLevelInstance":
        """
        Raises:
            DomainError: ถ้าต้นไม้ลึกเกินหนึ่งระดับ
        """
        if tree.depth() > 1:
            raise DomainError(
                f"การจัดวางระดับเดียวรองรับต้นไม้ลึกไม่เกิน 1 (ได้ {tree.depth()})",
                depth=tree.depth(),
            )
        if tree.is_leaf(tree.root):
            return cls((1.0,), (tree.root,), tree.root)
        children = tree.children(tree.root)
        return cls(tuple(tree.weight(c) for c in children), tuple(children), tree.root)

    def to_tree(self) -> WeightedTree:
        if len(self.weights) == 1 and self.ids == (self.root_id,):
            return WeightedTree({self.root_id: TreeNode(self.root_id, self.root_id, 1.0)},
                                self.root_id)
        nodes = {
            node_id: TreeNode(node_id, node_id.rsplit("/", 1)[-1], w)
            for node_id, w in zip(self.ids, self.weights)
        }
        nodes[self.root_id] = TreeNode(self.root_id, self.root_id, 1.0, tuple(self.ids))
        return WeightedTree(nodes, self.root_id)


@dataclass(frozen=True)
class SquarePackingInstance:
    """
    สี่เหลี่ยมจัตุรัสขนาดจำนวนเต็มที่ต้องวางลงในกล่องจัตุรัสด้าน container_side

    Raises:
        Overfull: ถ้าสี่เหลี่ยมใหญ่กว่ากล่องหรือพื้นที่รวมเกินกล่อง
    """
    container_side: int
    square_sides: tuple

    def __post_init__(self):
        sides = tuple(int(s) for s in self.square_sides)
        object.__setattr__(self, "square_sides", sides)
        if self.container_side <= 0 or any(s <= 0 for s in sides):
            raise DomainError("ขนาดของกล่องและสี่เหลี่ยมต้องเป็นจำนวนเต็มบวก")
        if any(s > self.container_side for s in sides):
            raise Overfull(
                f"มีสี่เหลี่ยมที่ใหญ่กว่ากล่องด้าน {self.container_side}",
                container_side=self.container_side,
            )
        if sum(s * s for s in sides) > self.container_side ** 2:
            raise Overfull(
                f"พื้นที่รวม {sum(s * s for s in sides)} เกินพื้นที่กล่อง {self.container_side ** 2}",
                container_side=self.container_side,
            )

    @property
    def free_cells(self):
        return self.container_side ** 2 - sum(s * s for s in self.square_sides)
