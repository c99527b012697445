# bounded_treemaps/models/tree.py
"""
โครงสร้างข้อมูลของต้นไม้ถ่วงน้ำหนัก (input) และต้นไม้ทวิภาค (binary) ที่ได้จากการแปลง
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Iterator, Mapping, Optional

from models.errors import MalformedTree


@dataclass(frozen=True)
class TreeNode:
    """
    โหนดหนึ่งของต้นไม้ input

    weight เป็น None ได้สำหรับโหนดภายในที่ไม่ได้ระบุน้ำหนักในไฟล์
    """
    id: str
    label: str
    weight: Optional[float]
    children: tuple = ()

    @property
    def is_leaf(self):
        return not self.children


@dataclass(frozen=True)
class WeightedTree:
    """
    ต้นไม้ถ่วงน้ำหนักแบบ immutable

    Args:
        nodes (Mapping[str, TreeNode]): โหนดทั้งหมดตาม id
        root (str): id ของราก
    """
    nodes: Mapping[str, TreeNode]
    root: str

    def __post_init__(self):
        object.__setattr__(self, "nodes", MappingProxyType(dict(self.nodes)))
        self._check_structure()

    def _check_structure(self):
        if self.root not in self.nodes:
            raise MalformedTree(f"ไม่พบราก '{self.root}'", root=self.root)
        parents = {}
        for node in self.nodes.values():
            for child in node.children:
                if child not in self.nodes:
                    raise MalformedTree(
                        f"โหนด '{node.id}' อ้างถึงลูก '{child}' ที่ไม่มีอยู่", node_id=node.id
                    )
                if child in parents:
                    raise MalformedTree(
                        f"โหนด '{child}' มีพ่อมากกว่าหนึ่ง ('{parents[child]}', '{node.id}')",
                        node_id=child,
                    )
                parents[child] = node.id
        if self.root in parents:
            raise MalformedTree("รากต้องไม่มีพ่อ (พบวงจร)", root=self.root)
        # ทุกโหนดต้องเดินถึงได้จากราก
        seen = set()
        stack = [self.root]
        while stack:
            current = stack.pop()
            if current in seen:
                raise MalformedTree(f"พบวงจรที่โหนด '{current}'", node_id=current)
            seen.add(current)
            stack.extend(self.nodes[current].children)
        if len(seen) != len(self.nodes):
            orphans = sorted(set(self.nodes) - seen)
            raise MalformedTree(
                f"มีโหนดที่ไม่เชื่อมกับราก: {', '.join(orphans[:5])}", node_id=orphans[0]
            )

    def node(self, node_id) -> TreeNode:
        return self.nodes[node_id]

    def children(self, node_id) -> tuple:
        return self.nodes[node_id].children

    def weight(self, node_id) -> float:
        return self.nodes[node_id].weight

    def is_leaf(self, node_id) -> bool:
        return self.nodes[node_id].is_leaf

    @cached_property
    def parents(self) -> Mapping[str, str]:
        return MappingProxyType(
            {child: node.id for node in self.nodes.values() for child in node.children}
        )

    @cached_property
    def depths(self) -> Mapping[str, int]:
        result = {self.root: 0}
        for node_id in self.preorder():
            for child in self.nodes[node_id].children:
                result[child] = result[node_id] + 1
        return MappingProxyType(result)

    def node_depth(self, node_id) -> int:
        return self.depths[node_id]

    def depth(self) -> int:
        """ความลึกของต้นไม้ (รากมีความลึก 0)"""
        return max(self.depths.values())

    def preorder(self, start=None) -> Iterator[str]:
        stack = [start or self.root]
        while stack:
            node_id = stack.pop()
            yield node_id
            stack.extend(reversed(self.nodes[node_id].children))

    def leaves(self, start=None) -> list:
        return [n for n in self.preorder(start) if self.nodes[n].is_leaf]

    def internal_nodes(self) -> list:
        return [n for n in self.preorder() if not self.nodes[n].is_leaf]

    def __len__(self):
        return len(self.nodes)


class NodeKind(str, Enum):
    ORIGINAL = "original"
    AUXILIARY = "auxiliary"


@dataclass(frozen=True)
class BinaryNode:
    """
    โหนดของต้นไม้ทวิภาคแบบเข้ม (0 หรือ 2 ลูก)

    Args:
        id (str): รหัสโหนด (โหนดเสริมใช้รูปแบบ '<parent>#aux<n>')
        weight (float): น้ำหนัก
        d (int): ป้ายความลึก (ใช้กับอัลกอริทึมแบบ convex เท่านั้น)
        origin (str | None): id ของโหนด input ที่โหนดนี้แทน
        left, right (BinaryNode | None): ลูกซ้ายและขวา
        kind (NodeKind): original หรือ auxiliary
        aliases (tuple): id ของโหนด input ที่มีลูกเดียวซึ่งถูกยุบรวมเข้ากับโหนดนี้
    """
    id: str
    weight: float
    d: int = 0
    origin: Optional[str] = None
    left: Optional["BinaryNode"] = None
    right: Optional["BinaryNode"] = None
    kind: NodeKind = NodeKind.ORIGINAL
    aliases: tuple = ()

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise MalformedTree(f"โหนดทวิภาค '{self.id}' ต้องมีลูก 0 หรือ 2 โหนด", node_id=self.id)

    @property
    def is_leaf(self):
        return self.left is None

    @property
    def children(self):
        return () if self.left is None else (self.left, self.right)

    @property
    def input_ids(self):
        """id ของโหนด input ทั้งหมดที่ใช้พื้นที่เดียวกับโหนดนี้"""
        return self.aliases + ((self.origin,) if self.origin is not None else ())

    def child(self, index) -> "BinaryNode":
        return self.left if index == 0 else self.right

    def at(self, path) -> "BinaryNode":
        node = self
        for step in path:
            node = node.child(step)
        return node

    def with_child(self, index, new_child) -> "BinaryNode":
        """คืนโหนดใหม่ที่แทนลูกตำแหน่ง index และคำนวณน้ำหนักใหม่จากผลรวมของลูก"""
        left, right = (new_child, self.right) if index == 0 else (self.left, new_child)
        return replace(self, left=left, right=right, weight=left.weight + right.weight)

    @cached_property
    def leaf_origins(self) -> frozenset:
        if self.is_leaf:
            return frozenset([self.origin])
        return self.left.leaf_origins | self.right.leaf_origins

    def iter_nodes(self) -> Iterator["BinaryNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            if not node.is_leaf:
                stack.append(node.right)
                stack.append(node.left)

    def leaf_count(self) -> int:
        return sum(1 for node in self.iter_nodes() if node.is_leaf)


class RelCategory(str, Enum):
    TINY = "tiny"
    SMALL = "small"
    LARGE = "large"
    HUGE = "huge"

    @property
    def drawable(self):
        """small และ large วาดเป็นสี่เหลี่ยมแยกได้โดยตรง"""
        return self in (RelCategory.SMALL, RelCategory.LARGE)


# ขอบเขตของหมวดน้ำหนักสัมพัทธ์
TINY_BOUND = 1 / 8
SMALL_BOUND = 1 / 4
HUGE_BOUND = 7 / 8

