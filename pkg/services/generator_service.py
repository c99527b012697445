# bounded_treemaps/services/generator_service.py
"""
สร้างต้นไม้ถ่วงน้ำหนักแบบสุ่มที่ทำซ้ำได้

ใช้ numpy.random.default_rng(seed) (PCG64) เพียงตัวเดียวต่อต้นไม้
ลำดับการสุ่มคงที่: โครงสร้างจากบนลงล่างแบบ preorder ก่อน แล้วจึงน้ำหนัก
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from models.errors import BadSpec
from models.tree import TreeNode, WeightedTree
from services import tree_service

logger = logging.getLogger(__name__)

DISTRIBUTIONS = ("loguniform", "oneHuge")
MIN_LOG_WEIGHT = math.log(1e-4)
# ส่วนแบ่งของลูกที่หนักที่สุดในโหมด oneHuge
HUGE_SHARE = (0.75, 0.97)


@dataclass(frozen=True)
class TreeSpec:
    """
    ข้อกำหนดของต้นไม้สุ่ม

    Args:
        max_depth (int): ความลึกสูงสุด (รากลึก 0)
        max_children (int): จำนวนลูกสูงสุดต่อโหนด
        leaf_count (int): จำนวนใบที่ต้องการ (ได้ตรงตามนี้เสมอ)
        weight_distribution (str): loguniform (ใบ ∈ [1e-4, 1]) หรือ oneHuge
    """
    max_depth: int = 6
    max_children: int = 6
    leaf_count: int = 50
    weight_distribution: str = "loguniform"

    @classmethod
    def parse(cls, spec) -> "TreeSpec":
        """
        สร้างจาก dict แบบ {maxDepth, maxChildren, leafCount, weightDistribution}

        Raises:
            BadSpec: ถ้าคีย์ไม่รู้จัก ชนิดผิด หรือข้อกำหนดเป็นไปไม่ได้
        """
        if isinstance(spec, cls):
            spec.check()
            return spec
        if spec is None:
            spec = {}
        if not isinstance(spec, dict):
            raise BadSpec("ข้อกำหนดของต้นไม้ต้องเป็น object")
        keys = {"maxDepth": "max_depth", "maxChildren": "max_children",
                "leafCount": "leaf_count", "weightDistribution": "weight_distribution"}
        unknown = sorted(set(spec) - set(keys))
        if unknown:
            raise BadSpec(f"ไม่รู้จักคีย์ {', '.join(unknown)}", keys=",".join(unknown))
        values = {}
        for key, attr in keys.items():
            if key not in spec:
                continue
            value = spec[key]
            if attr == "weight_distribution":
                values[attr] = value
            elif isinstance(value, bool) or not isinstance(value, int):
                raise BadSpec(f"{key} ต้องเป็นจำนวนเต็ม", key=key, value=value)
            else:
                values[attr] = value
        result = cls(**values)
        result.check()
        return result

    def check(self):
        if self.weight_distribution not in DISTRIBUTIONS:
            raise BadSpec(f"ไม่รู้จักการกระจายน้ำหนัก '{self.weight_distribution}'",
                          value=self.weight_distribution)
        if self.leaf_count < 1 or self.max_depth < 0:
            raise BadSpec("leafCount ต้อง ≥ 1 และ maxDepth ต้อง ≥ 0")
        if self.leaf_count > 1 and self.max_children < 2:
            raise BadSpec("maxChildren ต้อง ≥ 2 เมื่อมีใบมากกว่าหนึ่งใบ")
        if self.leaf_count > self.capacity(self.max_depth):
            raise BadSpec(
                f"ต้นไม้ลึก {self.max_depth} ที่มีลูกไม่เกิน {self.max_children} "
                f"มีใบได้ไม่เกิน {self.capacity(self.max_depth)} ใบ",
                leaf_count=self.leaf_count,
            )

    def capacity(self, levels):
        """จำนวนใบสูงสุดของต้นไม้ย่อยที่ลึกได้อีก levels ระดับ"""
        if self.max_children < 2:
            return 1
        # จำกัดไว้ที่ leaf_count เพื่อไม่ให้เลขชี้กำลังใหญ่เกินจำเป็น
        cap = 1
        for _ in range(levels):
            cap *= self.max_children
            if cap >= self.leaf_count:
                return cap
        return cap


class GeneratorService:
    """
    คลาสสำหรับสร้างต้นไม้สุ่ม
    """

    def generate_random_tree(self, seed, spec=None) -> WeightedTree:
        """
        สร้างต้นไม้สุ่มตาม spec ด้วย seed ที่กำหนด

        โครงสร้าง: โหนดที่ได้รับใบ m > 1 ใบจะมีลูก k ตัว (สุ่มจากช่วงที่ทำให้
        ทุกลูกยังอยู่ในความลึกที่กำหนด) และแจกใบให้ลูกแบบสุ่มโดยทุกลูกได้อย่างน้อยหนึ่งใบ

        Args:
            seed (int): seed ของตัวสุ่ม
            spec (dict | TreeSpec | None): ข้อกำหนด

        Returns:
            WeightedTree: ต้นไม้ที่ normalize แล้ว (id เป็น path จาก 'root')

        Raises:
            BadSpec: ถ้าข้อกำหนดไม่ถูกต้อง
        """
        spec = TreeSpec.parse(spec)
        rng = np.random.default_rng(seed)

        shape = {}
        order = []
        stack = [("root", 0, spec.leaf_count)]
        while stack:
            node_id, depth, leaves = stack.pop()
            order.append(node_id)
            if leaves == 1:
                shape[node_id] = ()
                continue
            counts = self._split_leaves(rng, spec, leaves, spec.max_depth - depth - 1)
            children = tuple(f"{node_id}/{i + 1}" for i in range(len(counts)))
            shape[node_id] = children
            stack.extend(reversed([(c, depth + 1, n) for c, n in zip(children, counts)]))

        weights = self._weights(rng, spec, shape, order)
        nodes = {
            node_id: TreeNode(node_id, node_id.rsplit("/", 1)[-1],
                              weights.get(node_id), shape[node_id])
            for node_id in order
        }
        tree = tree_service.validate_and_normalize(WeightedTree(nodes, "root"))
        logger.debug("generated tree seed=%s: %d leaves, depth %d", seed, spec.leaf_count,
                     tree.depth())
        return tree

    @staticmethod
    def _split_leaves(rng, spec, leaves, child_levels):
        cap = spec.capacity(child_levels)
        lo = max(2, -(-leaves // cap))
        hi = min(spec.max_children, leaves)
        k = int(rng.integers(lo, hi + 1))
        counts = np.ones(k, dtype=np.int64)
        extra = leaves - k
        while extra > 0:
            open_slots = np.flatnonzero(counts < cap)
            picks = rng.choice(open_slots, size=min(extra, len(open_slots)), replace=True)
            for index in picks:
                if counts[index] < cap and extra > 0:
                    counts[index] += 1
                    extra -= 1
        return [int(c) for c in counts]

    @staticmethod
    def _weights(rng, spec, shape, order):
        leaves = [n for n in order if not shape[n]]
        if spec.weight_distribution == "loguniform":
            draws = np.exp(rng.uniform(MIN_LOG_WEIGHT, 0.0, size=len(leaves)))
            return {node_id: float(w) for node_id, w in zip(leaves, draws)}

        # oneHuge: ลูกหนึ่งตัวของทุกโหนดภายในได้ส่วนแบ่ง 0.75–0.97 ของพ่อ
        mass = {"root": 1.0}
        for node_id in order:
            children = shape[node_id]
            if not children:
                continue
            huge = int(rng.integers(len(children)))
            share = rng.uniform(*HUGE_SHARE)
            rest = np.exp(rng.uniform(MIN_LOG_WEIGHT, 0.0, size=len(children) - 1))
            rest = rest / rest.sum() * (1.0 - share)
            others = iter(rest)
            for index, child in enumerate(children):
                mass[child] = mass[node_id] * (share if index == huge else float(next(others)))
        return {node_id: mass[node_id] for node_id in leaves}


# ---- convenience functions ----

_default_service = GeneratorService()


def generate_random_tree(seed, spec=None):
    return _default_service.generate_random_tree(seed, spec)
