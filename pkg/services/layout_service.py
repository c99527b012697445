# bounded_treemaps/services/layout_service.py
"""
จุดเข้าเดียวสำหรับเลือกอัลกอริทึมจัดวาง (ใช้ร่วมกันโดย CLI, routes และ bench)
"""
import logging

from models.errors import InputError
from models.instances import SingleLevelInstance
from models.layout import Layout
from models.tree import WeightedTree
from services import convex_layout_service, ortho_layout_service, single_level_service

logger = logging.getLogger(__name__)

ALGORITHMS = ("convex", "ortho", "single")


def check_algorithm(algorithm):
    """
    Raises:
        InputError: ถ้าไม่รู้จักชื่ออัลกอริทึม
    """
    if algorithm not in ALGORITHMS:
        raise InputError(
            f"ไม่รู้จักอัลกอริทึม '{algorithm}' (ใช้ได้: {', '.join(ALGORITHMS)})",
            algorithm=algorithm,
        )
    return algorithm


def compute_layout(tree: WeightedTree, algorithm) -> Layout:
    """
    จัดวางต้นไม้ที่ normalize แล้วด้วยอัลกอริทึมที่เลือก

    Args:
        tree (WeightedTree): ต้นไม้ input
        algorithm (str): convex, ortho หรือ single

    Returns:
        Layout: ผลการจัดวาง
    """
    check_algorithm(algorithm)
    logger.debug("computing %s layout for %d nodes", algorithm, len(tree))
    if algorithm == "convex":
        return convex_layout_service.layout_convex(tree)
    if algorithm == "ortho":
        return ortho_layout_service.layout_ortho(tree)
    return single_level_service.layout_single_level(SingleLevelInstance.from_tree(tree))
