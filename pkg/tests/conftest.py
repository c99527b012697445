# bounded_treemaps/tests/conftest.py
import os
import sys

import pytest

os.environ.setdefault("TREEMAP_ENV", "testing")
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from trees import leaf, node  # noqa: E402
from utils.file_utils import tree_from_dict  # noqa: E402


@pytest.fixture
def make_tree():
    return tree_from_dict


@pytest.fixture
def two_halves():
    return tree_from_dict(node("root", leaf("a", 0.5), leaf("b", 0.5)))


@pytest.fixture
def huge_leaf_tree():
    return tree_from_dict(node("root", leaf("a", 0.95), leaf("b", 0.05)))


@pytest.fixture
def three_leaves():
    return tree_from_dict(node("root", leaf("a", 0.5), leaf("b", 0.3), leaf("c", 0.2)))


@pytest.fixture
def nested_tree():
    return tree_from_dict(node(
        "root",
        node("x", leaf("p", 3), leaf("q", 1), node("r", leaf("s", 0.5), leaf("t", 0.25))),
        leaf("y", 2),
        node("z", leaf("u", 0.01), leaf("v", 0.02), leaf("w", 6)),
    ))


@pytest.fixture
def case_d_tree():
    """ทุกใบ tiny/small ใต้สายโซ่ huge (ใบ Y1 ใช้เป็นโหนดที่ถูกทำเครื่องหมาย)"""
    return tree_from_dict(node(
        "root",
        node(
            "X1",
            node("X2", node("X4", leaf("a", 0.15), leaf("b", 0.15)), leaf("X5", 0.2)),
            node("X3", leaf("c", 0.225), leaf("d", 0.225)),
        ),
        leaf("Y1", 0.05),
    ))
