# bounded_treemaps/tests/test_packing.py
from itertools import combinations_with_replacement

import numpy as np
import pytest

from models.errors import Overfull, TooLarge
from models.instances import SquarePackingInstance
from services import packing_service
from services.single_level_service import reduce_square_packing
from services.verification_service import verify


def assert_valid_placement(sp, placement):
    n = sp.container_side
    grid = np.zeros((n, n), dtype=int)
    for (col, row), side in zip(placement.positions, sp.square_sides):
        assert 0 <= col and col + side <= n
        assert 0 <= row and row + side <= n
        grid[row:row + side, col:col + side] += 1
    assert grid.max() <= 1


@pytest.mark.parametrize("side, squares, feasible", [
    (2, (1, 1), True),
    (3, (2, 2), False),
    (3, (2, 1, 1, 1, 1, 1), True),
    (4, (2, 2, 2, 2), True),
    (5, (3, 3), False),
    (5, (3, 2, 2, 2), True),
    (1, (), True),
])
def test_packing_oracle(side, squares, feasible):
    sp = SquarePackingInstance(side, squares)
    assert packing_service.packing_oracle(sp) is feasible
    placement = packing_service.find_packing(sp)
    if feasible:
        assert_valid_placement(sp, placement)
    else:
        assert placement is None


def test_oracle_rejects_large_instances():
    with pytest.raises(TooLarge):
        packing_service.find_packing(SquarePackingInstance(7, (1,)))
    with pytest.raises(TooLarge):
        packing_service.find_packing(SquarePackingInstance(6, (1,) * 9))


def test_overfull_instances_are_rejected_up_front():
    with pytest.raises(Overfull):
        SquarePackingInstance(3, (2, 2, 2))


def test_packing_layout_has_square_regions():
    sp = SquarePackingInstance(3, (2, 1, 1))
    layout = packing_service.packing_layout(sp)
    assert layout.algorithm == "packing"
    # สี่เหลี่ยม 3 รูป + ช่องว่าง 9 − 6 = 3 ช่อง
    assert len(layout.leaf_regions()) == 6
    for region in layout.leaf_regions():
        assert region.asp_ortho == pytest.approx(1.0)
    assert layout.region("root/1").area == pytest.approx(4 / 9)


def test_packing_layout_verifies_against_reduced_instance():
    sp = SquarePackingInstance(4, (2, 2, 1))
    layout = packing_service.packing_layout(sp)
    tree = reduce_square_packing(sp).to_tree()
    report = verify(tree, layout)
    assert report.passed, report.failures()


def test_packing_layout_of_infeasible_instance_is_none():
    assert packing_service.packing_layout(SquarePackingInstance(3, (2, 2))) is None


@pytest.mark.slow
@pytest.mark.parametrize("side", [1, 2, 3, 4])
def test_every_small_instance(side):
    for count in range(1, 6):
        for squares in combinations_with_replacement(range(1, side + 1), count):
            if sum(s * s for s in squares) > side * side:
                continue
            sp = SquarePackingInstance(side, squares)
            placement = packing_service.find_packing(sp)
            if placement is not None:
                assert_valid_placement(sp, placement)
                layout = packing_service.packing_layout(sp, placement)
                report = verify(reduce_square_packing(sp).to_tree(), layout)
                assert report.passed, (squares, report.failures())
                assert all(r.asp_ortho == pytest.approx(1.0) for r in layout.leaf_regions())
            # สี่เหลี่ยมสองรูปที่ใหญ่กว่าครึ่งกล่องวางพร้อมกันไม่ได้
            if sum(1 for s in squares if 2 * s > side) >= 2:
                assert placement is None
