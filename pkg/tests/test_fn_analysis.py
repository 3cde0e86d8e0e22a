import pytest

from eptl import fixtures
from eptl.fn_analysis import (bratelli_segments, corollary_table, predict_couplings, psi_components,
                              psi_components_recursive, theorem_pair_rule, verify_theorem_3_2)
from eptl.operators import Anisotropy


def test_F2_F3_fixtures():
    assert fixtures.check_F2(0, 1, 2)
    assert fixtures.check_F3(0, 1)
    assert fixtures.check_F3_jordan()["pass"]


@pytest.mark.parametrize("a,b", [(1, 2), (1, 3), (2, 3), (1, 4)])
@pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
def test_theorem_small(N, a, b):
    r = verify_theorem_3_2(N, a, b, 2, transfer=False)
    assert r["pass"]


def test_transfer_route_small():
    r = verify_theorem_3_2(6, 1, 2, 2, transfer=True)
    assert r["pass"] and r["transfer"]


def test_closed_and_recursive_components_agree():
    ani = Anisotropy(1, 5)
    for s in range(1, 8):
        for m in range(0, s // 2 + 1):
            assert psi_components(s, m, ani, 2) == psi_components_recursive(s, m, ani, 2)


def test_predicted_coupling_at_quarter_turn():
    # q = i: sectors 2 and 6 couple at N = 6, and 0, 2, 6, 8 at N = 8
    assert corollary_table(6, 1, 2, 2) == {frozenset({2, 6})}
    assert bratelli_segments(8, 1, 2)[8] == [[0, 8], [2, 6]]
    assert theorem_pair_rule(6, 1, 2, 2, 6) and not theorem_pair_rule(6, 1, 2, 0, 4)


def test_generic_lambda_predicts_nothing():
    assert predict_couplings(6, 1, 7, 2).tuples == []
