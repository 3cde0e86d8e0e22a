import pytest

from eptl import fixtures
from eptl import intertwiner as itw
from eptl.scalars import cyc, cyc_from_angle


@pytest.mark.parametrize("N,d", [(2, 0), (3, 1), (4, 0), (4, 2), (5, 1), (5, 3), (6, 2)])
def test_intertwining(N, d):
    assert itw.check_intertwining(N, d, cyc_from_angle(1, 5), cyc_from_angle(1, 3))["pass"]


@pytest.mark.parametrize("N,d", [(3, 1), (4, 0), (4, 2), (5, 1), (6, 0), (6, 2)])
def test_determinant_up_to_unit(N, d):
    r = itw.det_check(N, d, cyc_from_angle(2, 7), cyc_from_angle(1, 5))
    assert r["pass"] and r["ratio"] in ("1", "-1", "i", "-i")


def test_determinant_vanishes_at_critical_pair():
    # q^(1/2) = exp(i pi/4), v = 1: <k + d/2> = 0 for k = 2 at N = 4, d = 0
    qh, v = cyc_from_angle(1, 4), cyc(1)
    r = itw.det_check(4, 0, qh, v)
    assert r["formula_zero"] and r["pass"]
    assert itw.criticality(4, 0, qh, v)


def test_paper_matrix_and_expansion():
    assert fixtures.check_I40(cyc_from_angle(1, 4), cyc(1))
    assert fixtures.check_expansion()["pass"]


@pytest.mark.parametrize("N,d", [(4, 0), (5, 1), (6, 2)])
def test_spectral_coincidence(N, d):
    r = itw.spectral_coincidence(N, d, cyc_from_angle(1, 5), cyc_from_angle(1, 3))
    assert r["similar"] and r["power_traces_equal"]


def test_kernel_vectors_and_left_kernel():
    from eptl.jordan_cell import CellInstance
    inst = CellInstance(6, 2, 1)
    assert itw.kernel_vectors(6, 2, 1, inst.qh_c, inst.v_c)["pass"]
    assert itw.check_nu3_left_kernel(6, 2, 1, inst.qh_c, inst.v_c)["pass"]


def test_nested_arcs_closed_form():
    qh, v = cyc_from_angle(1, 7), cyc_from_angle(1, 5)
    for y in range(1, 4):
        for x in range(1, y + 1):
            assert itw.check_prop_A1(x, y, 2 * y + 1, qh, v)["pass"]


@pytest.mark.parametrize("N", [4, 5, 6])
def test_vanishing_rule(N):
    from eptl.jordan_cell import CellInstance
    inst = CellInstance(N, 2, 0)
    for y in range(1, N // 2 + 1):
        for x in range(1, y + 1):
            assert itw.check_cor_51(N, y, x, inst.qh_c, inst.v_c)["pass"]
