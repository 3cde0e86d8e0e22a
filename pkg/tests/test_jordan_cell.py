import pytest

from eptl import fixtures
from eptl import jordan_cell as jc


@pytest.mark.parametrize("N,P,k", [(3, 2, 0), (4, 2, 2), (5, 2, 2), (4, 1, 0), (5, 3, 0)])
def test_hypotheses_rejected(N, P, k):
    with pytest.raises(jc.HypothesisError):
        jc.check_hypotheses(N, P, k)


def test_twist_roots_solve_the_criticality_equation():
    from eptl.scalars import cyc_from_angle
    N, P, k = 6, 2, 1
    q = cyc_from_angle(1, P)
    roots = jc.twist_roots(N, P, k)
    assert len(roots) == N
    for a, b in roots:
        v = cyc_from_angle(a, b)
        assert (q * v * v) ** N == q ** (2 * k)


@pytest.mark.parametrize("N,P,k", [(4, 2, 0), (5, 2, 1), (6, 2, 0)])
def test_certified_cell(N, P, k):
    inst = jc.CellInstance(N, P, k)
    r = jc.certify_cell(inst)
    assert r["pass"]
    assert r["block_ge_2"] and r["I0_kills_cell_eigenvector"]


def test_quarter_turn_four_sites_profile():
    r = jc.certify_cell(jc.CellInstance(4, 2, 0))
    assert r["jordan_profile_at_0"]["blocks"] == {"1": 2, "2": 1}
    assert fixtures.check_omega0_jordan()["pass"]


@pytest.mark.parametrize("N,P,k", [(4, 2, 0), (6, 2, 1)])
def test_amplitude(N, P, k):
    r = jc.amplitude_nu3(jc.CellInstance(N, P, k))
    assert r["pass"]


def test_appendix_suites_small():
    assert jc.appendix_B_suite(5, 2, 0)["pass"]
    assert jc.appendix_A_suite(5, 2, 0)["pass"]


def test_negative_controls():
    r = jc.negative_controls(5, 2, 0)
    assert r["pass"]


def test_solid_boxes():
    assert jc.solid_boxes(2, 8) == [(4, 0), (5, 1), (6, 2), (7, 3), (8, 4)]
