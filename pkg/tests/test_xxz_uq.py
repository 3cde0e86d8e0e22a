import pytest

from eptl import jordan_cell as jc
from eptl import xxz_uq as xx
from eptl.scalars import cyc, cyc_from_angle


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_tau_relations(N):
    assert xx.check_tau_relations(N, cyc_from_angle(1, 5), cyc_from_angle(1, 3))["pass"]


@pytest.mark.parametrize("qh,v", [((1, 5), (1, 3)), ((1, 4), (0, 1)), ((1, 6), (1, 4))])
def test_uq_relations(qh, v):
    r = xx.check_uq_relations(4, cyc_from_angle(*qh), cyc_from_angle(*v), max_mn=3)
    assert r["pass"], r


def test_uq_negative_control_boundary_term():
    r = xx.check_uq_relations(3, cyc_from_angle(1, 5), cyc_from_angle(1, 3), max_mn=2)
    assert r["negative_control_S_eN_nonzero"] is True


@pytest.mark.parametrize("N", [3, 4, 5])
def test_divided_powers_match_repeated_products(N):
    assert xx.check_divided_power_oracle(N, cyc_from_angle(2, 7), cyc_from_angle(1, 5))["pass"]


def test_divided_power_at_root_of_unity_is_finite():
    ch = xx.SpinChain(4, cyc_from_angle(1, 4))   # q = i, [2] = 0
    S2 = ch.divided_power("S", 1, 2)
    assert S2.nnz() > 0 if hasattr(S2, "nnz") else True


@pytest.mark.parametrize("N", [3, 4, 6])
def test_twist_similarity(N):
    assert xx.twist_similarity(N, cyc_from_angle(1, 5), cyc_from_angle(1, 7))["pass"]


def test_omega_conjugation():
    assert xx.omega_conjugation_identity(4, cyc_from_angle(1, 5), cyc_from_angle(1, 3), 3)["pass"]


@pytest.mark.parametrize("N,P,k", [(4, 2, 0), (5, 2, 1), (6, 3, 0)])
def test_lemmas_at_critical_twist(N, P, k):
    inst = jc.CellInstance(N, P, k)
    ch = xx.SpinChain(N, inst.qh_c, inst.v_c)
    a, b = xx.lemma_41(ch, P), xx.lemma_42(ch, P, k)
    assert a["pass"] and a["negative_control_nonzero"]
    assert b["pass"] and b["negative_control_nonzero"]


def test_lemmas_vacuous_off_the_twist_roots():
    # a generic twist leaves no admissible class, so nothing is certified
    ch = xx.SpinChain(5, cyc_from_angle(1, 4), cyc_from_angle(1, 5))
    r = xx.lemma_41(ch, 2)
    assert r["admissible_classes"] == 0 and not r["pass"]
    assert all(not row["commutes_with_H"] for row in r["rows"])


def test_lemma_requires_root_of_unity():
    with pytest.raises(ValueError):
        xx.lemma_41(xx.SpinChain(4, cyc_from_angle(1, 5)), 2)
