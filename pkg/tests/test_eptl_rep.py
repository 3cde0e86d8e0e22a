import pytest

from eptl.eptl_rep import (AlgebraElement, LoopParams, OmegaRep, RhoRep, parse_word, reflection_check,
                           verify_relations, word_matrix)
from eptl.scalars import cyc, cyc_from_angle


def params(N, a=1, b=3, v=(1, 5)):
    vv = cyc_from_angle(*v)
    return LoopParams.from_q(cyc_from_angle(-a, b), vv, N=N)


@pytest.mark.parametrize("N", [3, 4, 5])
def test_rho_relations(N):
    p = params(N)
    r = verify_relations(RhoRep(N, p), p.alpha, p.beta)
    assert r["pass"], [x for x in r["relations"] if not x["pass"]]


@pytest.mark.parametrize("N,d", [(3, 1), (4, 0), (4, 2), (5, 3)])
def test_omega_relations(N, d):
    p = params(N)
    r = verify_relations(OmegaRep(N, d, p), p.alpha, p.beta)
    assert r["pass"]


def test_alpha_mismatch_breaks_only_the_winding_relation():
    N = 4
    p = params(N)
    r = verify_relations(OmegaRep(N, 0, p), p.alpha + 1, p.beta)
    failed = {x["relation"] for x in r["relations"] if not x["pass"]}
    assert failed == {"E O E = alpha E", "E Oi E = alpha E"}


def test_two_sites_relation_failure_is_structural():
    # on two sites e1 e2 e1 and e1 differ for every parameter choice
    for v in [(0, 1), (1, 5), (2, 7)]:
        p = params(2, v=v)
        r = verify_relations(RhoRep(2, p), p.alpha, p.beta)
        failed = sorted(x["relation"] for x in r["relations"] if not x["pass"])
        assert failed == ["e1 e2 e1 = e1", "e2 e1 e2 = e2"]


def test_translation_shifts_generators_down():
    N = 5
    rep = RhoRep(N, params(N))
    O = word_matrix(rep, parse_word("O"))
    for j in range(1, N + 1):
        lhs = word_matrix(rep, parse_word("O e%d Oi" % j))
        assert lhs == rep.generator("e%d" % ((j - 2) % N + 1))
    assert O is not None


@pytest.mark.parametrize("N", [3, 4])
def test_reflection(N):
    assert reflection_check(RhoRep(N, params(N)))["pass"]


def test_fixed_sector_generators_are_blocks_of_rho():
    # omega with v = 1 and alpha = 2 is the d-defect quotient: e_i on states without defect closing agree
    N = 4
    p = LoopParams.from_q(cyc_from_angle(-1, 3), cyc(1), N=N)
    om = OmegaRep(N, 0, p)
    rho = RhoRep(N, p)
    idx = {w.string: i for i, w in enumerate(rho.basis)}
    sub = [idx[w.string] for w in om.basis]
    for g in ("e1", "e2", "e3", "e4"):
        assert rho.generator(g).submatrix(sub, sub) == om.generator(g)
