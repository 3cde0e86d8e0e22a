import pytest

from eptl.eptl_rep import LoopParams, OmegaRep, RhoRep
from eptl.operators import (Anisotropy, check_centrality, check_transfer_properties, f_central,
                            hamiltonian, transfer_at)
from eptl.scalars import cyc, cyc_from_angle


@pytest.mark.parametrize("a,b,N", [(1, 3, 3), (1, 4, 4), (0, 1, 3), (2, 3, 4)])
def test_transfer_properties_rho(a, b, N):
    ani = Anisotropy(a, b)
    r = check_transfer_properties(RhoRep(N, LoopParams(ani.beta, cyc(2))), ani)
    assert r["pass"], r


def test_transfer_properties_omega_with_mirror():
    ani = Anisotropy(1, 3)
    N, d = 4, 2
    v = cyc_from_angle(1, 5)
    p = LoopParams(ani.beta, v ** N + v ** -N, v)
    mirror = OmegaRep(N, d, LoopParams(p.beta, p.alpha, v.inverse()))
    assert check_transfer_properties(OmegaRep(N, d, p), ani, mirror)["pass"]


def test_anisotropy_beta():
    for a, b in [(1, 2), (1, 3), (2, 3), (1, 4), (0, 1)]:
        ani = Anisotropy(a, b)
        import cmath
        assert abs(ani.beta.to_complex() + 2 * cmath.cos(cmath.pi * a / b)) < 1e-12


def test_f_is_central():
    ani = Anisotropy(1, 3)
    rep = RhoRep(4, LoopParams(ani.beta, cyc(2)))
    F = f_central(rep, ani)
    assert check_centrality(rep, F)


def test_transfer_commutes_with_hamiltonian():
    ani = Anisotropy(1, 4)
    rep = RhoRep(4, LoopParams(ani.beta, cyc(2)))
    H = hamiltonian(rep)
    T = transfer_at(rep, ani, 1, 5)
    assert (H @ T - T @ H).is_zero()
