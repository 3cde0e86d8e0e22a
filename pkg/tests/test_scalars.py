import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eptl.scalars import (CycScalar, cyc, cyc_from_angle, q_binom, q_binom_limit,
                          q_binom_limit_closed, q_binom_poly, q_fact, q_int, q_int_ratio)

CONDUCTORS = [1, 3, 4, 5, 8, 12, 15, 20]


@st.composite
def scalars(draw, m=None):
    m = m or draw(st.sampled_from(CONDUCTORS))
    terms = draw(st.lists(st.tuples(st.integers(0, m - 1), st.fractions(min_value=-20, max_value=20,
                                                                     max_denominator=7)), max_size=4))
    acc = CycScalar.zero(m)
    for e, c in terms:
        acc = acc + CycScalar.root(e, m) * cyc(c)
    return acc


def close(x: CycScalar, z: complex) -> bool:
    return abs(x.to_complex() - z) < 1e-8 * (1 + abs(z))


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars())
def test_ring_ops_match_complex_evaluation(x, y):
    assert close(x + y, x.to_complex() + y.to_complex())
    assert close(x * y, x.to_complex() * y.to_complex())
    assert close(x - y, x.to_complex() - y.to_complex())


@settings(max_examples=60, deadline=None)
@given(scalars())
def test_inverse_and_canonical_form(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
        return
    assert x * x.inverse() == cyc(1)
    # equality and hashing do not depend on the conductor used to write the number
    y = x.coerce(x.m * 3)
    assert y == x and hash(y) == hash(x)


@settings(max_examples=40, deadline=None)
@given(scalars())
def test_json_roundtrip(x):
    assert CycScalar.from_json(x.to_json()) == x


def test_root_relations():
    z = cyc_from_angle(1, 5)      # exp(i pi/5), primitive 10th root
    assert z ** 10 == cyc(1)
    assert z ** 5 == cyc(-1)
    assert cyc_from_angle(1, 2) ** 2 == cyc(-1)
    assert (z + z.inverse()).is_rational() is False
    s2 = cyc_from_angle(1, 4) + cyc_from_angle(-1, 4)
    assert s2 * s2 == cyc(2)


def test_conj_is_complex_conjugate():
    x = cyc_from_angle(1, 7) * 3 + cyc(Fraction(1, 2))
    assert close(x.conj(), x.to_complex().conjugate())
    n = x * x.conj()
    assert n == n.conj() and abs(n.to_complex().imag) < 1e-12


@pytest.mark.parametrize("n", range(-4, 9))
def test_q_int_polynomial_equals_ratio(n):
    q = cyc_from_angle(1, 13)
    assert q_int(n, q) == q_int_ratio(n, q)


def test_q_binom_routes_agree_generic():
    q = cyc_from_angle(2, 17)
    for m in range(7):
        for j in range(m + 1):
            assert q_binom_poly(m, j, q) == q_binom(m, j, q)


def test_q_binom_poly_defined_at_root_of_unity():
    q = cyc_from_angle(1, 2)   # q = i, [2] = 0
    assert q_fact(2, q).is_zero()
    with pytest.raises(ZeroDivisionError):
        q_binom(4, 2, q)
    # [4 choose 2] = q^4 + q^2 + 2 + q^-2 + q^-4 at q = i is 1 - 1 + 2 - 1 + 1
    assert q_binom_poly(4, 2, q) == cyc(2)


def test_q_binom_negative_top():
    q = cyc_from_angle(1, 11)
    for m in range(-4, 0):
        for j in range(4):
            num = cyc(1)
            for k in range(j):
                num = num * q_int(m - k, q)
            assert q_binom_poly(m, j, q) == num / q_fact(j, q)


@pytest.mark.parametrize("P", [2, 3])
def test_q_binom_limit_closed_form(P):
    qc = cyc_from_angle(1, P)
    # shape [P s + a choose P]
    for top in range(P, 4 * P):
        assert q_binom_limit(top, P, qc, P) == q_binom_limit_closed(top, P, qc, P)
    # shape [P + a choose k], k < P
    for top in range(P, 2 * P):
        for k in range(P):
            assert q_binom_limit(top, k, qc, P) == q_binom_limit_closed(top, k, qc, P)


def test_q_binom_limit_numeric():
    # limit taken numerically along q = q_c exp(i t), t -> 0
    P = 2
    qc = cyc_from_angle(1, P)
    for top, k in [(4, 2), (5, 2), (6, 3), (5, 1)]:
        exact = q_binom_limit(top, k, qc, P).to_complex()
        t = 1e-6
        qq = cmath.exp(1j * (cmath.pi / P + t))
        qi = lambda n: (qq ** n - qq ** -n) / (qq - 1 / qq)
        num = 1
        for s in range(k):
            num *= qi(top - s) / qi(s + 1)
        assert abs(num - exact) < 1e-4
