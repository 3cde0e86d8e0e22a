from math import comb

import pytest

from eptl import linkstates as ls


@pytest.mark.parametrize("N", range(1, 11))
def test_sector_counts_and_brute_force(N):
    total = 0
    for d in ls.sectors(N):
        states = ls.enumerate_states(N, d)
        assert len(states) == comb(N, (N - d) // 2)
        assert {w.string for w in states} == ls.brute_force_sector(N, d)
        assert all(w.d == d and w.N == N for w in states)
        total += len(states)
    assert total == len(ls.full_basis(N))


def test_parse_render_roundtrip():
    for N in range(2, 8):
        for w in ls.full_basis(N):
            assert ls.parse(ls.render(w)) == w


def test_periodic_arcs():
    w = ls.parse(")(()")
    assert w.d == 0
    assert sorted(w.arcs()) and len(w.arcs()) == 2


@pytest.mark.parametrize("N", [4, 5, 6])
def test_reflection_and_translation_are_bijections(N):
    for d in ls.sectors(N):
        states = set(ls.enumerate_states(N, d))
        assert {w.reflect() for w in states} == states
        assert {w.translate() for w in states} == states
        for w in states:
            assert w.reflect().reflect() == w
            assert w.translate(N) == w


def test_invalid_state_rejected():
    with pytest.raises(ValueError):
        ls.parse("(x)")
