import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eptl import kernels
from eptl import _kernels_py as fallback
from eptl.linalg import (CycMatrix, Embeddings, certify_zero, exact_inverse, exact_nullspace,
                         exact_solve, modular_rank)
from eptl.scalars import cyc, cyc_from_angle

P = 2147483629


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 2 ** 32))
def test_backends_agree(n, k, seed):
    if kernels.compiled is None:
        pytest.skip("compiled kernels not built")
    rng = np.random.default_rng(seed)
    A = rng.integers(0, P, size=(n, k), dtype=np.int64)
    A[:, 0] = 0 if n > 2 else A[:, 0]
    B = rng.integers(0, P, size=(k, n), dtype=np.int64)
    c = kernels.compiled
    assert np.array_equal(c.matmul_mod(A, B, P), fallback.matmul_mod(A, B, P))
    assert c.rank_mod(A, P) == fallback.rank_mod(A, P)
    ra, pa = c.rref_mod(A, P)
    rb, pb = fallback.rref_mod(A, P)
    assert np.array_equal(ra, rb) and list(pa) == list(pb)


def test_matmul_against_python_ints():
    rng = np.random.default_rng(1)
    A = rng.integers(0, P, size=(5, 7), dtype=np.int64)
    B = rng.integers(0, P, size=(7, 3), dtype=np.int64)
    ref = [[sum(int(A[i, t]) * int(B[t, j]) for t in range(7)) % P for j in range(3)] for i in range(5)]
    assert kernels.matmul_mod(A, B, P).tolist() == ref


def sample_matrix():
    z = cyc_from_angle(1, 5)
    return CycMatrix.from_rows(10, [[z, cyc(1), cyc(0)], [cyc(2), z * z, cyc(1)], [cyc(0), cyc(-1), z + 1]])


def test_inverse_and_solve():
    A = sample_matrix()
    Ai = exact_inverse(A)
    assert A @ Ai == CycMatrix.identity(A.m, 3)
    B = CycMatrix.from_rows(10, [[cyc(1)], [cyc(0)], [cyc_from_angle(1, 5)]])
    X = exact_solve(A, B)
    assert A @ X == B


def test_nullspace_and_rank():
    A = sample_matrix()
    S = A.hstack(A @ CycMatrix.from_rows(10, [[cyc(1)], [cyc(2)], [cyc(0)]]))
    K = exact_nullspace(S)
    assert K.shape[1] == 1 and (S @ K).is_zero()
    r, _ = modular_rank(S)
    assert r == 3


def test_certify_zero_detects_nonzero():
    A = sample_matrix()
    ok, info = certify_zero(lambda e: A.residues(e) @ A.residues(e) - (A @ A).residues(e), A.m)
    assert ok
    ok, info = certify_zero(lambda e: A.residues(e) - A.residues(e).shift(1), A.m)
    assert not ok and info["witness"] == (0, 0)


def test_embeddings_are_ring_maps():
    emb = Embeddings(30, 2)
    x, y = cyc_from_angle(2, 15) + 3, cyc_from_angle(1, 3) * 5 - cyc_from_angle(7, 15)
    for e, (p, _) in enumerate(emb.items):
        assert emb.scalar_value(x * y)[e] == emb.scalar_value(x)[e] * emb.scalar_value(y)[e] % p
