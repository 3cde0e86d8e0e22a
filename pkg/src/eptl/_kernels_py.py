"""Pure numpy kernels for linear algebra over F_p, p < 2^31.

Dense products go through float64 BLAS on 16-bit limbs, which is exact as long
as the inner dimension stays below 2^21.
"""
from __future__ import annotations

import numpy as np

_LIMB = 1 << 16


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    A = np.ascontiguousarray(A, dtype=np.int64)
    B = np.ascontiguousarray(B, dtype=np.int64)
    if A.shape[1] >= (1 << 21):
        raise ValueError("inner dimension too large for exact limb products")
    a1, a0 = np.divmod(A, _LIMB)
    b1, b0 = np.divmod(B, _LIMB)
    a1f, a0f = a1.astype(np.float64), a0.astype(np.float64)
    b1f, b0f = b1.astype(np.float64), b0.astype(np.float64)
    hh = (a1f @ b1f).astype(np.int64) % p
    mid = ((a1f @ b0f).astype(np.int64) + (a0f @ b1f).astype(np.int64)) % p
    ll = (a0f @ b0f).astype(np.int64) % p
    s32 = (1 << 32) % p
    return ((hh * s32) % p + (mid * _LIMB) % p + ll) % p


def rref_mod(A: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; pivots searched in the first ``ncols`` columns."""
    R = np.array(A, dtype=np.int64, copy=True) % p
    nr, nc = R.shape
    lim = nc if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(lim):
        if r == nr:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            R[rows] = (R[rows] - (col[rows, None] * R[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod(A: np.ndarray, p: int) -> int:
    return len(rref_mod(A, p)[1])
