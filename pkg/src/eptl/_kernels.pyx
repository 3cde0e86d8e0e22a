# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for linear algebra over F_p, p < 2^31."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


def matmul_mod(A, B, int64_t p):
    cdef int64_t[:, ::1] a = np.ascontiguousarray(A, dtype=np.int64)
    cdef int64_t[:, ::1] b = np.ascontiguousarray(B, dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0], k = a.shape[1], m = b.shape[1]
    out = np.zeros((n, m), dtype=np.int64)
    cdef int64_t[:, ::1] c = out
    acc_arr = np.zeros(m, dtype=np.uint64)
    cdef uint64_t[::1] acc = acc_arr
    cdef Py_ssize_t i, j, t
    cdef int cnt
    cdef uint64_t av, P = <uint64_t>p
    for i in range(n):
        for j in range(m):
            acc[j] = 0
        cnt = 0
        for t in range(k):
            av = <uint64_t>a[i, t]
            if av == 0:
                continue
            for j in range(m):
                acc[j] += av * <uint64_t>b[t, j]
            cnt += 1
            if cnt == 3:
                for j in range(m):
                    acc[j] %= P
                cnt = 0
        for j in range(m):
            c[i, j] = <int64_t>(acc[j] % P)
    return out


cdef inline int64_t _inv(int64_t x, int64_t p):
    cdef int64_t r = 1, base = x % p, e = p - 2
    while e:
        if e & 1:
            r = <int64_t>((<uint64_t>r * <uint64_t>base) % <uint64_t>p)
        base = <int64_t>((<uint64_t>base * <uint64_t>base) % <uint64_t>p)
        e >>= 1
    return r


def rref_mod(A, int64_t p, ncols=None):
    R = np.array(A, dtype=np.int64, copy=True) % p
    cdef int64_t[:, ::1] r = R
    cdef Py_ssize_t nr = r.shape[0], nc = r.shape[1]
    cdef Py_ssize_t lim = nc if ncols is None else ncols
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef int64_t inv, f, tmp
    cdef uint64_t P = <uint64_t>p
    pivots = []
    for col in range(lim):
        if row == nr:
            break
        piv = -1
        for i in range(row, nr):
            if r[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(nc):
                tmp = r[row, j]
                r[row, j] = r[piv, j]
                r[piv, j] = tmp
        inv = _inv(r[row, col], p)
        for j in range(col, nc):
            r[row, j] = <int64_t>((<uint64_t>r[row, j] * <uint64_t>inv) % P)
        for i in range(nr):
            if i == row:
                continue
            f = r[i, col]
            if f == 0:
                continue
            f = p - f
            for j in range(col, nc):
                if r[row, j] != 0:
                    r[i, j] = <int64_t>((<uint64_t>r[i, j] + <uint64_t>f * <uint64_t>r[row, j]) % P)
        pivots.append(col)
        row += 1
    return R, pivots


def rank_mod(A, int64_t p):
    return len(rref_mod(A, p)[1])
