"""Exact matrices over Q(zeta_m) and the multi-modular engine behind them.

Three layers:

* ``CycMatrix``: dense exact matrix, stored as integer coefficient slices on the
  power basis (shape (phi, rows, cols)) with one common denominator.
* ``ModMat``: the residues of ``den * M`` under every embedding zeta -> r^k of a
  set of split primes p = 1 mod m, plus a bound on the row-sum norm of ``den * M``
  under all complex embeddings.  If all residues vanish and the product of the
  primes exceeds that bound, the matrix is exactly zero (norm argument in Z[zeta]).
* reconstruction: canonical modular answers (RREF kernels, solutions) are
  interpolated across embeddings, lifted by CRT and rational reconstruction, and
  then certified exactly through ``ModMat``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from . import kernels
from .scalars import CycScalar, table, cyc

_INT_LIMIT = 1 << 62
PRIME_BITS = 30.9  # every prime used lies in (2^30.9, 2^31)


# ---------------------------------------------------------------------------
# primes and embeddings

@lru_cache(maxsize=None)
def split_primes(m: int, count: int) -> tuple[tuple[int, int], ...]:
    """First ``count`` primes p = 1 mod m below 2^31 (descending), with a primitive m-th root."""
    from sympy import isprime, primitive_root

    out = []
    t = (2 ** 31 - 2) // m
    lo = int(2 ** PRIME_BITS)
    while len(out) < count:
        p = 1 + m * t
        t -= 1
        if p < lo:
            raise RuntimeError("ran out of primes for conductor %d" % m)
        if isprime(p):
            g = primitive_root(p)
            out.append((p, pow(g, (p - 1) // m, p)))
    return tuple(out)


class Embeddings:
    """All phi(m) embeddings zeta -> r^k (k a unit) for each of several split primes."""

    def __init__(self, m: int, nprimes: int = 1, skip: int = 0):
        self.m = m
        t = table(m)
        self.phi = t.phi
        self.units = t.units
        self.primes = [pr for pr in split_primes(m, nprimes + skip)[skip:]]
        self.items: list[tuple[int, int]] = []   # (p, w)
        for p, r in self.primes:
            for k in self.units:
                self.items.append((p, pow(r, k, p)))
        self.pvec = np.array([p for p, _ in self.items], dtype=np.int64)

    def __len__(self) -> int:
        return len(self.items)

    @property
    def log2_modulus(self) -> float:
        return sum(math.log2(p) for p, _ in self.primes)

    def eval_scalar(self, x: CycScalar) -> np.ndarray:
        """Residues of den*x (numerator only)."""
        x = x.coerce(self.m) if x.m != self.m else x
        out = np.empty(len(self.items), dtype=np.int64)
        for e, (p, w) in enumerate(self.items):
            acc = 0
            wp = 1
            for c in x.num:
                if c:
                    acc += c * wp
                wp = wp * w % p
            out[e] = acc % p
        return out

    def scalar_value(self, x: CycScalar) -> np.ndarray:
        """Residues of x itself (denominator inverted)."""
        num = self.eval_scalar(x)
        out = np.empty_like(num)
        for e, (p, _) in enumerate(self.items):
            if x.den % p == 0:
                raise ZeroDivisionError("denominator divisible by working prime")
            out[e] = num[e] * pow(x.den, p - 2, p) % p
        return out

    def _power_table(self) -> np.ndarray:
        tab = np.empty((len(self.items), self.phi), dtype=np.int64)
        for e, (p, w) in enumerate(self.items):
            v = 1
            for j in range(self.phi):
                tab[e, j] = v
                v = v * w % p
        return tab


# ---------------------------------------------------------------------------
# exact dense matrices

def _fit(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        if arr.size == 0:
            return arr.astype(np.int64)
        mx = max(abs(int(arr.max())), abs(int(arr.min())))
        if mx < _INT_LIMIT:
            return arr.astype(np.int64)
    return arr


def _obj(arr: np.ndarray) -> np.ndarray:
    return arr if arr.dtype == object else arr.astype(object)


def _reduce_poly(m: int, full: np.ndarray) -> np.ndarray:
    """Reduce slices full[k] (k < 2*phi-1 or any length) modulo the m-th cyclotomic polynomial."""
    t = table(m)
    phi = t.phi
    full = _obj(full).copy() if full.shape[0] > phi else full
    for k in range(full.shape[0] - 1, phi - 1, -1):
        sl = full[k]
        if not np.any(sl):
            continue
        base = k - phi
        for j in range(phi):
            pj = t.poly[j]
            if pj:
                full[base + j] = full[base + j] - sl * pj
    return full[:phi]


class CycMatrix:
    """Dense exact matrix over Q(zeta_m)."""

    __slots__ = ("m", "data", "den")

    def __init__(self, m: int, data: np.ndarray, den: int = 1, normalize: bool = True):
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.m = m
        self.data = _fit(data)
        self.den = int(den)
        if normalize and self.den > 1:
            self._normalize()

    def _normalize(self) -> None:
        g = self.den
        if self.data.size:
            if self.data.dtype == object:
                for x in self.data.flat:
                    if x:
                        g = math.gcd(g, int(x))
                        if g == 1:
                            return
            else:
                g = math.gcd(g, int(np.gcd.reduce(self.data.ravel())))
        if not np.any(self.data):
            self.den = 1
            return
        if g > 1:
            self.data = _fit(self.data // g)
            self.den //= g

    # construction
    @classmethod
    def zeros(cls, m: int, r: int, c: int) -> "CycMatrix":
        return cls(m, np.zeros((table(m).phi, r, c), dtype=np.int64))

    @classmethod
    def identity(cls, m: int, n: int) -> "CycMatrix":
        d = np.zeros((table(m).phi, n, n), dtype=np.int64)
        d[0] = np.eye(n, dtype=np.int64)
        return cls(m, d)

    @classmethod
    def from_entries(cls, m: int, shape: tuple[int, int], entries: dict) -> "CycMatrix":
        """entries: {(i, j): CycScalar | int | Fraction}; duplicates are not allowed."""
        phi = table(m).phi
        den = 1
        items = []
        for (i, j), x in entries.items():
            x = cyc(x, m)
            if x.m != m:
                x = x.coerce(m)
            if x.is_zero():
                continue
            items.append((i, j, x))
            den = den * x.den // math.gcd(den, x.den)
        data = np.zeros((phi, shape[0], shape[1]), dtype=object)
        for i, j, x in items:
            f = den // x.den
            for k, c in enumerate(x.num):
                if c:
                    data[k, i, j] = c * f
        data[data == None] = 0  # noqa: E711
        return cls(m, data, den)

    @classmethod
    def from_rows(cls, m: int, rows: list[list]) -> "CycMatrix":
        ent = {(i, j): x for i, r in enumerate(rows) for j, x in enumerate(r)}
        return cls.from_entries(m, (len(rows), len(rows[0]) if rows else 0), ent)

    @classmethod
    def from_scalar_array(cls, m: int, arr: np.ndarray) -> "CycMatrix":
        """Integer (rational) matrix embedded in Q(zeta_m)."""
        phi = table(m).phi
        r, c = arr.shape
        if arr.dtype == object:
            den = 1
            for x in arr.flat:
                den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
            data = np.zeros((phi, r, c), dtype=object)
            data[0] = np.vectorize(lambda x: int(Fraction(x) * den), otypes=[object])(arr)
            return cls(m, data, den)
        data = np.zeros((phi, r, c), dtype=np.int64)
        data[0] = arr
        return cls(m, data)

    # views
    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[1], self.data.shape[2]

    @property
    def phi(self) -> int:
        return self.data.shape[0]

    def entry(self, i: int, j: int) -> CycScalar:
        return CycScalar(self.m, [int(x) for x in self.data[:, i, j]], self.den)

    def entries(self) -> dict:
        out = {}
        nz = np.argwhere(np.any(self.data != 0, axis=0))
        for i, j in nz:
            out[(int(i), int(j))] = self.entry(int(i), int(j))
        return out

    def to_rows(self) -> list[list[CycScalar]]:
        r, c = self.shape
        return [[self.entry(i, j) for j in range(c)] for i in range(r)]

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def nnz(self) -> int:
        return int(np.count_nonzero(np.any(self.data != 0, axis=0)))

    def l1_rowbound_log2(self) -> float:
        """log2 of max_i sum_j L1(num_ij): bounds every embedding's row-sum norm of den*M."""
        if self.data.size == 0:
            return 0.0
        if self.data.dtype == object:
            a = np.vectorize(lambda x: abs(int(x)), otypes=[object])(self.data)
            rows = a.sum(axis=0).sum(axis=1)
            mx = max(int(x) for x in rows) if rows.size else 0
        else:
            rows = np.abs(self.data).sum(axis=0).sum(axis=1)
            mx = int(rows.max()) if rows.size else 0
        return math.log2(mx) if mx > 0 else 0.0

    def coerce(self, M: int) -> "CycMatrix":
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError("conductor mismatch")
        t = table(M)
        step = M // self.m
        r, c = self.shape
        out = np.zeros((t.phi, r, c), dtype=object)
        for j in range(self.phi):
            sl = self.data[j]
            if not np.any(sl):
                continue
            for i, pj in enumerate(t.powers[(j * step) % M]):
                if pj:
                    out[i] = out[i] + _obj(sl) * pj
        return CycMatrix(M, out, self.den)

    def _align(self, other: "CycMatrix") -> tuple["CycMatrix", "CycMatrix"]:
        if self.m == other.m:
            return self, other
        M = self.m * other.m // math.gcd(self.m, other.m)
        return self.coerce(M), other.coerce(M)

    # arithmetic
    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._align(other)
        if a.den == b.den:
            return CycMatrix(a.m, _obj(a.data) + _obj(b.data) if _risky(a, b) else a.data + b.data, a.den)
        L = a.den * b.den // math.gcd(a.den, b.den)
        return CycMatrix(a.m, _obj(a.data) * (L // a.den) + _obj(b.data) * (L // b.den), L)

    def __neg__(self) -> "CycMatrix":
        return CycMatrix(self.m, -self.data, self.den, normalize=False)

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return self + (-other)

    def scale(self, x) -> "CycMatrix":
        x = cyc(x, self.m)
        if x.m != self.m:
            M = self.m * x.m // math.gcd(self.m, x.m)
            return self.coerce(M).scale(x.coerce(M))
        t = table(self.m)
        phi = t.phi
        r, c = self.shape
        full = np.zeros((2 * phi - 1, r, c), dtype=object)
        src = _obj(self.data)
        for i, xi in enumerate(x.num):
            if xi:
                full[i:i + phi] = full[i:i + phi] + src * xi
        return CycMatrix(self.m, _reduce_poly(self.m, full), self.den * x.den)

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._align(other)
        phi = a.phi
        r, k = a.shape
        k2, c = b.shape
        if k != k2:
            raise ValueError("shape mismatch %s @ %s" % (a.shape, b.shape))
        use_int = a.data.dtype != object and b.data.dtype != object
        if use_int:
            ma = int(np.abs(a.data).max()) if a.data.size else 0
            mb = int(np.abs(b.data).max()) if b.data.size else 0
            use_int = ma * mb * max(k, 1) * phi < _INT_LIMIT
        full = np.zeros((2 * phi - 1, r, c), dtype=np.int64 if use_int else object)
        A = a.data if use_int else _obj(a.data)
        B = b.data if use_int else _obj(b.data)
        for i in range(phi):
            if not np.any(A[i]):
                continue
            for j in range(phi):
                if np.any(B[j]):
                    full[i + j] += A[i] @ B[j]
        return CycMatrix(a.m, _reduce_poly(a.m, full if not use_int else full.astype(object)),
                         a.den * b.den)

    def transpose(self) -> "CycMatrix":
        return CycMatrix(self.m, np.ascontiguousarray(self.data.transpose(0, 2, 1)), self.den, False)

    @property
    def T(self) -> "CycMatrix":
        return self.transpose()

    def galois(self, k: int) -> "CycMatrix":
        t = table(self.m)
        r, c = self.shape
        out = np.zeros((t.phi, r, c), dtype=object)
        for j in range(self.phi):
            sl = self.data[j]
            if not np.any(sl):
                continue
            for i, pj in enumerate(t.powers[(j * k) % self.m]):
                if pj:
                    out[i] = out[i] + _obj(sl) * pj
        return CycMatrix(self.m, out, self.den)

    def conj(self) -> "CycMatrix":
        return self.galois(-1)

    def dagger(self) -> "CycMatrix":
        return self.conj().transpose()

    def submatrix(self, rows, cols) -> "CycMatrix":
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        return CycMatrix(self.m, self.data[:, rows][:, :, cols], self.den)

    def hstack(self, other: "CycMatrix") -> "CycMatrix":
        a, b = self._align(other)
        L = a.den * b.den // math.gcd(a.den, b.den)
        return CycMatrix(a.m, np.concatenate([_obj(a.data) * (L // a.den), _obj(b.data) * (L // b.den)], axis=2), L)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return (self - other).is_zero()

    def __repr__(self) -> str:
        return "CycMatrix(m=%d, shape=%s, den=%d)" % (self.m, self.shape, self.den)

    # modular bridge
    def residues(self, emb: Embeddings) -> "ModMat":
        if self.m != emb.m:
            if emb.m % self.m:
                raise ValueError("embedding conductor %d does not contain %d" % (emb.m, self.m))
            return self.coerce(emb.m).residues(emb)
        tab = emb._power_table()
        r, c = self.shape
        res = np.zeros((len(emb), r, c), dtype=np.int64)
        for e, (p, _) in enumerate(emb.items):
            acc = np.zeros((r, c), dtype=np.int64)
            for j in range(self.phi):
                sl = self.data[j]
                if not np.any(sl):
                    continue
                slm = (sl % p).astype(np.int64) if sl.dtype == object else sl % p
                acc = (acc + slm * int(tab[e, j])) % p
            res[e] = acc
        return ModMat(emb, res, self.den, self.l1_rowbound_log2())


def _risky(a: CycMatrix, b: CycMatrix) -> bool:
    if a.data.dtype == object or b.data.dtype == object:
        return True
    if a.data.size == 0:
        return False
    return max(int(np.abs(a.data).max()), int(np.abs(b.data).max())) >= (1 << 61)


# ---------------------------------------------------------------------------
# residue matrices with certification bound

class ModMat:
    """Residues of den*M at a set of embeddings, with log2 bound of its row-sum norm."""

    __slots__ = ("emb", "res", "den", "logb")

    def __init__(self, emb: Embeddings, res: np.ndarray, den: int, logb: float):
        self.emb = emb
        self.res = res
        self.den = int(den)
        self.logb = float(logb)

    @property
    def shape(self) -> tuple[int, int]:
        return self.res.shape[1], self.res.shape[2]

    @classmethod
    def identity(cls, emb: Embeddings, n: int) -> "ModMat":
        res = np.broadcast_to(np.eye(n, dtype=np.int64), (len(emb), n, n)).copy()
        return cls(emb, res, 1, 0.0)

    def __matmul__(self, other: "ModMat") -> "ModMat":
        out = np.empty((len(self.emb), self.shape[0], other.shape[1]), dtype=np.int64)
        for e, (p, _) in enumerate(self.emb.items):
            out[e] = kernels.matmul_mod(self.res[e], other.res[e], p)
        return ModMat(self.emb, out, self.den * other.den, self.logb + other.logb)

    def _combine(self, other: "ModMat", sign: int) -> "ModMat":
        L = self.den * other.den // math.gcd(self.den, other.den)
        fa, fb = L // self.den, L // other.den
        pv = self.emb.pvec[:, None, None]
        ra = np.array([fa % int(p) for p in self.emb.pvec], dtype=np.int64)[:, None, None]
        rb = np.array([fb % int(p) for p in self.emb.pvec], dtype=np.int64)[:, None, None]
        res = ((self.res * ra) % pv + sign * ((other.res * rb) % pv)) % pv
        b = math.log2(fa * 2.0 ** self.logb + fb * 2.0 ** other.logb) if (self.logb < 1000 and other.logb < 1000) \
            else max(self.logb + math.log2(fa), other.logb + math.log2(fb)) + 1
        return ModMat(self.emb, res, L, b)

    def __add__(self, other: "ModMat") -> "ModMat":
        return self._combine(other, 1)

    def __sub__(self, other: "ModMat") -> "ModMat":
        return self._combine(other, -1)

    def __neg__(self) -> "ModMat":
        return ModMat(self.emb, (-self.res) % self.emb.pvec[:, None, None], self.den, self.logb)

    def scale(self, x) -> "ModMat":
        x = cyc(x, self.emb.m)
        v = self.emb.eval_scalar(x)
        pv = self.emb.pvec
        res = (self.res * v[:, None, None]) % pv[:, None, None]
        l1 = x.l1()
        return ModMat(self.emb, res, self.den * x.den, self.logb + (math.log2(l1) if l1 > 1 else 0.0))

    def shift(self, x) -> "ModMat":
        """M + x * id."""
        n = self.shape[0]
        return self + ModMat.identity(self.emb, n).scale(x)

    def power(self, k: int) -> "ModMat":
        out = ModMat.identity(self.emb, self.shape[0])
        for _ in range(k):
            out = out @ self
        return out

    def zero_residues(self) -> bool:
        return not np.any(self.res)

    def certified(self) -> bool:
        return self.emb.log2_modulus > self.logb + 1.0

    def first_nonzero(self) -> tuple[int, int] | None:
        nz = np.argwhere(np.any(self.res != 0, axis=0))
        if nz.size == 0:
            return None
        return int(nz[0][0]), int(nz[0][1])

    def rank(self, e: int = 0) -> int:
        p = self.emb.items[e][0]
        return kernels.rank_mod(self.res[e], p)


def certify_zero(build: Callable[[Embeddings], ModMat], m: int, max_primes: int = 64) -> tuple[bool, dict]:
    """Exact zero test of a matrix expression built by ``build(emb)``.

    Returns (is_zero, info).  A non-zero residue proves non-vanishing; vanishing
    is proved once the product of the primes exceeds the norm bound.
    """
    n = 1
    while True:
        emb = Embeddings(m, n)
        M = build(emb)
        if not M.zero_residues():
            return False, {"witness": M.first_nonzero(), "primes": n, "bound_log2": M.logb}
        if M.certified():
            return True, {"primes": n, "bound_log2": M.logb}
        need = int(math.ceil((M.logb + 2.0) / PRIME_BITS))
        if need > max_primes:
            raise RuntimeError("certification bound too large (%.0f bits)" % M.logb)
        n = max(need, n + 1)


def exact_equal(A: CycMatrix, B: CycMatrix) -> bool:
    return A.shape == B.shape and (A - B).is_zero()


# ---------------------------------------------------------------------------
# modular rank

def modular_rank(M, m: int | None = None, nprimes: int = 2) -> tuple[int, list[int]]:
    """Rank over F_p at one embedding of each of ``nprimes`` primes.

    Each value is a certified lower bound of the true rank (reduction can only
    lose rank); the maximum is returned with the individual values.
    """
    if isinstance(M, CycMatrix):
        emb = Embeddings(M.m if m is None else m, nprimes)
        MM = M.residues(emb)
    else:
        MM = M
    ranks = []
    seen = set()
    for e, (p, _) in enumerate(MM.emb.items):
        if p in seen:
            continue
        seen.add(p)
        ranks.append(MM.rank(e))
    return max(ranks), ranks


# ---------------------------------------------------------------------------
# reconstruction

def _vandermonde_inverse(emb_prime: int, r: int, m: int) -> np.ndarray:
    t = table(m)
    phi = t.phi
    V = np.empty((phi, phi), dtype=np.int64)
    for a, k in enumerate(t.units):
        w = pow(r, k, emb_prime)
        v = 1
        for j in range(phi):
            V[a, j] = v
            v = v * w % emb_prime
    aug = np.concatenate([V, np.eye(phi, dtype=np.int64)], axis=1)
    R, piv = kernels.rref_mod(aug, emb_prime, phi)
    if len(piv) != phi:
        raise ArithmeticError("singular Vandermonde")
    return R[:, phi:]


def _rat_recon(a: int, M: int) -> Fraction | None:
    """Rational reconstruction of a mod M with |num|, den <= sqrt(M/2)."""
    a %= M
    bound = math.isqrt(M // 2)
    r0, r1 = M, a
    s0, s1 = 0, 1
    while r1 > bound:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        s0, s1 = s1, s0 - qq * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _lift(coeff_by_prime: list[np.ndarray], primes: list[int]) -> np.ndarray | None:
    """CRT + rational reconstruction of integer arrays; returns object array of Fractions."""
    M = 1
    X = np.zeros(coeff_by_prime[0].shape, dtype=object)
    for arr, p in zip(coeff_by_prime, primes):
        a = _obj(arr)
        t = ((a - X) % p) * pow(M % p, p - 2, p) % p
        X = X + M * t
        M *= p
    flat = X.ravel()
    out = np.empty(flat.shape, dtype=object)
    den = 1
    half = M // 2
    for i, x in enumerate(flat):
        xs = int(x) * den % M
        if xs > half:
            xs -= M
        if abs(xs) <= math.isqrt(M // 2):
            out[i] = Fraction(xs, den)
            continue
        f = _rat_recon(int(x), M)
        if f is None:
            return None
        out[i] = f
        den = den * f.denominator // math.gcd(den, f.denominator)
    return out.reshape(X.shape)


def _fractions_to_cycmatrix(m: int, fr: np.ndarray) -> CycMatrix:
    """fr: object array (phi, r, c) of Fractions."""
    den = 1
    for f in fr.flat:
        den = den * f.denominator // math.gcd(den, f.denominator)
    data = np.vectorize(lambda f: int(f * den), otypes=[object])(fr) if fr.size else fr.astype(np.int64)
    return CycMatrix(m, data, den)


class ReconstructionError(ArithmeticError):
    pass


def _modular_reconstruct(m: int, solve: Callable[[np.ndarray, int], tuple | None],
                         inputs: Callable[[Embeddings], list[np.ndarray]],
                         verify: Callable[[CycMatrix], bool], start: int = 2, max_primes: int = 40):
    """Generic driver.

    ``inputs(emb)`` gives per-embedding residue matrices; ``solve(res_list, p)`` returns
    (key, array) where ``key`` identifies the canonical shape (pivot data) and ``array``
    the modular answer at that embedding.  Primes whose key disagrees with the best
    key (largest, then lexicographically smallest) are discarded as unlucky.
    """
    t = table(m)
    phi = t.phi
    collected: list[tuple[int, tuple, np.ndarray]] = []
    n = start
    used = 0
    last = None
    while used < max_primes:
        emb = Embeddings(m, n - used, skip=used)
        mats = inputs(emb)
        for pi, (p, r) in enumerate(emb.primes):
            vals = []
            key = None
            ok = True
            for a in range(phi):
                e = pi * phi + a
                out = solve([x[e] for x in mats], p)
                if out is None:
                    ok = False
                    break
                k, arr = out
                if key is None:
                    key = k
                elif k != key:
                    ok = False
                    break
                vals.append(arr)
            if not ok:
                continue
            Y = np.stack(vals)  # (phi, ...)
            shp = Y.shape[1:]
            Vinv = _vandermonde_inverse(p, r, m)
            C = kernels.matmul_mod(Vinv, Y.reshape(phi, -1), p).reshape((phi,) + shp)
            collected.append((p, key, C))
        used = n
        if not collected:
            n += 2
            continue
        best = max(collected, key=lambda z: _keyorder(z[1]))[1]
        good = [(p, C) for p, k, C in collected if k == best]
        fr = _lift([C for _, C in good], [p for p, _ in good])
        if fr is not None:
            cand = _fractions_to_cycmatrix(m, fr)
            if last is not None and exact_equal(cand, last) and verify(cand):
                return best, cand
            if last is None and verify(cand):
                return best, cand
            last = cand
        n = used + max(2, used // 2)
    raise ReconstructionError("modular reconstruction did not converge")


def _keyorder(key):
    rank, piv = key
    return (rank, [-x for x in piv])


def _rref_nullspace(mats: list[np.ndarray], p: int):
    A = mats[0]
    R, piv = kernels.rref_mod(A, p)
    n = A.shape[1]
    free = [c for c in range(n) if c not in set(piv)]
    K = np.zeros((n, len(free)), dtype=np.int64)
    for t_, f in enumerate(free):
        K[f, t_] = 1
        for i, c in enumerate(piv):
            K[c, t_] = (-R[i, f]) % p
    return (len(piv), tuple(piv)), K


def exact_nullspace(A: CycMatrix) -> CycMatrix:
    """Basis of the right kernel {x : A x = 0}, in reduced (free-variable identity) form."""
    r, n = A.shape
    if n == 0:
        return CycMatrix.zeros(A.m, 0, 0)

    def verify(K: CycMatrix) -> bool:
        if K.shape[1] == 0:
            return True
        ok, _ = certify_zero(lambda emb: A.residues(emb) @ K.residues(emb), A.m)
        return ok

    key, K = _modular_reconstruct(A.m, _rref_nullspace, lambda emb: [A.residues(emb).res], verify)
    rank = key[0]
    if K.shape[1] != n - rank:
        raise ReconstructionError("kernel dimension mismatch")
    return K


def exact_left_nullspace(A: CycMatrix) -> CycMatrix:
    """Rows y with y A = 0 (returned as a matrix whose rows are the vectors)."""
    return exact_nullspace(A.transpose()).transpose()


def _rref_solve(mats: list[np.ndarray], p: int):
    A, B = mats
    n = A.shape[1]
    aug = np.concatenate([A, B], axis=1)
    R, piv = kernels.rref_mod(aug, p, n)
    rank = len(piv)
    if np.any(R[rank:, n:]):
        return None
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        X[c] = R[i, n:]
    return (rank, tuple(piv)), X


def exact_solve(A: CycMatrix, B: CycMatrix) -> CycMatrix:
    """A particular solution X of A X = B (free variables set to zero)."""
    m = A.m * B.m // math.gcd(A.m, B.m)
    A2, B2 = A.coerce(m), B.coerce(m)

    # residues carry numerators only: numA X' = numB, X = X' * denA / denB
    def unscale(Xp: CycMatrix) -> CycMatrix:
        return CycMatrix(m, _obj(Xp.data) * A2.den, Xp.den * B2.den)

    def verify(Xp: CycMatrix) -> bool:
        X = unscale(Xp)
        ok, _ = certify_zero(lambda emb: A2.residues(emb) @ X.residues(emb) - B2.residues(emb), m)
        return ok

    _, Xp = _modular_reconstruct(m, _rref_solve, lambda emb: [A2.residues(emb).res, B2.residues(emb).res], verify)
    return unscale(Xp)


def exact_inverse(A: CycMatrix) -> CycMatrix:
    return exact_solve(A, CycMatrix.identity(A.m, A.shape[0]))


def det_modular(M: ModMat, e: int) -> int:
    """Determinant of the residue matrix at embedding e."""
    p = M.emb.items[e][0]
    A = np.array(M.res[e], dtype=np.int64) % p
    n = A.shape[0]
    det = 1
    A = A.copy()
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            A[[c, i]] = A[[i, c]]
            det = -det
        piv = int(A[c, c])
        det = det * piv % p
        inv = pow(piv, p - 2, p)
        col = A[c + 1:, c] * inv % p
        A[c + 1:] = (A[c + 1:] - (col[:, None] * A[c][None, :]) % p) % p
    return det % p
