"""Exact arithmetic in cyclotomic fields Q(zeta_m) and truncated power series over them.

A CycScalar stores integer numerators on the power basis 1, z, ..., z^(phi-1)
(z = exp(2 pi i / m)) together with one positive common denominator.  Values
with different conductors are coerced to the lcm of the two conductors.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


# ---------------------------------------------------------------------------
# cyclotomic tables

@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the m-th cyclotomic polynomial."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(out) - 1, -1, -1):
        c = a[k + len(b) - 1] // lead
        out[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    assert not any(a[: len(b) - 1]), "inexact cyclotomic division"
    return out


class _Table:
    """Per-conductor data: phi, units, and reduction of z^k to the power basis."""

    def __init__(self, m: int):
        self.m = m
        self.poly = cyclotomic_poly(m)
        self.phi = len(self.poly) - 1
        self.units = tuple(k for k in range(1, m + 1) if math.gcd(k, m) == 1) if m > 1 else (1,)
        pw = []
        for k in range(m):
            v = [0] * (k + 1)
            v[k] = 1
            pw.append(tuple(self.reduce(v)))
        self.powers = tuple(pw)

    def reduce(self, a: list[int]) -> list[int]:
        phi, poly = self.phi, self.poly
        a = list(a)
        for k in range(len(a) - 1, phi - 1, -1):
            c = a[k]
            if c:
                base = k - phi
                for j in range(phi):
                    pj = poly[j]
                    if pj:
                        a[base + j] -= c * pj
                a[k] = 0
        if len(a) < phi:
            a.extend([0] * (phi - len(a)))
        return a[:phi]


@lru_cache(maxsize=None)
def table(m: int) -> _Table:
    return _Table(m)


def euler_phi(m: int) -> int:
    return table(m).phi


# ---------------------------------------------------------------------------
# CycScalar

class CycScalar:
    """Exact element of Q(zeta_m); immutable."""

    __slots__ = ("m", "num", "den", "_hash")

    def __init__(self, m: int, num: Sequence[int], den: int = 1, _canon: bool = False):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if not _canon:
            num = [int(x) for x in num]
            if den < 0:
                num = [-x for x in num]
                den = -den
            g = den
            for x in num:
                if g == 1:
                    break
                g = math.gcd(g, x)
            if g > 1:
                num = [x // g for x in num]
                den //= g
            num = tuple(num)
            if not any(num):
                den = 1
        self.m = m
        self.num = num
        self.den = den
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, m: int = 1) -> "CycScalar":
        return cls(m, (0,) * table(m).phi, 1, True)

    @classmethod
    def from_rational(cls, x, m: int = 1) -> "CycScalar":
        x = Fraction(x)
        phi = table(m).phi
        return cls(m, (x.numerator,) + (0,) * (phi - 1), x.denominator)

    @classmethod
    def root(cls, e: int, m: int) -> "CycScalar":
        """zeta_m ** e."""
        return cls(m, table(m).powers[e % m], 1, True)

    @classmethod
    def from_json(cls, obj: dict) -> "CycScalar":
        m = int(obj["m"])
        phi = table(m).phi
        fr = [Fraction(0)] * phi
        for j, s in obj["coeffs"]:
            fr[int(j)] = Fraction(s)
        return _from_fractions(m, fr)

    # basic views
    @property
    def phi(self) -> int:
        return len(self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def coeffs(self) -> dict[int, Fraction]:
        return {j: Fraction(c, self.den) for j, c in enumerate(self.num) if c}

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational: %r" % (self,))
        return Fraction(self.num[0], self.den)

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.m)
        return sum(c * z ** j for j, c in enumerate(self.num)) / self.den

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [[j, str(c)] for j, c in sorted(self.coeffs().items())]}

    def l1(self) -> int:
        """Sum of |numerators|: bounds |sigma(den*x)| for every complex embedding."""
        return sum(abs(c) for c in self.num)

    # conductor handling
    def coerce(self, M: int) -> "CycScalar":
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError("conductor %d does not divide %d" % (self.m, M))
        t = table(M)
        step = M // self.m
        acc = [0] * t.phi
        for j, c in enumerate(self.num):
            if c:
                for i, pj in enumerate(t.powers[(j * step) % M]):
                    if pj:
                        acc[i] += c * pj
        return CycScalar(M, acc, self.den)

    def _align(self, other) -> tuple["CycScalar", "CycScalar"]:
        if not isinstance(other, CycScalar):
            other = CycScalar.from_rational(other, self.m)
        if other.m == self.m:
            return self, other
        M = self.m * other.m // math.gcd(self.m, other.m)
        return self.coerce(M), other.coerce(M)

    # arithmetic
    def __add__(self, other) -> "CycScalar":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Fraction(other)
            num = list(self.num)
            num[0] = num[0] * other.denominator + other.numerator * self.den
            return CycScalar(self.m, [num[0]] + [x * other.denominator for x in self.num[1:]],
                             self.den * other.denominator)
        a, b = self._align(other)
        if a.den == b.den:
            return CycScalar(a.m, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CycScalar(a.m, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> "CycScalar":
        return CycScalar(self.m, tuple(-x for x in self.num), self.den, True)

    def __sub__(self, other) -> "CycScalar":
        return self + (-other)

    def __rsub__(self, other) -> "CycScalar":
        return (-self) + other

    def __mul__(self, other) -> "CycScalar":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Fraction(other)
            return CycScalar(self.m, [x * other.numerator for x in self.num], self.den * other.denominator)
        a, b = self._align(other)
        t = table(a.m)
        phi = t.phi
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        return CycScalar(a.m, t.reduce(prod), a.den * b.den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycScalar":
        """The automorphism zeta -> zeta^k (k coprime to m)."""
        t = table(self.m)
        acc = [0] * t.phi
        for j, c in enumerate(self.num):
            if c:
                for i, pj in enumerate(t.powers[(j * k) % self.m]):
                    if pj:
                        acc[i] += c * pj
        return CycScalar(self.m, acc, self.den)

    def conj(self) -> "CycScalar":
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Field norm to Q."""
        acc = CycScalar.from_rational(1, self.m)
        for k in table(self.m).units:
            acc = acc * self.galois(k)
        return acc.rational()

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic scalar")
        if self.is_rational():
            return CycScalar.from_rational(1 / self.rational(), self.m)
        acc = CycScalar.from_rational(1, self.m)
        for k in table(self.m).units:
            if k % self.m != 1:
                acc = acc * self.galois(k)
        n = (acc * self).rational()
        return acc * (1 / n)

    def __truediv__(self, other) -> "CycScalar":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CycScalar":
        return CycScalar.from_rational(other, self.m) * self.inverse()

    def __pow__(self, e: int) -> "CycScalar":
        if e < 0:
            return self.inverse() ** (-e)
        result = CycScalar.from_rational(1, self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, CycScalar):
            return NotImplemented
        a, b = self._align(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self) -> int:
        if self._hash is None:
            # hash through the conductor-independent complex value class is unsafe; use a
            # canonical minimal-conductor form instead
            c = self.minimal()
            self._hash = hash((c.m, c.num, c.den))
        return self._hash

    def minimal(self) -> "CycScalar":
        """Same value written over the smallest conductor dividing m that contains it."""
        for d in sorted(d for d in range(1, self.m + 1) if self.m % d == 0):
            if d == self.m:
                return self
            cand = _descend(self, d)
            if cand is not None:
                return cand
        return self

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for j, c in sorted(self.coeffs().items()):
            terms.append(str(c) if j == 0 else "%s*z%d^%d" % (c, self.m, j))
        return " + ".join(terms)


def _descend(x: CycScalar, d: int) -> CycScalar | None:
    """Try to write x over conductor d (d | m); None if x is not in Q(zeta_d)."""
    t = table(d)
    cand = CycScalar(d, [0] * t.phi, 1)
    # solve by matching: the image of the power basis of Q(zeta_d) in Q(zeta_m)
    step = x.m // d
    T = table(x.m)
    # express x in terms of z_m^{step*j}: build the d-basis images and do elimination on rationals
    rows = [list(T.powers[(j * step) % x.m]) for j in range(t.phi)]
    target = [Fraction(c, x.den) for c in x.num]
    sol = _solve_rational(rows, target)
    if sol is None:
        return None
    den = 1
    for s in sol:
        den = den * s.denominator // math.gcd(den, s.denominator)
    cand = CycScalar(d, [int(s * den) for s in sol], den)
    return cand


def _solve_rational(rows: list[list[int]], target: list[Fraction]) -> list[Fraction] | None:
    """Find c with sum_j c_j rows[j] == target (rows linearly independent)."""
    n = len(rows)
    L = len(target)
    # augmented system A^T c = target, A^T is L x n
    M = [[Fraction(rows[j][i]) for j in range(n)] + [target[i]] for i in range(L)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, L) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(L):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, L):
        if M[i][n] != 0:
            return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = M[i][n]
    return sol


def _from_fractions(m: int, fr: Iterable[Fraction]) -> CycScalar:
    fr = list(fr)
    den = 1
    for f in fr:
        den = den * f.denominator // math.gcd(den, f.denominator)
    return CycScalar(m, [int(f * den) for f in fr], den)


def cyc(x, m: int = 1) -> CycScalar:
    """Coerce an int / Fraction / CycScalar to CycScalar."""
    if isinstance(x, CycScalar):
        return x
    return CycScalar.from_rational(x, m)


def root_of_unity(e: int, m: int) -> CycScalar:
    return CycScalar.root(e, m)


def cyc_from_angle(numerator: int, denominator: int) -> CycScalar:
    """exp(i pi numerator/denominator), written over the least conductor holding it."""
    if denominator <= 0:
        raise ValueError("denominator must be positive")
    g = math.gcd(numerator, 2 * denominator)
    m = 2 * denominator // g
    return CycScalar.root(numerator // g, m)


def common_conductor(*xs: CycScalar) -> int:
    m = 1
    for x in xs:
        m = m * x.m // math.gcd(m, x.m)
    return m


def sqrt_root(x: CycScalar) -> CycScalar:
    """Square root of a root of unity zeta_m^f: zeta_{2m}^f, or zeta_m^{f/2} if f is even.

    Exponent f is taken in [0, m); this is the fixed branch used throughout.
    """
    f = root_exponent(x)
    if f is None:
        raise ValueError("not a root of unity")
    m = x.m
    if f % 2 == 0:
        return CycScalar.root(f // 2, m)
    return CycScalar.root(f, 2 * m)


def root_exponent(x: CycScalar) -> int | None:
    """f in [0, m) with x == zeta_m^f, or None."""
    if x.den != 1:
        return None
    t = table(x.m)
    for f in range(x.m):
        if t.powers[f] == x.num:
            return f
    return None


# ---------------------------------------------------------------------------
# q-combinatorics

def q_int(n: int, q: CycScalar) -> CycScalar:
    """[n] = (q^n - q^-n)/(q - q^-1), evaluated as the Laurent polynomial sum."""
    if n < 0:
        return -q_int(-n, q)
    acc = CycScalar.zero(q.m)
    qi = q.inverse()
    term = q ** (n - 1) if n else acc
    q2 = qi * qi
    for _ in range(n):
        acc = acc + term
        term = term * q2
    return acc


def q_int_ratio(n: int, q: CycScalar) -> CycScalar:
    """[n] via the defining ratio; fails at q = +-1."""
    return (q ** n - q ** (-n)) / (q - q.inverse())


def q_fact(n: int, q: CycScalar) -> CycScalar:
    acc = cyc(1, q.m)
    for k in range(1, n + 1):
        acc = acc * q_int(k, q)
    return acc


def q_binom(m: int, j: int, q: CycScalar) -> CycScalar:
    """[m choose j] = [m]!/([j]![m-j]!); raises ZeroDivisionError if [j]![m-j]! vanishes."""
    if j < 0 or j > m:
        return CycScalar.zero(q.m)
    den = q_fact(j, q) * q_fact(m - j, q)
    if den.is_zero():
        raise ZeroDivisionError("q-factorial vanishes at this root of unity; use q_binom_limit")
    return q_fact(m, q) / den


def q_binom_poly(m: int, j: int, q: CycScalar) -> CycScalar:
    """[m choose j] through the Laurent-polynomial recursion; defined at every q.

    Negative top arguments use [m choose j] = (-1)^j [j-1-m choose j].
    """
    if j < 0:
        return CycScalar.zero(q.m)
    if m < 0:
        v = q_binom_poly(j - 1 - m, j, q)
        return v if j % 2 == 0 else -v
    if j > m:
        return CycScalar.zero(q.m)
    return _qbinom_cached(m, j, q)


@lru_cache(maxsize=4096)
def _qbinom_cached(m: int, j: int, q: CycScalar) -> CycScalar:
    if j == 0 or j == m:
        return cyc(1, q.m)
    # [m, j] = q^j [m-1, j] + q^-(m-j) [m-1, j-1]
    return q ** j * _qbinom_cached(m - 1, j, q) + q ** (j - m) * _qbinom_cached(m - 1, j - 1, q)


def root_order(x: CycScalar) -> int | None:
    f = root_exponent(x)
    if f is None:
        return None
    return x.m // math.gcd(f, x.m)


def q_binom_limit(top: int, k: int, q_c: CycScalar, P: int, order: int = 4) -> CycScalar:
    """lim_{q -> q_c} [top choose k] by dividing epsilon-series of numerator and denominator.

    Requires q_c^2 to have order exactly P.
    """
    o = root_order(q_c * q_c)
    if o != P:
        raise ValueError("q_c^2 has order %s, not %d" % (o, P))
    if k < 0 or k > top:
        return CycScalar.zero(q_c.m)
    num = SeriesScalar.one(q_c.m, order)
    den = SeriesScalar.one(q_c.m, order)
    for r in range(1, k + 1):
        num = num * _q_int_series(top - k + r, q_c, order)
        den = den * _q_int_series(r, q_c, order)
    res = num / den
    if res.val < 0:
        raise ArithmeticError("limit does not exist")
    return res.coeff(0)


def q_binom_limit_closed(top: int, k: int, q_c: CycScalar, P: int) -> CycScalar:
    """Closed forms for the two limiting shapes used with q_c^{2P} = 1.

    [P s + a choose P] -> s q_c^{Pa} (s odd) or s q_c^{Pa + P^2} (s even), 0 <= a < P;
    [P + a choose k] with k < P -> 0 if a < k, q_c^{Pk} [a choose k] if k <= a.
    """
    if k == P:
        s, a = divmod(top, P)
        val = s * q_c ** (P * a)
        if s % 2 == 0:
            val = val * q_c ** (P * P)
        return val
    if 0 <= k < P and P <= top < 2 * P:
        a = top - P
        if a < k:
            return CycScalar.zero(q_c.m)
        return q_c ** (P * k) * q_binom_poly(a, k, q_c)
    raise ValueError("no closed form for this shape")


def _q_int_series(n: int, q_c: CycScalar, order: int) -> "SeriesScalar":
    """[n] as a series in eps = q - q_c, through the sum q^{n-1-2j}."""
    acc = SeriesScalar.zero(q_c.m, order)
    for j in range(n):
        acc = acc + power_series(q_c, n - 1 - 2 * j, order)
    return acc


# ---------------------------------------------------------------------------
# truncated series in eps

class SeriesTruncationError(ArithmeticError):
    pass


class SeriesScalar:
    """sum_{i} coeffs[i] eps^(val+i), exact through eps^(val+len(coeffs)-1)."""

    __slots__ = ("m", "val", "coeffs")

    def __init__(self, m: int, val: int, coeffs: Sequence[CycScalar]):
        coeffs = [cyc(c, m) for c in coeffs]
        # strip leading zeros, keeping absolute precision
        i = 0
        while i < len(coeffs) and coeffs[i].is_zero():
            i += 1
        if i == len(coeffs):
            self.m, self.val, self.coeffs = m, val + len(coeffs), []
            return
        self.m = m
        self.val = val + i
        self.coeffs = coeffs[i:]

    @classmethod
    def zero(cls, m: int, prec: int) -> "SeriesScalar":
        return cls(m, prec, [])

    @classmethod
    def one(cls, m: int, order: int) -> "SeriesScalar":
        return cls.constant(cyc(1, m), order)

    @classmethod
    def constant(cls, c: CycScalar, order: int) -> "SeriesScalar":
        return cls(c.m, 0, [c] + [CycScalar.zero(c.m)] * order)

    @property
    def prec(self) -> int:
        """Absolute precision: exact for all exponents < prec."""
        return self.val + len(self.coeffs)

    @property
    def T(self) -> int:
        return max(len(self.coeffs) - 1, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, e: int) -> CycScalar:
        if e >= self.prec:
            raise SeriesTruncationError("coefficient of eps^%d beyond precision %d" % (e, self.prec))
        i = e - self.val
        if i < 0 or not self.coeffs:
            return CycScalar.zero(self.m)
        return self.coeffs[i]

    def _with_prec(self, prec: int) -> list[CycScalar]:
        return [self.coeff(e) for e in range(self.val, prec)] if self.coeffs else []

    def __add__(self, other) -> "SeriesScalar":
        if not isinstance(other, SeriesScalar):
            other = SeriesScalar.constant(cyc(other, self.m), max(self.prec, 1))
        m = common_conductor(cyc(1, self.m), cyc(1, other.m))
        prec = min(self.prec, other.prec)
        lo = min(self.val if self.coeffs else prec, other.val if other.coeffs else prec)
        out = []
        for e in range(lo, prec):
            a = self.coeff(e) if self.coeffs else CycScalar.zero(m)
            b = other.coeff(e) if other.coeffs else CycScalar.zero(m)
            out.append(a + b)
        return SeriesScalar(m, lo, out)

    __radd__ = __add__

    def __neg__(self) -> "SeriesScalar":
        return SeriesScalar(self.m, self.val, [-c for c in self.coeffs]) if self.coeffs else self

    def __sub__(self, other) -> "SeriesScalar":
        return self + (-other)

    def __rsub__(self, other) -> "SeriesScalar":
        return (-self) + other

    def __mul__(self, other) -> "SeriesScalar":
        if not isinstance(other, SeriesScalar):
            c = cyc(other, self.m)
            if not self.coeffs:
                return self
            return SeriesScalar(self.m, self.val, [x * c for x in self.coeffs])
        m = common_conductor(cyc(1, self.m), cyc(1, other.m))
        if not self.coeffs or not other.coeffs:
            # precision of a product with a zero series
            p = (self.prec + (other.val if other.coeffs else other.prec)) if not self.coeffs else \
                (other.prec + self.val)
            return SeriesScalar.zero(m, p)
        val = self.val + other.val
        n = min(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            acc = CycScalar.zero(m)
            for j in range(i + 1):
                acc = acc + self.coeffs[j] * other.coeffs[i - j]
            out.append(acc)
        return SeriesScalar(m, val, out)

    __rmul__ = __mul__

    def inverse(self) -> "SeriesScalar":
        if not self.coeffs:
            raise SeriesTruncationError("inverse of a series that vanishes through its precision")
        n = len(self.coeffs)
        a0inv = self.coeffs[0].inverse()
        out = [a0inv]
        for i in range(1, n):
            acc = CycScalar.zero(self.m)
            for j in range(1, i + 1):
                acc = acc + self.coeffs[j] * out[i - j]
            out.append(-acc * a0inv)
        return SeriesScalar(self.m, -self.val, out)

    def __truediv__(self, other) -> "SeriesScalar":
        if not isinstance(other, SeriesScalar):
            return self * cyc(other, self.m).inverse()
        return self * other.inverse()

    def to_json(self) -> dict:
        return {"val": self.val, "T": self.T, "coeffs": [c.to_json() for c in self.coeffs]}

    def __repr__(self) -> str:
        if not self.coeffs:
            return "O(eps^%d)" % self.prec
        parts = ["(%r)*eps^%d" % (c, self.val + i) for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(parts) + " + O(eps^%d)" % self.prec


def gen_binom(s: Fraction, n: int) -> Fraction:
    """Generalized binomial coefficient binom(s, n)."""
    acc = Fraction(1)
    for i in range(n):
        acc = acc * (s - i) / (i + 1)
    return acc


def power_series(q_c: CycScalar, s, order: int, base: CycScalar | None = None) -> SeriesScalar:
    """(q_c + eps)^s through eps^order, s integer or Fraction.

    For non-integer s the value at eps = 0 is ``base`` (a fixed branch of q_c^s).
    """
    s = Fraction(s)
    if base is None:
        if s.denominator != 1:
            raise ValueError("non-integer power needs an explicit branch")
        base = q_c ** int(s)
    m = common_conductor(base, q_c)
    qinv = q_c.inverse()
    coeffs = []
    qp = cyc(1, m)
    for n in range(order + 1):
        coeffs.append(base * qp * gen_binom(s, n))
        qp = qp * qinv
    return SeriesScalar(m, 0, coeffs)


def series_invert(A: list[list[SeriesScalar]]) -> tuple[list[list[SeriesScalar]], int]:
    """Inverse of a square matrix of Laurent series by Gauss-Jordan with minimal-valuation pivots.

    Returns (inverse, iota) with iota = -(minimal valuation over the entries of the inverse).
    """
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("square matrix required")
    m = 1
    prec = None
    for r in A:
        for x in r:
            m = m * x.m // math.gcd(m, x.m)
            prec = x.prec if prec is None else min(prec, x.prec)
    W = [list(r) + [SeriesScalar.constant(cyc(1 if i == j else 0, m), max(prec, 1)) for j in range(n)]
         for i, r in enumerate(A)]
    for col in range(n):
        best = None
        for i in range(col, n):
            x = W[i][col]
            if x.coeffs and (best is None or x.val < W[best][col].val):
                best = i
        if best is None:
            raise SeriesTruncationError("elimination consumed all carried orders; retry with larger T")
        W[col], W[best] = W[best], W[col]
        pinv = W[col][col].inverse()
        W[col] = [x * pinv for x in W[col]]
        for i in range(n):
            if i != col:
                f = W[i][col]
                if f.coeffs:
                    W[i] = [a - f * b for a, b in zip(W[i], W[col])]
    inv = [r[n:] for r in W]
    vals = [x.val for r in inv for x in r if x.coeffs]
    iota = -min(vals) if vals else 0
    return inv, max(iota, 0)
