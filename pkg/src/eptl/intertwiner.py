"""The map from link states with d defects to the spin sector S^z = d/2.

Each arc (i, j) of a link state contributes the factor
    v^(j-i) r sigma^-_j + v^-(j-i) r^-1 sigma^-_i,     r = (-q)^(1/2) = i q^(1/2),
and the column of a link state is the product of its arc factors applied to
the all-up state.  Arcs are read from their counter-clockwise endpoint i, so
that i+1 <= j <= N+i-1 with sites taken mod N.

Every entry is a single monomial c * q^(e/2) with c in Q(v, i), which makes the
expansion around a critical q exact: (q_c + eps)^(e/2) is expanded by the
binomial series on the fixed branch of q_c^(1/2).
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from . import linkstates as ls
from .eptl_rep import LoopParams, OmegaRep
from .linalg import (CycMatrix, Embeddings, certify_zero, det_modular, exact_inverse,
                     exact_left_nullspace, exact_nullspace, exact_solve, modular_rank, ModMat)
from .operators import hamiltonian, hamiltonian_q_derivative
from .scalars import (CycScalar, SeriesScalar, common_conductor, cyc, cyc_from_angle, gen_binom,
                      series_invert)
from .xxz_uq import SpinChain, SpinVector, popcount, sector_index, sector_states


def angle_bracket(x2: int, qh: CycScalar, v: CycScalar, N: int) -> CycScalar:
    """<x> = q^x v^N - q^-x v^-N with x = x2/2 (x2 an integer)."""
    return qh ** x2 * v ** N - qh ** (-x2) * v ** (-N)


class IntertwinerMatrix:
    """Matrix of the intertwiner: rows are spin states of the sector, columns link states."""

    def __init__(self, N: int, d: int, qh: CycScalar, v: CycScalar):
        if (N - d) % 2 or not 0 <= d <= N:
            raise ValueError("need 0 <= d <= N and d = N mod 2")
        self.N, self.d = N, d
        self.m = common_conductor(qh, v, cyc_from_angle(1, 2))
        self.qh = qh.coerce(self.m)
        self.v = v.coerce(self.m)
        self.cols = ls.enumerate_states(N, d)
        self.rows = sector_states(N, d)
        self.row_index = sector_index(N, d)
        self.arcs = (N - d) // 2
        # monomials: (row, col) -> (coefficient without q, exponent of q^(1/2))
        self.terms = self._build()

    def _build(self) -> dict:
        N = self.N
        v = self.v
        i_unit = cyc_from_angle(1, 2).coerce(self.m)
        out = {}
        for c, w in enumerate(self.cols):
            factors = []
            for opener, span in w.arcs():
                i = opener + 1
                j = i + span
                site_i, site_j = (i - 1) % N, (j - 1) % N
                # (bit, coefficient, exponent of q^(1/2)) for the two choices
                factors.append(((1 << site_j, v ** span * i_unit, 1),
                                (1 << site_i, v ** (-span) * i_unit.inverse(), -1)))
            states = [(0, cyc(1, self.m), 0)]
            for f in factors:
                states = [(s | b, x * y, e + ee) for s, x, e in states for b, y, ee in f]
            for s, x, e in states:
                r = self.row_index[s]
                if (r, c) in out:       # distinct choices always give distinct spin states
                    raise AssertionError("colliding monomials")
                out[(r, c)] = (x, e)
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def at(self, qh: CycScalar | None = None) -> CycMatrix:
        """Exact matrix at q = qh^2 (default: the construction point)."""
        qh = self.qh if qh is None else qh.coerce(common_conductor(qh, self.qh))
        m = common_conductor(qh, self.v, cyc_from_angle(1, 2))
        pw: dict = {}
        ent = {}
        for k, (x, e) in self.terms.items():
            p = pw.get(e)
            if p is None:
                p = pw[e] = qh ** e
            ent[k] = x * p
        return CycMatrix.from_entries(m, self.shape, ent)

    def normalization(self) -> int:
        """Exponent of q^(1/2) that makes every entry a polynomial in q^(1/2)."""
        return self.arcs

    def expansion(self, order: int, qh_c: CycScalar | None = None, normalized: bool = True) -> list[CycMatrix]:
        """[I_0, I_1, ..., I_order] of q^(norm/2) I(q) in powers of (q - q_c)."""
        qh_c = self.qh if qh_c is None else qh_c
        qc = qh_c * qh_c
        shift = self.normalization() if normalized else 0
        out = []
        for n in range(order + 1):
            cache: dict = {}
            ent = {}
            for k, (x, e) in self.terms.items():
                E = e + shift
                c = cache.get(E)
                if c is None:
                    # d^n/n! of q^(E/2) at q_c
                    c = cache[E] = qh_c ** E * qc ** (-n) * gen_binom(Fraction(E, 2), n)
                if not c.is_zero():
                    ent[k] = x * c
            out.append(CycMatrix.from_entries(self.m, self.shape, ent))
        return out

    def to_json(self) -> dict:
        M = self.at()
        return {"N": self.N, "d": self.d, "rows": self.rows, "cols": [w.string for w in self.cols],
                "entries": [[r, c, x.to_json()] for (r, c), x in sorted(M.entries().items())]}


def build_I(N: int, d: int, qh: CycScalar, v: CycScalar) -> IntertwinerMatrix:
    return IntertwinerMatrix(N, d, qh, v)


def omega_rep(N: int, d: int, qh: CycScalar, v: CycScalar) -> OmegaRep:
    q = qh * qh
    return OmegaRep(N, d, LoopParams.from_q(q, v, N=N))


def check_intertwining(N: int, d: int, qh: CycScalar, v: CycScalar) -> dict:
    """tau(g) I = I omega_d(g) for every generator g."""
    I = build_I(N, d, qh, v)
    ch = SpinChain(N, I.qh, I.v)
    rep = omega_rep(N, d, I.qh, I.v)
    Im = I.at()
    m = common_conductor(cyc(1, Im.m), cyc(1, rep.m))
    res = {}
    gens = ["e%d" % i for i in range(1, N + 1)] + ["O", "Oi"]
    for g in gens:
        if g == "O":
            tg = ch.omega(1)
        elif g == "Oi":
            tg = ch.omega(-1)
        else:
            tg = ch.ebar(int(g[1:]))
        A = tg.block(d)
        B = rep.generator(g)
        ok, _ = certify_zero(lambda emb: A.residues(emb) @ Im.residues(emb) - Im.residues(emb) @ B.residues(emb), m)
        res[g] = ok
    return {"N": N, "d": d, "generators": res, "pass": all(res.values())}


# ---------------------------------------------------------------------------
# determinant

def det_formula(N: int, d: int, qh: CycScalar, v: CycScalar) -> CycScalar:
    acc = cyc(1, qh.m)
    y = (N - d) // 2
    for k in range(1, y + 1):
        acc = acc * angle_bracket(2 * k + d, qh, v, N) ** comb(N, y - k)
    return acc


def det_check(N: int, d: int, qh: CycScalar, v: CycScalar) -> dict:
    """det I against the product formula, certified up to a unit factor u in {1, -1, i, -i}.

    den^n det(I) - u den^n prod is tested modulo split primes until the product of the
    primes exceeds a Hadamard-type bound on all complex conjugates.  |u| = 1 in every case,
    so the absolute values agree exactly; u itself is reported.
    """
    I = build_I(N, d, qh, v)
    M = I.at()
    n = M.shape[0]
    F = det_formula(N, d, I.qh, I.v).coerce(M.m)
    # |conjugates of den^n det| <= (row-sum bound)^n; |conjugates of prod| <= 2^(total exponent)
    logb = n * M.l1_rowbound_log2() + 1
    total = sum(comb(N, (N - d) // 2 - k) for k in range(1, (N - d) // 2 + 1))
    logb = max(logb, n * math.log2(max(M.den, 1)) + total + math.log2(max(F.l1(), 1))) + 2
    units = {"1": cyc(1, M.m), "-1": cyc(-1, M.m), "i": cyc_from_angle(1, 2).coerce(M.m),
             "-i": cyc_from_angle(-1, 2).coerce(M.m)}
    found = {}
    for name, u in units.items():
        G = F * u
        nprimes = 1
        while True:
            emb = Embeddings(M.m, nprimes)
            R = M.residues(emb)
            Fr = emb.eval_scalar(G)
            ok = True
            for e, (p, _) in enumerate(emb.items):
                lhs = det_modular(R, e)
                # residues of den*M give den^n det(M); G is G.num / G.den
                rhs = Fr[e] * pow(M.den, n, p) % p * pow(G.den, p - 2, p) % p
                if (lhs - rhs) % p:
                    ok = False
                    break
            if not ok:
                found[name] = False
                break
            if emb.log2_modulus > logb:
                found[name] = True
                break
            nprimes += 1
    ratio = [k for k, ok in found.items() if ok]
    zero = F.is_zero()
    return {"N": N, "d": d, "dim": n, "formula_zero": zero,
            "ratio": None if zero or not ratio else ratio[0],
            "pass": bool(ratio)}


def spectral_coincidence(N: int, d: int, qh: CycScalar, v: CycScalar) -> dict:
    """spec H_tau = spec H_loop on the sector, with multiplicities, by two routes.

    similarity: H_tau I = I H_loop exactly and det I != 0, so the two are conjugate.
    power traces: tr H_tau^k = tr H_loop^k for k <= dim, certified exactly; in
    characteristic 0 these fix the characteristic polynomial.
    """
    I = build_I(N, d, qh, v)
    ch = SpinChain(N, I.qh, I.v)
    Ht = ch.hamiltonian().block(d)
    Hl = hamiltonian(omega_rep(N, d, I.qh, I.v))
    Im = I.at()
    m = common_conductor(cyc(1, Im.m), cyc(1, Hl.m), cyc(1, Ht.m))
    inter, _ = certify_zero(lambda e: Ht.residues(e) @ Im.residues(e) - Im.residues(e) @ Hl.residues(e), m)
    det = det_check(N, d, qh, v)
    similar = inter and det["pass"] and not det["formula_zero"]
    n = Hl.shape[0]

    def traces(emb):
        A, B = Ht.residues(emb), Hl.residues(emb)
        PA, PB = ModMat.identity(emb, n), ModMat.identity(emb, n)
        res = np.zeros((len(emb), 1, n), dtype=np.int64)
        logb = 0.0
        for k in range(n):
            PA, PB = PA @ A, PB @ B
            D = PA.scale(PB.den) - PB.scale(PA.den)
            for e, (p, _) in enumerate(emb.items):
                res[e, 0, k] = int(np.trace(D.res[e]) % p)
            logb = max(logb, D.logb + math.log2(n))
        return ModMat(emb, res % emb.pvec[:, None, None], 1, logb)

    tr_ok, _ = certify_zero(traces, m)
    return {"N": N, "d": d, "dim": n, "H_intertwined": inter, "det_nonzero": det["pass"] and not det["formula_zero"],
            "similar": similar, "power_traces_equal": tr_ok, "pass": similar and tr_ok}


def criticality(N: int, d: int, qh: CycScalar, v: CycScalar) -> list[int]:
    """k in 1..(N-d)/2 with <k + d/2> = 0."""
    return [k for k in range(1, (N - d) // 2 + 1) if angle_bracket(2 * k + d, qh, v, N).is_zero()]


# ---------------------------------------------------------------------------
# expansion around a critical point

class ExpansionBundle:
    def __init__(self, N, d, qh_c, v_c, norm, I_terms, M0, M1, iota, route):
        self.N, self.d = N, d
        self.qh_c, self.v_c = qh_c, v_c
        self.norm = norm
        self.I = I_terms
        self.M0, self.M1 = M0, M1
        self.iota = iota
        self.route = route

    def to_json(self) -> dict:
        def trip(M):
            return [[r, c, x.to_json()] for (r, c), x in sorted(M.entries().items())]
        return {"N": self.N, "d": self.d, "q_half_c": self.qh_c.to_json(), "v_c": self.v_c.to_json(),
                "normalization_q_half_power": self.norm, "iota": self.iota, "route": self.route,
                "I": [trip(M) for M in self.I[:2]], "M0": trip(self.M0), "M1": trip(self.M1)}


def _mat_zero(M: CycMatrix) -> bool:
    return M.is_zero()


def expand_kernel(N: int, d: int, qh_c: CycScalar, v_c: CycScalar) -> ExpansionBundle:
    """M_0 = K (L I_1 K)^-1 L and M_1 from the next two orders; valid when the pole is simple."""
    I = build_I(N, d, qh_c, v_c)
    I0, I1, I2 = I.expansion(2)
    n = I0.shape[0]
    K = exact_nullspace(I0)
    L = exact_left_nullspace(I0)
    kappa = K.shape[1]
    if kappa == 0:
        raise ValueError("not critical: I_0 is invertible")
    G = L @ I1 @ K
    if modular_rank(G)[0] < kappa:
        raise ArithmeticError("pole of order > 1: use the series route")
    Z = exact_inverse(G)
    M0 = K @ Z @ L
    ident = CycMatrix.identity(I0.m, n)
    rhs = ident - I1 @ M0
    M1p = exact_solve(I0, rhs)
    Y = exact_solve(G, -(L @ (I1 @ M1p + I2 @ M0)))
    M1 = M1p + K @ Y
    return ExpansionBundle(N, d, I.qh, I.v, I.normalization(), [I0, I1, I2], M0, M1, 1, "kernel")


def expand_series(N: int, d: int, qh_c: CycScalar, v_c: CycScalar, T: int = 4) -> ExpansionBundle:
    """Gauss-Jordan inversion over truncated power series in eps = q - q_c."""
    I = build_I(N, d, qh_c, v_c)
    coeffs = I.expansion(T)
    n = coeffs[0].shape[0]
    m = coeffs[0].m
    A = []
    cm = [c.to_rows() for c in coeffs]
    for r in range(n):
        A.append([SeriesScalar(m, 0, [cm[k][r][c] for k in range(T + 1)]) for c in range(n)])
    inv, iota = series_invert(A)
    ent0, ent1 = {}, {}
    for r in range(n):
        for c in range(n):
            x = inv[r][c]
            a = x.coeff(-iota)
            b = x.coeff(-iota + 1)
            if not a.is_zero():
                ent0[(r, c)] = a
            if not b.is_zero():
                ent1[(r, c)] = b
    M0 = CycMatrix.from_entries(m, (n, n), ent0)
    M1 = CycMatrix.from_entries(m, (n, n), ent1)
    return ExpansionBundle(N, d, I.qh, I.v, I.normalization(), coeffs[:3], M0, M1, iota, "series")


def expand(N: int, d: int, qh_c: CycScalar, v_c: CycScalar, T: int = 4) -> ExpansionBundle:
    try:
        return expand_kernel(N, d, qh_c, v_c)
    except ArithmeticError:
        return expand_series(N, d, qh_c, v_c, T)


def check_bundle(b: ExpansionBundle) -> dict:
    """I_0 M_0 = 0 = M_0 I_0, next-order identities, kernel/image dimensions, Hamiltonian intertwining."""
    I0, I1 = b.I[0], b.I[1]
    n = I0.shape[0]
    ident = CycMatrix.identity(I0.m, n)
    out = {"I0M0": _mat_zero(I0 @ b.M0), "M0I0": _mat_zero(b.M0 @ I0)}
    if b.iota == 1:
        out["order1_right"] = (I0 @ b.M1 + I1 @ b.M0) == ident
        out["order1_left"] = (b.M1 @ I0 + b.M0 @ I1) == ident
    r0 = modular_rank(I0)[0]
    rm = modular_rank(b.M0)[0]
    out["rank_I0"] = r0
    out["rank_M0"] = rm
    out["ker_M0_equals_im_I0"] = (n - rm) == r0 and out["M0I0"]
    # Hamiltonians: script-H M = M H with H = tau(H) on the sector and script-H = omega_d(H)
    qc = b.qh_c * b.qh_c
    rep = omega_rep(b.N, b.d, b.qh_c, b.v_c)
    ch = SpinChain(b.N, b.qh_c, b.v_c)
    H0 = ch.hamiltonian().block(b.d)
    H1 = ch.hamiltonian(dq=True).block(b.d)
    cH0 = hamiltonian(rep)
    cH1 = hamiltonian_q_derivative(rep, qc)
    out["H0M0"] = (cH0 @ b.M0) == (b.M0 @ H0)
    if b.iota == 1:
        # normalization q^(norm/2) does not commute with eps-expansion of M; undo it exactly to first order
        out["H0M1_identity"] = _bundle_h1_identity(b, cH0, cH1, H0, H1)
    out["pass"] = all(v for k, v in out.items() if isinstance(v, bool))
    return out


def _bundle_h1_identity(b, cH0, cH1, H0, H1) -> bool:
    """cH0 M1 + cH1 M0 = M1 H0 + M0 H1 for the expansion of the inverse of I itself.

    The bundle inverts q^(norm/2) I; the inverse of I is q^(norm/2) times it, so
    M'_0 = c M_0 and M'_1 = c M_1 + c' M_0 with c = q_c^(norm/2), c' = (norm/2) q_c^(norm/2 - 1).
    """
    qc = b.qh_c * b.qh_c
    c = b.qh_c ** b.norm
    cp = c * qc.inverse() * Fraction(b.norm, 2)
    M0 = b.M0.scale(c)
    M1 = b.M1.scale(c) + b.M0.scale(cp)
    return (cH0 @ M1 + cH1 @ M0) == (M1 @ H0 + M0 @ H1)


# ---------------------------------------------------------------------------
# left-kernel vectors

def _row(vec: SpinVector, N: int, sz2: int, m: int) -> CycMatrix:
    idx = sector_index(N, sz2)
    return CycMatrix.from_entries(m, (1, len(idx)), {(0, idx[s]): x for s, x in vec.coeffs.items()})


def kernel_vectors(N: int, P: int, k: int, qh_c: CycScalar, v_c: CycScalar) -> dict:
    """<mu| = <0|S^{+(P)} and <mu_J| = <0|sigma^+_J S^{+(P-k)}: left kernel of I at q_c.

    Each row is checked against I as a first-order series: the product vanishes at q_c and
    its eps-derivative (including the q-dependence of the row) is reported.
    """
    d = N - 2 * P
    I = build_I(N, d, qh_c, v_c)
    I0, I1 = I.expansion(1, normalized=False)
    ch = SpinChain(N, I.qh, I.v)
    m = common_conductor(cyc(1, I0.m), cyc(1, ch.m))
    rows = {}
    rows_d = {}
    Sp = ch.S(1, P)
    rows["mu"] = ch.bra_vacuum_times(Sp)
    rows_d["mu"] = ch.bra_vacuum_times(ch.S(1, P, dq=True))
    if k > 0:
        SpK, dSpK = ch.S(1, P - k), ch.S(1, P - k, dq=True)
        for J in combinations(range(1, N + 1), k):
            sig = None
            for j in J:
                s = ch.sigma(1, j)
                sig = s if sig is None else sig @ s
            rows["mu_" + "_".join(map(str, J))] = ch.bra_vacuum_times(sig, SpK)
            rows_d["mu_" + "_".join(map(str, J))] = ch.bra_vacuum_times(sig, dSpK)
    report = {}
    all_annihilate = True
    for name, vec in rows.items():
        R = _row(vec, N, d, m)
        dR = _row(rows_d[name], N, d, m)
        z0 = (R @ I0).is_zero()
        z1 = (R @ I1 + dR @ I0).is_zero()
        all_annihilate = all_annihilate and z0
        report[name] = {"annihilates_at_qc": z0, "order_exactly_1": z0 and not z1}
    # left nullspace dimension of I at q_c
    rank = modular_rank(I0)[0]
    left_dim = I0.shape[0] - rank
    # dependency: sum_J (q v^2)^((N+1)k/2 - sum J) <mu_J| = [P choose k] <0|S^{+(P)}, vanishing at q_c
    dep = None
    if k > 0:
        acc = None
        for J in combinations(range(1, N + 1), k):
            e2 = (N + 1) * k - 2 * sum(J)          # twice the exponent
            coef = ch.qh ** e2 * ch.v ** e2
            R = _row(rows["mu_" + "_".join(map(str, J))], N, d, m).scale(coef)
            acc = R if acc is None else acc + R
        dep = acc.is_zero()
    # the span of all candidate rows
    span = None
    for vec in rows.values():
        R = _row(vec, N, d, m)
        span = R if span is None else _vstack(span, R)
    span_rank = modular_rank(span)[0]
    return {"N": N, "P": P, "k": k, "d": d, "rows": report, "all_annihilate": all_annihilate,
            "left_kernel_dim": left_dim, "expected_dim": comb(N, k), "span_rank": span_rank,
            "dependency_vanishes": dep,
            "pass": all_annihilate and left_dim == comb(N, k) and span_rank == comb(N, k)
            and (dep is None or dep)}


def _vstack(A: CycMatrix, B: CycMatrix) -> CycMatrix:
    return A.T.hstack(B.T).T


def nu3_row(N: int, P: int, k: int, ch: SpinChain) -> SpinVector:
    """<nu_3| = <0| T^{+(N-k)} S^{-(N-P-k)} as a row on the sector d = N - 2P."""
    return ch.bra_vacuum_times(ch.T(1, N - k), ch.S(-1, N - P - k))


def check_nu3_left_kernel(N: int, P: int, k: int, qh_c: CycScalar, v_c: CycScalar) -> dict:
    d = N - 2 * P
    I = build_I(N, d, qh_c, v_c)
    ch = SpinChain(N, I.qh, I.v)
    row = nu3_row(N, P, k, ch)
    R = _row(row, N, d, I.m)
    return {"N": N, "P": P, "k": k, "nonzero": not row.is_zero(), "annihilates": (R @ I.at()).is_zero(),
            "pass": (not row.is_zero()) and (R @ I.at()).is_zero()}


# ---------------------------------------------------------------------------
# S^{+(x)} on the straddling nest, closed form

def _column(I: IntertwinerMatrix, w: ls.LinkState) -> SpinVector:
    M = I.at()
    c = [x.string for x in I.cols].index(w.string)
    return SpinVector(I.N, {I.rows[r]: x for (r, cc), x in M.entries().items() if cc == c})


def sp_on_nested_direct(x: int, y: int, N: int, qh: CycScalar, v: CycScalar) -> SpinVector:
    d = N - 2 * y
    I = build_I(N, d, qh, v)
    ch = SpinChain(N, I.qh, I.v)
    col = _column(I, ls.straddle_concentric(N, y))
    return ch.S(1, x).apply(col) if x else col


def sp_on_nested_closed(x: int, y: int, N: int, qh: CycScalar, v: CycScalar) -> SpinVector:
    """i^y q^((y-x)/2) <d/2+x>!/<d/2>! sum_J prod_{r not in J} G_{r, s(r,J)} |0>."""
    d = N - 2 * y
    m = common_conductor(qh, v, cyc_from_angle(1, 2))
    qh, v = qh.coerce(m), v.coerce(m)
    q = qh * qh
    iu = cyc_from_angle(1, 2).coerce(m)
    pref = iu ** y * qh ** (y - x)
    for t in range(1, x + 1):
        pref = pref * angle_bracket(d + 2 * t, qh, v, N)
    out: dict = {}
    for J in combinations(range(1, y + 1), x):
        Js = set(J)
        states = [(0, cyc(1, m))]
        for r in range(1, y + 1):
            if r in Js:
                continue
            s_r = -sum(1 for j in J if j > r)
            a = q ** (-s_r) * v ** (2 * r - 1)                 # sigma^-_r
            b = -(q ** (s_r - 1)) * v ** (-(2 * r - 1))        # sigma^-_{N+1-r}
            states = [(s | (1 << (r - 1)), c * a) for s, c in states] + \
                     [(s | (1 << (N - r)), c * b) for s, c in states]
        for s, c in states:
            out[s] = out[s] + c if s in out else c
    return SpinVector(N, {s: c * pref for s, c in out.items()})


def check_prop_A1(x: int, y: int, N: int, qh: CycScalar, v: CycScalar) -> dict:
    a = sp_on_nested_direct(x, y, N, qh, v)
    b = sp_on_nested_closed(x, y, N, qh, v)
    keys = set(a.coeffs) | set(b.coeffs)
    ok = all((a.coeffs.get(s, cyc(0)) - b.coeffs.get(s, cyc(0))).is_zero() for s in keys)
    return {"N": N, "y": y, "x": x, "pass": ok, "zero": a.is_zero()}


def check_cor_51(N: int, y: int, x: int, qh: CycScalar, v: CycScalar) -> dict:
    """S^{+(x)} of the straddling nest vanishes iff <d/2 + x_c> = 0 for some 1 <= x_c <= x."""
    d = N - 2 * y
    vec = sp_on_nested_direct(x, y, N, qh, v)
    pred = any(angle_bracket(d + 2 * t, qh, v, N).is_zero() for t in range(1, x + 1))
    return {"N": N, "y": y, "x": x, "vanishes": vec.is_zero(), "predicted": pred, "pass": vec.is_zero() == pred}


def check_prop_A2(N: int, p: int, k: int, qh: CycScalar, v: CycScalar) -> dict:
    """S^{-(N-p-k)} applied to the straddling p-nest vanishes when q^(N-2k) v^(2N) = 1."""
    cond = (qh ** (2 * (N - 2 * k)) * v ** (2 * N)) == cyc(1)
    I = build_I(N, N - 2 * p, qh, v)
    ch = SpinChain(N, I.qh, I.v)
    col = _column(I, ls.straddle_concentric(N, p))
    out = ch.S(-1, N - p - k).apply(col)
    return {"N": N, "p": p, "k": k, "condition": cond, "vanishes": out.is_zero(),
            "pass": out.is_zero() if cond else None}
