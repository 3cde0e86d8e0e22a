"""Rank-two Jordan cells of the loop Hamiltonian at eigenvalue 0 inside one defect sector.

The construction pulls a vector chi of the spin chain back through the expansion of the
inverse intertwiner around a critical q:  M_1 chi has a component v_0 in the generalized
0-eigenspace of the loop Hamiltonian with H v_0 != 0.  Everything is exact.

Parameters: q_c = exp(i pi/P), v_c one of the N roots of (q v^2)^N = q^(2k), d = N - 2P.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .fn_analysis import JordanProfile
from .intertwiner import (ExpansionBundle, angle_bracket, build_I, check_cor_51, check_prop_A1,
                          check_prop_A2, criticality, expand, nu3_row, omega_rep)
from .linalg import CycMatrix, exact_nullspace, exact_solve
from .operators import hamiltonian
from .scalars import (CycScalar, common_conductor, cyc, cyc_from_angle, q_binom_limit,
                      q_binom_limit_closed, q_binom_poly)
from .xxz_uq import SpinChain, SpinVector, sector_index


class HypothesisError(ValueError):
    pass


def twist_roots(N: int, P: int, k: int) -> list[tuple[int, int]]:
    """The N solutions v of (q_c v^2)^N = q_c^(2k) as angles v = exp(i pi a/b), as (a, b).

    Ordered by the angle of v^2 in [0, 2 pi); for each v^2 the square root with angle in
    [0, pi) is taken.
    """
    out = []
    for j in range(N):
        # angle of v^2 over pi: ((2k - N) + 2 j P) / (P N), reduced to [0, 2)
        num = (2 * k - N + 2 * j * P) % (2 * P * N)
        out.append((num, 2 * P * N))      # v angle / pi = num / (2 P N) in [0, 1)
    out.sort(key=lambda t: Fraction(*t))
    return out


def check_hypotheses(N: int, P: int, k: int) -> None:
    if not 2 <= P or 2 * P > N:
        raise HypothesisError("need 2 <= P <= N/2, got P=%d, N=%d" % (P, N))
    if not 0 <= k <= P - 1:
        raise HypothesisError("need 0 <= k <= P-1, got k=%d" % k)
    if N < 2 * P + k:
        raise HypothesisError("need N >= 2P + k, got N=%d" % N)


class CellInstance:
    """(N, P, k) at q_c = exp(i pi/P) with a chosen twist root, and the vectors built on it."""

    def __init__(self, N: int, P: int, k: int, root: int = 0, check: bool = True):
        if check:
            check_hypotheses(N, P, k)
        self.N, self.P, self.k = N, P, k
        self.d = N - 2 * P
        roots = twist_roots(N, P, k)
        if not 0 <= root < len(roots):
            raise HypothesisError("root index must be in [0, %d)" % len(roots))
        self.root = root
        self.v_angle = roots[root]
        qh = cyc_from_angle(1, 2 * P)
        v = cyc_from_angle(*self.v_angle)
        self.chain = SpinChain(N, qh, v)
        self.m = self.chain.m
        self.qh_c, self.v_c = self.chain.qh, self.chain.v
        self.q_c = self.chain.q
        self._vectors = None

    # -- vectors and constants
    def vectors(self) -> dict:
        if self._vectors is None:
            ch, N, P, k = self.chain, self.N, self.P, self.k
            vac = ch.vacuum()
            nu1 = ch.S(1, k).apply(ch.T(-1, P + k).apply(vac))
            nu2 = ch.S(1, P + k).apply(ch.T(-1, 2 * P + k).apply(vac))
            nu3 = ch.T(1, N - P - k).apply(ch.S(-1, N - k).apply(vac))
            bra_mu = ch.bra_vacuum_times(ch.S(1, P))
            x1 = bra_mu.dot(nu2)
            x2 = bra_mu.dot(nu1)
            chi = _combine(N, [(x1, nu1), (-x2, nu2)])
            self._vectors = {"nu1": nu1, "nu2": nu2, "nu3": nu3, "x1": x1, "x2": x2, "chi": chi,
                             "nu3_row": nu3_row(N, P, k, ch)}
        return self._vectors

    def x_closed(self) -> dict:
        """x_1, x_2 from the limiting q-binomials and from the explicit root-of-unity values."""
        N, P, k, qc = self.N, self.P, self.k, self.q_c
        return {
            "x1_limit": q_binom_limit(2 * P + k, P, qc, P) * comb(N, 2 * P + k),
            "x2_limit": q_binom_limit(P + k, P, qc, P) * comb(N, P + k),
            "x1_closed": qc ** (P * P + P * k) * 2 * comb(N, 2 * P + k),
            "x2_closed": qc ** (P * k) * comb(N, P + k),
            "x1_closed_shape": q_binom_limit_closed(2 * P + k, P, qc, P) * comb(N, 2 * P + k),
        }

    def describe(self) -> dict:
        return {"N": self.N, "P": self.P, "k": self.k, "d": self.d, "root": self.root,
                "q_c": "exp(i pi/%d)" % self.P, "v_c_angle_over_pi": "%d/%d" % self.v_angle}


def _combine(N: int, terms) -> SpinVector:
    out: dict = {}
    for c, vec in terms:
        for s, x in vec.coeffs.items():
            y = x * c
            out[s] = out[s] + y if s in out else y
    return SpinVector(N, {s: x for s, x in out.items() if not x.is_zero()})


def _column(vec: SpinVector, N: int, sz2: int, m: int) -> CycMatrix:
    idx = sector_index(N, sz2)
    return CycMatrix.from_entries(m, (len(idx), 1), {(idx[s], 0): x for s, x in vec.coeffs.items()})


def _row(vec: SpinVector, N: int, sz2: int, m: int) -> CycMatrix:
    return _column(vec, N, sz2, m).T


def build_chi(N: int, P: int, k: int, root: int = 0) -> tuple[CellInstance, dict]:
    """The instance and a report comparing x_1, x_2 (inner products) with their closed forms."""
    inst = CellInstance(N, P, k, root)
    vec = inst.vectors()
    xc = inst.x_closed()
    rep = {
        "nu_nonzero": {n: not vec[n].is_zero() for n in ("nu1", "nu2", "nu3")},
        "x1": vec["x1"].to_json(), "x2": vec["x2"].to_json(),
        "x1_matches_limit": vec["x1"] == xc["x1_limit"],
        "x1_matches_closed": vec["x1"] == xc["x1_closed"] == xc["x1_closed_shape"],
        "x2_matches_limit": vec["x2"] == xc["x2_limit"],
        "x2_matches_closed": vec["x2"] == xc["x2_closed"],
    }
    rep["pass"] = all(rep["nu_nonzero"].values()) and all(
        rep[key] for key in ("x1_matches_limit", "x1_matches_closed", "x2_matches_limit", "x2_matches_closed"))
    return inst, rep


# ---------------------------------------------------------------------------
# generalized eigenspace at 0

def zero_generalized_kernel(H: CycMatrix) -> tuple[list[CycMatrix], int]:
    """Exact kernels of H^j for j = 1, 2, ... until they stop growing.

    Returns the kernel bases and the stabilization index s.  Since the kernels are exact
    (certified A K = 0 and dimension from a rank lower bound), ker H^s = ker H^D for D >= s,
    in particular for D the dimension.
    """
    n = H.shape[0]
    kernels = []
    Pw = H
    prev = 0
    while True:
        K = exact_nullspace(Pw)
        dim = K.shape[1]
        if dim == prev:
            return kernels, len(kernels)
        kernels.append(K)
        prev = dim
        if dim == n:
            return kernels, len(kernels)
        Pw = Pw @ H


def exact_zero_profile(H: CycMatrix, kernels: list[CycMatrix]) -> JordanProfile:
    n = H.shape[0]
    ranks = [n] + [n - K.shape[1] for K in kernels]
    if len(ranks) == 1 or ranks[-1] != ranks[-2]:
        ranks.append(ranks[-1])
    mult = n - ranks[-1]
    return JordanProfile(cyc(0, H.m), ranks, mult)


def project_zero_component(H: CycMatrix, w: CycMatrix, kernels: list[CycMatrix], s: int) -> CycMatrix:
    """Component of w in ker H^s along im H^s."""
    if not kernels:
        return CycMatrix.zeros(w.m, w.shape[0], 1)
    K = kernels[-1]
    Hs = H
    for _ in range(s - 1):
        Hs = Hs @ H
    m = common_conductor(cyc(1, K.m), cyc(1, Hs.m), cyc(1, w.m))
    B = K.coerce(m).hstack(Hs.coerce(m))
    z = exact_solve(B, w.coerce(m))
    zk = z.submatrix(list(range(K.shape[1])), [0])
    return K.coerce(m) @ zk


# ---------------------------------------------------------------------------
# certification

def loop_hamiltonian(inst: CellInstance) -> CycMatrix:
    return hamiltonian(omega_rep(inst.N, inst.d, inst.qh_c, inst.v_c))


def inverse_expansion(b: ExpansionBundle) -> tuple[CycMatrix, CycMatrix]:
    """M_0, M_1 of I^-1 itself (the bundle expands the inverse of q^(norm/2) I)."""
    qc = b.qh_c * b.qh_c
    c = b.qh_c ** b.norm
    cp = c * qc.inverse() * Fraction(b.norm, 2)
    return b.M0.scale(c), b.M1.scale(c) + b.M0.scale(cp)


def certify_cell(inst: CellInstance, bundle: ExpansionBundle | None = None) -> dict:
    N, d = inst.N, inst.d
    ch = inst.chain
    b = bundle if bundle is not None else expand(N, d, inst.qh_c, inst.v_c)
    M0, M1 = inverse_expansion(b)
    m = common_conductor(cyc(1, M0.m), cyc(1, ch.m))
    vec = inst.vectors()
    chi = _column(vec["chi"], N, d, m)
    H0 = ch.hamiltonian().block(d)
    H1 = ch.hamiltonian(dq=True).block(d)
    cH0 = loop_hamiltonian(inst)
    rep: dict = {"instance": inst.describe(), "iota": b.iota, "route": b.route}
    rep["chi_nonzero"] = not vec["chi"].is_zero()
    rep["M0_chi_zero"] = (M0 @ chi).is_zero()
    rep["H_chi_zero"] = (H0 @ chi).is_zero()
    w = M1 @ chi
    rep["chain_identity"] = (cH0 @ w) == (M0 @ (H1 @ chi))
    kernels, s = zero_generalized_kernel(cH0)
    prof = exact_zero_profile(cH0, kernels)
    v0 = project_zero_component(cH0, w, kernels, s)
    Hv0 = cH0 @ v0
    rep["v0_nonzero"] = not v0.is_zero()
    rep["H_v0_nonzero"] = not Hv0.is_zero()
    # observed nilpotency depth of v0: smallest t with H^t v0 = 0
    depth = 0
    t = v0
    while not t.is_zero() and depth <= s:
        t = cH0 @ t
        depth += 1
    rep["v0_nilpotency_depth"] = depth
    rep["jordan_profile_at_0"] = prof.to_json()
    r = prof.ranks + [prof.ranks[-1]] * 2
    # r_1 - r_2 counts the blocks of size >= 2; r_0 - 2 r_1 + r_2 (size-1 blocks) is reported too
    rep["blocks_ge_2_from_ranks"] = r[1] - r[2]
    rep["size_one_blocks_from_ranks"] = r[0] - 2 * r[1] + r[2]
    rep["rank_test"] = r[1] - r[2] >= 1
    rep["block_ge_2"] = prof.max_block >= 2
    # the eigenvector H v0 of the cell is killed by I at q_c
    I0 = build_I(N, d, inst.qh_c, inst.v_c).at()
    mi = common_conductor(cyc(1, I0.m), cyc(1, Hv0.m))
    rep["I0_kills_cell_eigenvector"] = (I0.coerce(mi) @ Hv0).is_zero()
    # reported only: whether the partner itself survives the map at q_c
    rep["I0_image_of_partner_nonzero"] = not (I0.coerce(mi) @ v0.coerce(mi)).is_zero()
    rep["generalized_kernel_stabilizes_at"] = s
    rep["pass"] = all(rep[key] for key in ("chi_nonzero", "M0_chi_zero", "H_chi_zero", "chain_identity",
                                           "H_v0_nonzero", "rank_test", "block_ge_2"))
    if not rep["pass"]:
        rep["witness_chi"] = vec["chi"].to_json()
    return rep


# ---------------------------------------------------------------------------
# amplitude <nu_3| H_1 |chi>

def amplitude_closed(N: int, P: int, k: int, qc: CycScalar) -> CycScalar:
    return -(qc ** (P * P + P * k - 1)) * (qc - qc.inverse()) * Fraction(2 * P * P * (N - 2 * k), N * (N - 1)) \
        * comb(N, k) * comb(N, P + k) * comb(N, 2 * P + k)


def amplitude_nu3(inst: CellInstance) -> dict:
    ch, N, P, k = inst.chain, inst.N, inst.P, inst.k
    vec = inst.vectors()
    row = vec["nu3_row"]
    chi = vec["chi"]
    direct = row.dot(ch.hamiltonian(dq=True).apply(chi))
    reduced = row.dot(ch.ebar(N - 1, dq=True).apply(chi)) * N
    closed = amplitude_closed(N, P, k, inst.q_c)
    return {"instance": inst.describe(), "direct": direct.to_json(), "closed": closed.to_json(),
            "single_generator_route_agrees": direct == reduced, "nonzero": not direct.is_zero(),
            "pass": direct == closed and direct == reduced and not direct.is_zero()}


# ---------------------------------------------------------------------------
# appendix B

def lemma_inverse_matrix(x: int, y: int, q: CycScalar) -> dict:
    """M(x, y) M(x, y)^-1 = id with the two upper-triangular q-binomial Toeplitz matrices."""
    n = y + 1
    M, Mi = {}, {}
    for r in range(n):
        for c in range(r, n):
            t = c - r
            a = q_binom_poly(x + t - 1, t, q) if t else cyc(1, q.m)
            M[(r, c)] = a if t % 2 == 0 else -a
            Mi[(r, c)] = q_binom_poly(x, t, q)
    A = CycMatrix.from_entries(q.m, (n, n), M)
    B = CycMatrix.from_entries(q.m, (n, n), Mi)
    ident = CycMatrix.identity(q.m, n)
    return {"x": x, "y": y, "pass": A @ B == ident and B @ A == ident}


def partial_sum_identity(x: int, y: int, j: int, q: CycScalar) -> bool:
    lhs = CycScalar.zero(q.m)
    for i in range(j + 1):
        t = q_binom_poly(x, y - i, q) * q_binom_poly(x + i - 1, i, q)
        lhs = lhs + (t if i % 2 == 0 else -t)
    rhs = q_binom_poly(x + j, y, q) * q_binom_poly(y - 1, j, q)
    if j % 2:
        rhs = -rhs
    return lhs == rhs


def _amp(ch: SpinChain, ops) -> CycScalar:
    """<0| op_1 ... op_n |0> for a list of (kind, sign, x, sites); negative x gives 0."""
    mats = []
    for kind, sign, x, sites in ops:
        if x < 0:
            return CycScalar.zero(ch.m)
        mats.append(ch.divided_power(kind, sign, x, sites))
    row = ch.bra_vacuum_times(*mats)
    return row.coeffs.get(0, CycScalar.zero(ch.m))


def a_block_amplitude(ch: SpinChain, a: int, b: int, x: int, c: int) -> CycScalar:
    """<0| T_A^{+(a)} S_A^{-(b)} S_A^{+(x)} T_A^{-(c)} |0> with A the first N-2 sites."""
    A = tuple(range(1, ch.N - 1))
    return _amp(ch, [("T", 1, a, A), ("S", -1, b, A), ("S", 1, x, A), ("T", -1, c, A)])


def reduced_amplitude(N: int, qh: CycScalar, v: CycScalar, a: int, b: int, x: int, c: int) -> CycScalar:
    """The same amplitude computed on the (N-2)-site chain.

    On the first N-2 sites a restricted divided power X^{s(x)} equals the (N-2)-site one
    times v^(s x) q^(e x sigma^z / 2) on each of the two spectator spins, with e = +1 for S
    and -1 for T.  The spectators stay up, so the factors collect into one monomial.
    """
    small = SpinChain(N - 2, qh, v)
    val = _amp(small, [("T", 1, a, None), ("S", -1, b, None), ("S", 1, x, None), ("T", -1, c, None)])
    e_v = 2 * (a - b + x - c)
    e_qh = 2 * (-a + b + x - c)
    return val * v ** e_v * small.qh ** e_qh


def b_factors(ch: SpinChain) -> dict:
    """The four <0| ..._B (...)|0> factors on the last two sites, with their closed forms."""
    N = ch.N
    q = ch.q
    B = (N - 1, N)
    Tm1 = ch.T(-1, 1, sites=(N - 1,))
    TmN = ch.T(-1, 1, sites=(N,))
    mixed = Tm1.scale(q ** (-2)) - TmN
    plain = Tm1 - TmN
    TpB = ch.T(1, 1, sites=B)
    Tp2B = ch.T(1, 2, sites=B)
    SmB = ch.S(-1, 1, sites=B)

    def amp(*ops):
        return ch.bra_vacuum_times(*ops).coeffs.get(0, CycScalar.zero(ch.m))
    got = [amp(TpB, mixed), amp(Tp2B, SmB, mixed), amp(TpB, plain), amp(Tp2B, SmB, plain)]
    want = [-(q ** (N - 3)) * (q * q - q ** (-2)), -(q ** (N - 3)) * (q - q.inverse()),
            -(q ** (N - 2)) * (q - q.inverse()), CycScalar.zero(ch.m)]
    return {"values": [g.to_json() for g in got], "matches": [g == w for g, w in zip(got, want)],
            "raw": got}


def _A_direct(inst: CellInstance, x: int) -> CycScalar:
    ch, N, P = inst.chain, inst.N, inst.P
    row = inst.vectors()["nu3_row"]
    vac = ch.vacuum()
    vec = ch.S(1, x).apply(ch.T(-1, P + x).apply(vac))
    return row.dot(ch.ebar(N - 1, dq=True).apply(vec))


def _A_assembled(inst: CellInstance, x: int, bf: list[CycScalar]) -> CycScalar:
    ch, N, P, k = inst.chain, inst.N, inst.P, inst.k
    q = ch.q
    y = N - P - k
    t1 = a_block_amplitude(ch, P + y - 1, y, x, P + x - 1)
    t2 = a_block_amplitude(ch, P + y - 2, y - 1, x, P + x - 1)
    t3 = a_block_amplitude(ch, P + y - 1, y, x - 1, P + x - 2)
    t4 = a_block_amplitude(ch, P + y - 2, y - 1, x - 1, P + x - 2)
    return q ** (-y - x) * t1 * bf[0] + q ** (P - y - x) * t2 * bf[1] \
        + q ** (P - y - x - 1) * t3 * bf[2] + q ** (2 * P - y - x - 1) * t4 * bf[3]


def A_closed(N: int, P: int, k: int, qc: CycScalar, second: bool) -> CycScalar:
    s = qc - qc.inverse()
    if not second:
        return -(qc.inverse()) * s * P * Fraction((N - P) * (N - 2 * k) + 2 * k * k, N * N * (N - 1)) \
            * comb(N, P + k) * comb(N, k)
    return -(qc ** (P * P - 1)) * s * 2 * P * Fraction((N - 2 * P) * (N - 2 * k) + 2 * k * k, N * N * (N - 1)) \
        * comb(N, 2 * P + k) * comb(N, k)


def _binom(n: int, r: int) -> int:
    return comb(n, r) if 0 <= r <= n else 0


@lru_cache(maxsize=None)
def q_identities(gq: CycScalar) -> dict:
    """The Toeplitz inverse for x, y <= 6 and the partial-sum identity for y <= 8, x <= 8."""
    return {"lemma_inverse": all(lemma_inverse_matrix(x, y, gq)["pass"] for x in range(7) for y in range(7)),
            "partial_sums": all(partial_sum_identity(x, y, j, gq)
                                for y in range(1, 9) for x in range(0, 9) for j in range(y + 1))}


def appendix_B_suite(N: int, P: int, k: int, root: int = 0, generic_q: CycScalar | None = None) -> dict:
    inst = CellInstance(N, P, k, root)
    ch = inst.chain
    qc = inst.q_c
    rep: dict = {"instance": inst.describe()}
    rep.update(q_identities(generic_q if generic_q is not None else cyc_from_angle(2, 11)))
    # vanishing amplitudes
    b2 = {}
    for x in (k, P + k):
        direct = a_block_amplitude(ch, N - k - 1, N - P - k, x, P + x - 1)
        red = reduced_amplitude(N, inst.qh_c, inst.v_c, N - k - 1, N - P - k, x, P + x - 1)
        b2[x] = {"direct_zero": direct.is_zero(), "reduced_zero": red.is_zero()}
    rep["vanishing_amplitudes"] = b2
    # two closed-form amplitudes
    c3 = qc ** 2 * (_binom(N - 2, k) * _binom(N - 2, P + k - 1) - _binom(N - 2, k - 1) * _binom(N - 2, P + k))
    c4 = qc ** (P * P + P + 2) * (_binom(N - 2, k) * _binom(N - 2, 2 * P + k - 1)
                                   - _binom(N - 2, k - 1) * _binom(N - 2, 2 * P + k))
    d3 = a_block_amplitude(ch, N - k - 2, N - P - k - 1, k, P + k - 1)
    d4 = a_block_amplitude(ch, N - k - 2, N - P - k - 1, P + k, 2 * P + k - 1)
    r3 = reduced_amplitude(N, inst.qh_c, inst.v_c, N - k - 2, N - P - k - 1, k, P + k - 1)
    r4 = reduced_amplitude(N, inst.qh_c, inst.v_c, N - k - 2, N - P - k - 1, P + k, 2 * P + k - 1)
    rep["amplitude_k"] = {"direct": d3.to_json(), "closed": c3.to_json(), "match": d3 == c3, "reduced_match": r3 == d3}
    rep["amplitude_P_plus_k"] = {"direct": d4.to_json(), "closed": c4.to_json(), "match": d4 == c4,
                                 "reduced_match": r4 == d4}
    # B factors at q_c and at a generic q (same v)
    bf = b_factors(ch)
    gen = b_factors(SpinChain(N, cyc_from_angle(1, 7), inst.v_c))
    rep["b_factors"] = {"values": bf["values"], "at_q_c": bf["matches"], "generic_q": gen["matches"]}
    # A(k), A(P+k)
    aa = {}
    for name, x, second in (("A_k", k, False), ("A_P_plus_k", P + k, True)):
        dv = _A_direct(inst, x)
        av = _A_assembled(inst, x, bf["raw"])
        cv = A_closed(N, P, k, qc, second)
        aa[name] = {"direct": dv.to_json(), "assembled_match": av == dv, "closed_match": cv == dv}
    rep["A"] = aa
    vec = inst.vectors()
    total = (vec["x1"] * _A_direct(inst, k) - vec["x2"] * _A_direct(inst, P + k)) * N
    rep["amplitude_from_A"] = total == amplitude_closed(N, P, k, qc)
    rep["pass"] = bool(
        rep["lemma_inverse"] and rep["partial_sums"]
        and all(v["direct_zero"] and v["reduced_zero"] for v in b2.values())
        and rep["amplitude_k"]["match"] and rep["amplitude_k"]["reduced_match"]
        and rep["amplitude_P_plus_k"]["match"] and rep["amplitude_P_plus_k"]["reduced_match"]
        and all(bf["matches"]) and all(gen["matches"])
        and all(v["assembled_match"] and v["closed_match"] for v in aa.values())
        and rep["amplitude_from_A"])
    return rep


def appendix_A_suite(N: int, P: int, k: int, root: int = 0) -> dict:
    """Nest amplitudes at the instance: the closed form for S^{+(x)} on the straddling nest for all
    x <= y = P, and the vanishing of S^{-(N-P-k)} on it."""
    inst = CellInstance(N, P, k, root)
    a1 = [check_prop_A1(x, P, N, inst.qh_c, inst.v_c) for x in range(1, P + 1)]
    a2 = check_prop_A2(N, P, k, inst.qh_c, inst.v_c)
    return {"instance": inst.describe(), "nest_closed_form": all(r["pass"] for r in a1),
            "lowering_vanishes": a2["pass"], "pass": all(r["pass"] for r in a1) and bool(a2["pass"])}


def _zero_blocks(N: int, d: int, qh: CycScalar, v: CycScalar) -> dict:
    H = hamiltonian(omega_rep(N, d, qh, v))
    kernels, _ = zero_generalized_kernel(H)
    prof = exact_zero_profile(H, kernels)
    return {"critical": criticality(N, d, qh, v), "blocks_at_0": {str(a): b for a, b in sorted(prof.blocks.items())},
            "diagonalizable_at_0": prof.max_block <= 1}


def negative_controls(N: int, P: int, k: int) -> dict:
    """Break one hypothesis at a time; the result must be non-critical or diagonalizable at 0.

    Controls: the twist moved off every root, and the size condition N >= 2P + k violated by
    taking k' = N - 2P + 1 when that is still below P.  The perturbation v_c exp(i pi/(2PN))
    shifts the angle of v^2 by an odd multiple of pi/(PN) while the roots differ by even
    multiples, so it never lands on a root and keeps the field unchanged.
    """
    inst = CellInstance(N, P, k)
    v_bad = inst.v_c * cyc_from_angle(1, 2 * P * N)
    out = {"perturbed_v": _zero_blocks(N, inst.d, inst.qh_c, v_bad)}
    k_bad = N - 2 * P + 1
    if k_bad <= P - 1:
        bad = CellInstance(N, P, k_bad, check=False)
        out["size_condition_violated"] = dict(_zero_blocks(N, bad.d, bad.qh_c, bad.v_c), k=k_bad)
    out["pass"] = all(not v["critical"] or v["diagonalizable_at_0"] for v in out.values())
    return out


def solid_boxes(P: int, n_max: int) -> list[tuple[int, int]]:
    """Sectors (N, d) on the diagonal N - d = 2P that satisfy the hypotheses for some k."""
    out = []
    for N in range(2 * P, n_max + 1):
        if any(N >= 2 * P + k for k in range(P)):
            out.append((N, N - 2 * P))
    return out


# ---------------------------------------------------------------------------
# exploratory float scan (not a certificate)

def numeric_max_block(H, cluster_tol: float = 1e-4, rank_tol: float = 1e-7) -> int:
    """Largest Jordan block of a complex matrix, read from singular values of (H - lambda)^j.

    Eigenvalues within cluster_tol * |H| are merged; a block of size s splits them by
    about eps^(1/s), so the default is safe up to s = 4 in double precision.
    """
    import numpy as np
    n = H.shape[0]
    scale = max(1.0, float(np.linalg.norm(H, 2)))
    ev = np.linalg.eigvals(H)
    used = np.zeros(n, dtype=bool)
    best = 1
    for i in range(n):
        if used[i]:
            continue
        mask = np.abs(ev - ev[i]) < cluster_tol * scale
        used |= mask
        m = int(mask.sum())
        if m < 2:
            continue
        A = H - ev[mask].mean() * np.eye(n)
        Aj = np.eye(n)
        for j in range(1, m + 1):
            Aj = Aj @ A
            nullity = int((np.linalg.svd(Aj, compute_uv=False) < rank_tol * scale ** j).sum())
            if nullity >= m:
                best = max(best, j)
                break
        else:
            best = max(best, m)
    return best


def float_scan(P: int, n_max: int, n_min: int = 2) -> list[dict]:
    """Largest block of the loop Hamiltonian in every sector at q = exp(i pi/P), over the twists
    (q v^2)^N = q^(2k), k < P (first root each).  Double precision; labelled non-certifying."""
    import numpy as np
    qh = cyc_from_angle(1, 2 * P)
    out = []
    for N in range(n_min, n_max + 1):
        for d in range(N % 2, N + 1, 2):
            sizes = {}
            for k in range(P):
                v = cyc_from_angle(*twist_roots(N, P, k)[0])
                H = hamiltonian(omega_rep(N, d, qh, v))
                M = np.array([[z.to_complex() for z in row] for row in H.to_rows()])
                sizes[str(k)] = numeric_max_block(M)
            out.append({"N": N, "d": d, "max_block_by_k": sizes, "max_block": max(sizes.values())})
    return out
