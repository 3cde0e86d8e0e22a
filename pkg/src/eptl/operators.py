"""Transfer matrix Fourier modes, the Hamiltonian and the central element F_N.

Every row of tiles is summed over its 2^N configurations.  The weight of a
configuration only depends on how many tiles are of type A, so the engine first
groups configurations by that count (``tile_groups``) and then attaches the
weights for the transfer matrix or for F_N.

Conventions: Lambda = pi*a/b, q = exp(-i Lambda), lambda = pi - Lambda,
beta = -q - 1/q = -2 cos(Lambda).  With nu = z + lambda/2 and u = exp(-i z),
T_N(lambda, nu) = sum_k f_k u^k.
"""
from __future__ import annotations

import math
from functools import lru_cache
from fractions import Fraction
from itertools import product

from . import linkstates as ls
from .eptl_rep import LoopParams, OmegaRep, Rep, RhoRep, action_table
from .linalg import CycMatrix, Embeddings, ModMat, certify_zero
from .scalars import CycScalar, common_conductor, cyc, cyc_from_angle


class Anisotropy:
    """Lambda = pi*a/b and the scalars derived from it."""

    def __init__(self, a: int, b: int):
        if b <= 0:
            raise ValueError("b must be positive")
        g = math.gcd(a, b)
        self.a, self.b = a // g, b // g
        self.half = cyc_from_angle(self.a, 2 * self.b)          # exp(i Lambda/2)
        self.q = cyc_from_angle(-self.a, self.b)                 # exp(-i Lambda)
        self.h = cyc_from_angle(1, 2) * self.half.inverse()      # exp(i lambda/2)
        m = common_conductor(self.half, self.q, self.h)
        self.m = m
        self.half, self.q, self.h = self.half.coerce(m), self.q.coerce(m), self.h.coerce(m)
        self.beta = -(self.q + self.q.inverse())

    def exp_half(self, n: int) -> CycScalar:
        """exp(i n Lambda / 2)."""
        return self.half ** n

    def C(self, x) -> CycScalar:
        """cos(x Lambda), x integer or half-integer."""
        n = Fraction(x) * 2
        assert n.denominator == 1
        e = self.exp_half(int(n))
        return (e + e.inverse()) * Fraction(1, 2)

    def S(self, x) -> CycScalar:
        """sin(x Lambda)."""
        n = Fraction(x) * 2
        assert n.denominator == 1
        e = self.exp_half(int(n))
        i = cyc_from_angle(1, 2)
        return (e - e.inverse()) / (i * 2)

    def sin_lambda(self) -> CycScalar:
        i = cyc_from_angle(1, 2)
        h2 = self.h * self.h
        return (h2 - h2.inverse()) / (i * 2)

    def cos_lambda(self) -> CycScalar:
        h2 = self.h * self.h
        return (h2 + h2.inverse()) * Fraction(1, 2)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "Lambda_over_pi": "%d/%d" % (self.a, self.b)}


# ---------------------------------------------------------------------------
# tile sums

@lru_cache(maxsize=None)
def tile_groups(N: int, d: int | None) -> tuple[dict, ...]:
    """For each number a of A tiles: {(row, col, n_beta, n_alpha, travel, joined): multiplicity}."""
    groups: list[dict] = [dict() for _ in range(N + 1)]
    for conf in product("AB", repeat=N):
        key = "".join(conf)
        a = key.count("A")
        g = groups[a]
        for col, (row, nb, na, t, j) in enumerate(action_table(N, "tiles:" + key, d)):
            k = (row, col, nb, na, t, j)
            g[k] = g.get(k, 0) + 1
    return tuple(groups)


def _basis_sector(rep: Rep) -> int | None:
    return rep.d if isinstance(rep, OmegaRep) else None


def group_matrices(rep: Rep) -> list[CycMatrix]:
    """G_a = sum of rep(config) over configurations with a tiles of type A, a = 0..N."""
    cache = rep.__dict__.setdefault("_groups", None)
    if cache is not None:
        return cache
    omega = isinstance(rep, OmegaRep)
    out = []
    for g in tile_groups(rep.N, _basis_sector(rep)):
        ent: dict = {}
        for (row, col, nb, na, t, j), mult in g.items():
            if omega and (j or row < 0):
                continue
            w = rep.params.weight(nb, na, t if omega else 0) * mult
            key = (row, col)
            ent[key] = ent[key] + w if key in ent else w
        out.append(CycMatrix.from_entries(rep.m, (rep.dim, rep.dim), ent))
    rep.__dict__["_groups"] = out
    return out


def _laurent_mul(p: dict, r: dict) -> dict:
    out: dict = {}
    for i, x in p.items():
        for j, y in r.items():
            out[i + j] = out[i + j] + x * y if i + j in out else x * y
    return out


def tile_weight_polys(N: int, ani: Anisotropy) -> list[dict]:
    """For a = 0..N the Laurent polynomial in u of sin(lambda-nu)^a sin(nu)^(N-a)."""
    i2 = cyc_from_angle(1, 2) * 2
    h, hi = ani.h, ani.h.inverse()
    A = {1: h / i2, -1: -hi / i2}
    B = {-1: h / i2, 1: -hi / i2}
    out = []
    for a in range(N + 1):
        p = {0: cyc(1, ani.m)}
        for _ in range(a):
            p = _laurent_mul(p, A)
        for _ in range(N - a):
            p = _laurent_mul(p, B)
        out.append(p)
    return out


def transfer_fourier(rep: Rep, ani: Anisotropy) -> dict[int, CycMatrix]:
    """Fourier family {k: f_k}, k = -N..N (all k of the parity of N)."""
    G = group_matrices(rep)
    polys = tile_weight_polys(rep.N, ani)
    m = common_conductor(cyc(1, rep.m), cyc(1, ani.m))
    out = {}
    for k in range(-rep.N, rep.N + 1):
        acc = CycMatrix.zeros(m, rep.dim, rep.dim)
        for a, p in enumerate(polys):
            c = p.get(k)
            if c is not None and not c.is_zero():
                acc = acc + G[a].scale(c)
        out[k] = acc
    return out


def transfer_at(rep: Rep, ani: Anisotropy, nu_num: int, nu_den: int) -> CycMatrix:
    """T_N(lambda, nu) at nu = pi*nu_num/nu_den, exactly."""
    f = transfer_fourier(rep, ani)
    u = cyc_from_angle(-nu_num, nu_den) * ani.h           # exp(-i z) with z = nu - lambda/2
    out = None
    for k, fk in f.items():
        t = fk.scale(u ** k)
        out = t if out is None else out + t
    return out


def f_central(rep: Rep, ani: Anisotropy) -> CycMatrix:
    """F_N from its own tiles: weight exp(-i Lambda/2) per A tile and exp(i Lambda/2) per B tile."""
    G = group_matrices(rep)
    N = rep.N
    acc = None
    for a, Ga in enumerate(G):
        t = Ga.scale(ani.exp_half(N - 2 * a))
        acc = t if acc is None else acc + t
    return acc


def hamiltonian(rep: Rep) -> CycMatrix:
    """Sum of e_1..e_N in the given representation."""
    acc = None
    for i in range(1, rep.N + 1):
        t = rep.generator("e%d" % i)
        acc = t if acc is None else acc + t
    return acc


def hamiltonian_q_derivative(rep: Rep, q: CycScalar) -> CycMatrix:
    """d/dq of the loop Hamiltonian with alpha, v held fixed: sum of d e_i/d beta * dbeta/dq.

    Each e_i depends on q only through beta^(loops closed), so the derivative is
    assembled from the action table with n_beta * beta^(n_beta - 1).
    """
    dbeta = -1 + q ** (-2)
    P = rep.params
    omega = isinstance(rep, OmegaRep)
    ent: dict = {}
    for i in range(1, rep.N + 1):
        for col, (row, nb, na, t, j) in enumerate(action_table(rep.N, "e%d" % i, _basis_sector(rep))):
            if nb == 0 or (omega and (j or row < 0)):
                continue
            w = P.beta ** (nb - 1) * nb * P.alpha ** na * dbeta
            if omega and t:
                w = w * P.v ** t
            key = (row, col)
            ent[key] = ent[key] + w if key in ent else w
    return CycMatrix.from_entries(common_conductor(cyc(1, rep.m), q), (rep.dim, rep.dim), ent)


# ---------------------------------------------------------------------------
# certified checks

def commutator_zero(A: CycMatrix, B: CycMatrix) -> bool:
    m = common_conductor(cyc(1, A.m), cyc(1, B.m))
    ok, _ = certify_zero(lambda e: (lambda a, b: a @ b - b @ a)(A.residues(e), B.residues(e)), m)
    return ok


def matrix_zero(M: CycMatrix) -> bool:
    return M.is_zero()


def reflection_perm_matrix(rep: Rep, m: int) -> CycMatrix:
    perm = ls.reflection_permutation(rep.basis)
    return CycMatrix.from_entries(m, (rep.dim, rep.dim), {(perm[j], j): 1 for j in range(rep.dim)})


def check_transfer_properties(rep: Rep, ani: Anisotropy, mirror_rep: Rep | None = None) -> dict:
    """Commuting family, translation invariance, crossing symmetry, the nu -> 0 expansion, F_N = 2^N f_N.

    ``mirror_rep`` is the representation in which reflection lands (for omega with twist v it is the
    one with twist 1/v); by default the representation itself.
    """
    N = rep.N
    f = transfer_fourier(rep, ani)
    ks = [k for k in range(-N, N + 1) if (k - N) % 2 == 0]
    out: dict = {"rep": rep.describe(), "Lambda": ani.to_json()}
    off_parity = all(f[k].is_zero() for k in range(-N, N + 1) if (k - N) % 2)
    out["odd_modes_vanish"] = off_parity
    comm = True
    pairs = 0
    for x in range(len(ks)):
        for y in range(x + 1, len(ks)):
            pairs += 1
            if not commutator_zero(f[ks[x]], f[ks[y]]):
                comm = False
    out["commuting_family"] = {"pass": comm, "pairs": pairs}
    O = rep.generator("O")
    out["translation_invariance"] = all(commutator_zero(f[k], O) for k in ks)
    # crossing symmetry: f_{-k} = R^-1 f_k(mirror) R
    mrep = mirror_rep if mirror_rep is not None else rep
    fm = transfer_fourier(mrep, ani) if mirror_rep is not None else f
    R = reflection_perm_matrix(rep, f[ks[0]].m)
    cross = all(R @ f[-k] == fm[k] @ R for k in ks)
    out["crossing_symmetry"] = cross
    # expansion around nu = 0
    sl, cl = ani.sin_lambda(), ani.cos_lambda()
    h = ani.h
    T0 = None
    dT = None
    for k in ks:
        t = f[k].scale(h ** k)
        T0 = t if T0 is None else T0 + t
        if k:
            dt = f[k].scale(h ** k * cyc_from_angle(-1, 2) * k)
            dT = dt if dT is None else dT + dt
    Hm = hamiltonian(rep)
    Om = O
    slN = sl ** N
    zeroth = T0 == Om.scale(slN)
    first = dT.scale(sl) == (Om @ (Hm - rep.identity().scale(cl * N))).scale(slN)
    out["expansion_nu0"] = {"order0": zeroth, "order1": first}
    F = f_central(rep, ani)
    out["F_equals_2N_fN"] = F == f[N].scale(2 ** N)
    out["pass"] = bool(off_parity and comm and out["translation_invariance"] and cross and zeroth and first
                       and out["F_equals_2N_fN"])
    return out


def check_centrality(rep: Rep, F: CycMatrix) -> bool:
    gens = ["e%d" % i for i in range(1, rep.N + 1)] + ["O"]
    return all(commutator_zero(F, rep.generator(g)) for g in gens)


def percolation_check(rep: RhoRep, F: CycMatrix) -> bool:
    """<w'|F w> = 0 whenever w has a bubble at (i, i+1) that w' lacks."""
    basis = rep.basis
    N = rep.N
    bubbles = []
    for w in basis:
        s = w.string
        bubbles.append({i for i in range(N) if s[i] == "(" and s[(i + 1) % N] == ")"})
    ent = F.entries()
    for (r, c), x in ent.items():
        if not bubbles[c] <= bubbles[r]:
            return False
    return True
