"""Pinned matrices from the published displays, with a short provenance tag each.

Entries are given as Python data in the display's own basis order.  ``I40_ROWS`` and
``I40_COLS`` translate that order to ours: spin rows as bitmasks (bit j-1 set = site j
down) and link states as strings.  The ``check_*`` functions rebuild every matrix with
the engine and compare exactly; ``fixture_corpus`` runs them all.
"""
from __future__ import annotations

from fractions import Fraction

from .eptl_rep import LoopParams, OmegaRep, RhoRep
from .fn_analysis import jordan_profile
from .intertwiner import build_I, expand_kernel, expand_series
from .jordan_cell import exact_zero_profile, zero_generalized_kernel
from .linalg import CycMatrix
from .operators import Anisotropy, f_central, hamiltonian
from .scalars import CycScalar, common_conductor, cyc, cyc_from_angle

# spin basis |+-+->, |++-->, |-++->, |-+-+>, |+--+>, |--++> as bitmasks
I40_ROWS = [10, 12, 9, 5, 6, 3]
I40_COLS = ["()()", "(())", ")(()", ")()(", "())(", "))(("]

# monomials (coefficient, power of q, power of v)
I40_SYMBOLIC = [
    [(-1, 1, 2), (1, 0, 2), (1, 0, -2), (-1, -1, -2), (1, 0, -2), (1, 0, 2)],
    [0, (-1, 1, 4), 0, (1, 0, 0), 0, (-1, -1, -4)],
    [(1, 0, 0), 0, (-1, 1, 4), 0, (-1, -1, -4), 0],
    [(-1, -1, -2), (1, 0, -2), (1, 0, 2), (-1, 1, 2), (1, 0, 2), (1, 0, -2)],
    [(1, 0, 0), 0, (-1, -1, -4), 0, (-1, 1, 4), 0],
    [0, (-1, -1, -4), 0, (1, 0, 0), 0, (-1, 1, 4)],
]

# q I at v = 1 around q = i: entries as Gaussian integers (re, im)
j = 1j
EXP_I0 = [[1, j, j, -1, j, j], [0, 1, 0, j, 0, -1], [j, 0, 1, 0, -1, 0],
          [-1, j, j, 1, j, j], [j, 0, -1, 0, 1, 0], [0, -1, 0, j, 0, 1]]
EXP_I1 = [[-2j, 1, 1, 0, 1, 1], [0, -2j, 0, 1, 0, 0], [1, 0, -2j, 0, 0, 0],
          [0, 1, 1, -2j, 1, 1], [1, 0, 0, 0, -2j, 0], [0, 0, 0, 1, 0, -2j]]
EXP_I2 = [[-1 if r == c else 0 for c in range(6)] for r in range(6)]
# leading terms of the inverse: (1/8) M0' / (q - i) + (1/16) M1' + ...
EXP_M0_SCALED = [[0] * 6, [-1, j, -j, 1, -j, j], [1, -j, j, -1, j, -j], [0] * 6,
                 [1, -j, j, -1, j, -j], [-1, j, -j, 1, -j, j]]
EXP_M1_SCALED = [[4, -4j, -4j, -4, -4j, -4j], [-3j, 3, 1, -j, 1, -5], [-j, 1, 3, -3j, -5, 1],
                 [-4, -4j, -4j, 4, -4j, -4j], [-j, 1, -5, -3j, 3, 1], [-3j, -5, 1, -j, 1, 3]]

# loop Hamiltonian on the 0-defect sector of N = 4 with v = 1: entries are 2 beta, beta,
# alpha or integers; encoded as (integer, beta coefficient, alpha coefficient)
OMEGA0_H = [
    [(0, 2, 0), (2, 0, 0), (0, 0, 1), (0, 0, 0), (0, 0, 1), (2, 0, 0)],
    [(1, 0, 0), (0, 1, 0), (0, 0, 0), (0, 0, 0), (0, 0, 0), (0, 0, 0)],
    [(0, 0, 0), (0, 0, 0), (0, 1, 0), (1, 0, 0), (0, 0, 0), (0, 0, 0)],
    [(0, 0, 0), (0, 0, 1), (2, 0, 0), (0, 2, 0), (2, 0, 0), (0, 0, 1)],
    [(0, 0, 0), (0, 0, 0), (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 0)],
    [(1, 0, 0), (0, 0, 0), (0, 0, 0), (0, 0, 0), (0, 0, 0), (0, 1, 0)],
]

CITATIONS = {
    "F2": "published display: rho(F_2) on {(), )(, ||} with entries alpha, 1, 2 cos(Lambda)",
    "F3": "published display: rho(F_3) = 2 [[C1/2 .. C1/2], ..., C3/2]",
    "F3_Jordan": "published display: Jordan form of rho(F_3) at Lambda = 0 is diag(2,2) + J_2(2)",
    "I40": "published display: I_4^0(q, v) on |+-+->, |++-->, |-++->, |-+-+>, |+--+>, |--++>",
    "I40_expansion": "published display: q I_4^0(q, 1) = I_0 + (q-i) I_1 + (q-i)^2 I_2",
    "M0_N4": "published display: inverse leading term (1/8)(...)/(q-i), iota = 1",
    "M1_N4": "published display: inverse next term (1/16)(...)",
    "omega0_H": "published display: omega_0(H) for N = 4 in beta, alpha",
    "omega0_H_Jordan": "published display: Jordan form at beta = 0, alpha = 2: J_2(0) + 0 + 0 + (-2 sqrt 2) + (2 sqrt 2)",
    "bratelli_P2": "published figure: Bratteli diagram at q = exp(i pi/2), solid and nested dashed boxes up to N = 12",
}

# Bratteli figure at P = 2.  Solid boxes: cells from the constructive argument.  Dashed boxes:
# cells seen numerically; the value is the nesting depth = Jordan partners in the largest cell.
FIG_SOLID_P2 = ((4, 0), (5, 1), (6, 2), (7, 3), (8, 4), (9, 5), (10, 6), (11, 7), (12, 8))
FIG_DASHED_P2 = {
    (6, 0): 1, (7, 1): 1, (8, 0): 2, (8, 2): 1, (9, 1): 2, (9, 3): 1, (10, 0): 2, (10, 2): 2,
    (10, 4): 1, (11, 1): 2, (11, 3): 2, (11, 5): 1, (12, 0): 3, (12, 2): 2, (12, 4): 2, (12, 6): 1,
}


def _gauss(m: int, z) -> CycScalar:
    z = complex(z)
    i = cyc_from_angle(1, 2).coerce(m)
    return cyc(int(z.real), m) + i * int(z.imag)


def gaussian_matrix(rows, m: int = 4, scale=1) -> CycMatrix:
    ent = {}
    for r, row in enumerate(rows):
        for c, z in enumerate(row):
            if z != 0:
                ent[(r, c)] = _gauss(m, z) * scale
    return CycMatrix.from_entries(m, (len(rows), len(rows[0])), ent)


def _perm_matrix(M: CycMatrix, rows: list[int], cols: list[int]) -> CycMatrix:
    ent = M.entries()
    rinv = {r: a for a, r in enumerate(rows)}
    cinv = {c: b for b, c in enumerate(cols)}
    return CycMatrix.from_entries(M.m, (len(rows), len(cols)),
                                  {(rinv[r], cinv[c]): x for (r, c), x in ent.items() if r in rinv and c in cinv})


def _intertwiner_in_display_order(I) -> tuple[list[int], list[int]]:
    rows = [I.rows.index(s) for s in I40_ROWS]
    names = [w.string for w in I.cols]
    cols = [names.index(s) for s in I40_COLS]
    return rows, cols


def check_F2(a: int, b: int, alpha) -> bool:
    ani = Anisotropy(a, b)
    al = cyc(alpha)
    rep = RhoRep(2, LoopParams(ani.beta, al))
    F = f_central(rep, ani)
    m = F.m
    want = CycMatrix.from_entries(m, (3, 3), {(0, 0): al, (1, 1): al, (0, 2): 1, (1, 2): 1, (2, 2): ani.C(1) * 2})
    return F == want


def check_F3(a: int, b: int) -> bool:
    ani = Anisotropy(a, b)
    rep = RhoRep(3, LoopParams(ani.beta, 2))
    F = f_central(rep, ani)
    c1, c3 = ani.C(Fraction(1, 2)) * 2, ani.C(Fraction(3, 2)) * 2
    ent = {(0, 0): c1, (1, 1): c1, (2, 2): c1, (0, 3): c1, (1, 3): c1, (2, 3): c1, (3, 3): c3}
    return F == CycMatrix.from_entries(F.m, (4, 4), ent)


def check_F3_jordan() -> dict:
    ani = Anisotropy(0, 1)
    rep = RhoRep(3, LoopParams(ani.beta, 2))
    prof = jordan_profile(f_central(rep, ani), 2, multiplicity=4)
    return {"blocks": prof.blocks, "pass": prof.blocks == {1: 2, 2: 1} and prof.certified_min_size == 2}


def check_I40(qh: CycScalar, v: CycScalar) -> bool:
    I = build_I(4, 0, qh, v)
    M = I.at()
    rows, cols = _intertwiner_in_display_order(I)
    mine = _perm_matrix(M, rows, cols)
    m = M.m
    q = (qh * qh).coerce(m)
    vv = v.coerce(m)
    ent = {}
    for r, row in enumerate(I40_SYMBOLIC):
        for c, t in enumerate(row):
            if t:
                coef, qe, ve = t
                ent[(r, c)] = q ** qe * vv ** ve * coef
    return mine == CycMatrix.from_entries(m, (6, 6), ent)


def check_expansion() -> dict:
    """q I_4^0(q, 1) around q = i and the first two terms of its inverse, both routes."""
    qh, v = cyc_from_angle(1, 4), cyc(1)
    I = build_I(4, 0, qh, v)
    rows, cols = _intertwiner_in_display_order(I)
    out = {}
    for route, fn in (("kernel", expand_kernel), ("series", expand_series)):
        b = fn(4, 0, qh, v)
        m = b.I[0].m
        got = [_perm_matrix(X, rows, cols) for X in b.I[:3]]
        want = [gaussian_matrix(X, m) for X in (EXP_I0, EXP_I1, EXP_I2)]
        # the inverse maps spins to links: its rows are link states, columns spins
        M0 = _perm_matrix(b.M0, cols, rows)
        M1 = _perm_matrix(b.M1, cols, rows)
        out[route] = {
            "I_terms": [g == w for g, w in zip(got, want)],
            "iota": b.iota,
            "M0": M0 == gaussian_matrix(EXP_M0_SCALED, m, Fraction(1, 8)),
            "M1": M1 == gaussian_matrix(EXP_M1_SCALED, m, Fraction(1, 16)),
        }
    out["pass"] = all(all(r["I_terms"]) and r["iota"] == 1 and r["M0"] and r["M1"]
                      for r in (out["kernel"], out["series"]))
    return out


def _omega0_rep(beta, alpha) -> tuple[OmegaRep, list[int]]:
    rep = OmegaRep(4, 0, LoopParams(beta, alpha, 1))
    names = [w.string for w in rep.basis]
    return rep, [names.index(s) for s in I40_COLS]


def check_omega0_H(beta, alpha) -> bool:
    rep, order = _omega0_rep(beta, alpha)
    H = _perm_matrix(hamiltonian(rep), order, order)
    b, a = cyc(beta).coerce(H.m), cyc(alpha).coerce(H.m)
    ent = {}
    for r, row in enumerate(OMEGA0_H):
        for c, (n, nb, na) in enumerate(row):
            x = b * nb + a * na + n
            if not x.is_zero():
                ent[(r, c)] = x
    return H == CycMatrix.from_entries(H.m, (6, 6), ent)


def check_omega0_jordan() -> dict:
    """At beta = 0, alpha = 2: blocks {2, 1, 1} at 0 and simple eigenvalues +-2 sqrt 2."""
    rep, _ = _omega0_rep(0, 2)
    H = hamiltonian(rep)
    kernels, _ = zero_generalized_kernel(H)
    prof0 = exact_zero_profile(H, kernels)
    m = 8
    r2 = cyc_from_angle(1, 4) + cyc_from_angle(-1, 4)         # sqrt 2
    Hm = H.coerce(common_conductor(cyc(1, H.m), cyc(1, m)))
    others = {}
    for sgn in (1, -1):
        gam = r2 * 2 * sgn
        prof = jordan_profile(Hm, gam, multiplicity=1)
        others["%+d*2sqrt2" % sgn] = prof.blocks
    ok = prof0.blocks == {1: 2, 2: 1} and all(b == {1: 1} for b in others.values())
    return {"blocks_at_0": prof0.blocks, "others": others, "pass": ok}


def fixture_corpus() -> list[dict]:
    """Every pinned display with its citation and a verdict from the engine."""
    gq, gv = cyc_from_angle(1, 10), cyc_from_angle(1, 7)
    out = [
        {"name": "F2", "pass": all(check_F2(a, b, al) for a, b in ((1, 3), (2, 5), (0, 1)) for al in (2, 3))},
        {"name": "F3", "pass": all(check_F3(a, b) for a, b in ((1, 3), (2, 5), (0, 1), (1, 4)))},
        {"name": "F3_Jordan", "pass": check_F3_jordan()["pass"]},
        {"name": "I40", "pass": check_I40(gq, gv) and check_I40(cyc_from_angle(1, 4), cyc(1))},
    ]
    ex = check_expansion()
    out.append({"name": "I40_expansion", "pass": all(all(ex[r]["I_terms"]) for r in ("kernel", "series"))})
    out.append({"name": "M0_N4", "pass": all(ex[r]["M0"] and ex[r]["iota"] == 1 for r in ("kernel", "series"))})
    out.append({"name": "M1_N4", "pass": all(ex[r]["M1"] for r in ("kernel", "series"))})
    out.append({"name": "omega0_H", "pass": check_omega0_H(cyc_from_angle(2, 13), cyc_from_angle(3, 17) * 3)
                and check_omega0_H(0, 2)})
    out.append({"name": "omega0_H_Jordan", "pass": check_omega0_jordan()["pass"]})
    from .jordan_cell import solid_boxes
    out.append({"name": "bratelli_P2", "pass": tuple(solid_boxes(2, 12)) == FIG_SOLID_P2})
    for f in out:
        f["citation"] = CITATIONS[f["name"]]
    return out
