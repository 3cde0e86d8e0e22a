"""Acceptance suite: one test (and one summary line) per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys
import time
from functools import lru_cache

import pytest

from eptl import fixtures
from eptl import intertwiner as itw
from eptl import jordan_cell as jc
from eptl import xxz_uq as xx
from eptl.eptl_rep import LoopParams, OmegaRep, RhoRep, verify_relations
from eptl.fn_analysis import verify_theorem_3_2
from eptl.operators import Anisotropy, check_transfer_properties
from eptl.scalars import cyc, cyc_from_angle

# (a, b, v_num, v_den): Lambda = pi a/b, v = exp(i pi v_num/v_den)
RELATION_SAMPLES = [(1, 3, 1, 5), (1, 4, 1, 3), (2, 5, 0, 1), (1, 5, 1, 2), (2, 3, 1, 4)]
# (q^(1/2), v) angles over pi, chosen with small conductors
GENERIC_PAIRS = [((1, 5), (1, 3)), ((2, 7), (1, 2)), ((1, 3), (1, 5))]
LAMBDAS = [(1, 2), (1, 3), (2, 3), (1, 4)]
CELL_INSTANCES = [(N, 2, k) for k in (0, 1) for N in range(4 + k, 11)]


def _pairs(n_max):
    return [(N, d) for N in range(2, n_max + 1) for d in range(N % 2, N + 1, 2)]


def _roots(N):
    return range(N) if N <= 6 else (0,)


# ---------------------------------------------------------------------------

def criterion_1():
    corpus = fixtures.fixture_corpus()
    bad = [f["name"] for f in corpus if not f["pass"]]
    return not bad, "%d fixtures, failing: %s" % (len(corpus), bad or "none")


@lru_cache(maxsize=None)
def _relations_for(N):
    """All three representations at every sample; returns failing (rep, sample, relation) triples."""
    failures = []
    for a, b, vn, vd in RELATION_SAMPLES:
        v = cyc_from_angle(vn, vd)
        p = LoopParams.from_q(cyc_from_angle(-a, b), v, N=N)
        reps = [("rho", RhoRep(N, p))] + [("omega_%d" % d, OmegaRep(N, d, p)) for d in range(N % 2, N + 1, 2)]
        for name, rep in reps:
            r = verify_relations(rep, p.alpha, p.beta)
            failures += [(name, (a, b, vn, vd), x["relation"]) for x in r["relations"] if not x["pass"]]
        t = xx.check_tau_relations(N, cyc_from_angle(-a, 2 * b), v)
        failures += [("tau", (a, b, vn, vd), f) for f in t["failed_relations"]]
    return tuple(failures)


def _winding_negative_control(N):
    """alpha != v^N + v^-N must break exactly the winding relations (even N only), compared with
    the same representation checked at the correct alpha."""
    a, b, vn, vd = RELATION_SAMPLES[0]
    p = LoopParams.from_q(cyc_from_angle(-a, b), cyc_from_angle(vn, vd), N=N)
    rep = OmegaRep(N, 0, p)

    def failed(alpha):
        return {x["relation"] for x in verify_relations(rep, alpha, p.beta)["relations"] if not x["pass"]}
    return failed(p.alpha + 1) - failed(p.alpha) == {"E O E = alpha E", "E Oi E = alpha E"}


def criterion_2(Ns=range(2, 9)):
    failures, controls = {}, {}
    for N in Ns:
        failures[N] = _relations_for(N)
        if N % 2 == 0:
            controls[N] = _winding_negative_control(N)
    ok = not any(failures.values()) and all(controls.values())
    bad = {N: sorted({f[2] for f in fl}) for N, fl in failures.items() if fl}
    if set(bad) == {2}:
        bad["note"] = "on two sites e1 e2 e1 = alpha^2 e1 (two winding loops)"
    return ok, "N=%d..%d, %d samples x (rho, omega_d, tau); negative control %s; failing: %s" % (
        min(Ns), max(Ns), len(RELATION_SAMPLES), "ok" if all(controls.values()) else "BROKEN", bad or "none")


def criterion_3(Ns=range(2, 7)):
    bad = []
    for a, b in [(1, 3), (1, 4), (2, 3)]:
        ani = Anisotropy(a, b)
        for N in Ns:
            if not check_transfer_properties(RhoRep(N, LoopParams(ani.beta, cyc(2))), ani)["pass"]:
                bad.append(("rho", a, b, N))
    ani = Anisotropy(1, 3)
    v = cyc_from_angle(1, 5)
    for N in range(2, 6):
        p = LoopParams(ani.beta, v ** N + v ** -N, v)
        for d in range(N % 2, N + 1, 2):
            mirror = OmegaRep(N, d, LoopParams(p.beta, p.alpha, v.inverse()))
            if not check_transfer_properties(OmegaRep(N, d, p), ani, mirror)["pass"]:
                bad.append(("omega", d, N))
    return not bad, "rho N=2..6 at 3 anisotropies, omega_d N=2..5; failing: %s" % (bad or "none")


def _critical_pair(d):
    # q^(2+d) = 1 with v = 1 makes <1 + d/2> vanish (k = 1)
    return cyc_from_angle(1, 2 + d), cyc(1)


def criterion_4(n_max=8):
    bad, units, crit = [], set(), 0
    for N, d in _pairs(n_max):
        samples = [(cyc_from_angle(*qh), cyc_from_angle(*v)) for qh, v in GENERIC_PAIRS]
        if d < N:
            samples.append(_critical_pair(d))
        for qh, v in samples:
            r = itw.det_check(N, d, qh, v)
            if not r["pass"]:
                bad.append((N, d))
            if r["formula_zero"]:
                crit += 1
            elif r["ratio"]:
                units.add(r["ratio"])
    return not bad, "all (N,d) with N<=%d, %d generic + 1 critical sample each (d<N); %d vanishing cases; " \
                    "det/formula units seen %s; failing: %s" % (n_max, len(GENERIC_PAIRS), crit,
                                                               sorted(units), bad or "none")


def criterion_5(n_max=8):
    bad = []
    for N, d in _pairs(n_max):
        for qh, v in GENERIC_PAIRS[:2]:
            if not itw.check_intertwining(N, d, cyc_from_angle(*qh), cyc_from_angle(*v))["pass"]:
                bad.append((N, d, qh, v))
        qc, vc = _critical_pair(d)
        if not itw.check_intertwining(N, d, qc, vc)["pass"]:
            bad.append((N, d, "critical"))
    return not bad, "all (N,d) with N<=%d, 3 samples each; failing: %s" % (n_max, bad or "none")


def criterion_6(n_max=10):
    bad, cells = [], 0
    for a, b in LAMBDAS:
        for N in range(2, n_max + 1):
            r = verify_theorem_3_2(N, a, b, 2, transfer=True)
            cells += len(r["prediction"]["tuples"])
            if not r["pass"]:
                bad.append((a, b, N))
    return not bad, "Lambda in {pi/2, pi/3, 2pi/3, pi/4}, N<=%d, %d predicted coupling tuples; failing: %s" % (
        n_max, cells, bad or "none")


def criterion_7():
    bad, n, partner = [], 0, 0
    for N, P, k in CELL_INSTANCES:
        for root in _roots(N):
            n += 1
            r = jc.certify_cell(jc.CellInstance(N, P, k, root))
            partner += r["I0_image_of_partner_nonzero"]
            if not (r["pass"] and r["M0_chi_zero"] and r["H_chi_zero"] and r["H_v0_nonzero"] and r["block_ge_2"]):
                bad.append((N, P, k, root))
    boxes = set(jc.solid_boxes(2, 10))
    fig = {b for b in fixtures.FIG_SOLID_P2 if b[0] <= 10}
    certified = {(N, N - 4) for N, _, _ in CELL_INSTANCES}
    ok = not bad and boxes == fig == certified
    return ok, "%d certified cells (all roots for N<=6), partner image nonzero in %d; solid boxes %s figure; " \
               "failing: %s" % (n, partner, "match" if boxes == fig == certified else "DIFFER FROM", bad or "none")


def criterion_8():
    bad = []
    for N, P, k in CELL_INSTANCES:
        for root in _roots(N):
            if not jc.amplitude_nu3(jc.CellInstance(N, P, k, root))["pass"]:
                bad.append((N, P, k, root))
    return not bad, "direct derivative = closed form on all criterion-7 instances; failing: %s" % (bad or "none")


def _cor51_grid():
    bad, vanish = [], 0
    for N in range(2, 9):
        for y in range(1, min(4, N // 2) + 1):
            d = N - 2 * y
            for x in range(1, min(4, y) + 1):
                points = [(cyc_from_angle(*qh), cyc_from_angle(*v)) for qh, v in GENERIC_PAIRS[:1]]
                points.append((cyc_from_angle(1, d + 2 * x), cyc(1)))    # <d/2 + x> = 0
                for qh, v in points:
                    r = itw.check_cor_51(N, y, x, qh, v)
                    vanish += r["vanishes"]
                    if not r["pass"]:
                        bad.append((N, y, x))
    return bad, vanish


def criterion_9():
    bad = []
    for N, P, k in CELL_INSTANCES:
        if not jc.appendix_B_suite(N, P, k)["pass"]:
            bad.append(("B", N, k))
        if not jc.appendix_A_suite(N, P, k)["pass"]:
            bad.append(("A", N, k))
    grid_bad, vanish = _cor51_grid()
    bad += [("nest", g) for g in grid_bad]
    return not bad, "lemma/partial sums/B and A suites on criterion-7 instances; vanishing-rule grid " \
                    "(N,y,x)<=(8,4,4) with %d vanishing cases; failing: %s" % (vanish, bad or "none")


def criterion_10(n_max=8):
    bad = []
    qh, v = cyc_from_angle(1, 5), cyc_from_angle(1, 3)
    for N in range(2, n_max + 1):
        checks = {
            "uq": xx.check_uq_relations(N, qh, v, max_mn=3)["pass"],
            "omega": xx.omega_conjugation_identity(N, qh, v, 3)["pass"],
            "twist": xx.twist_similarity(N, qh, v)["pass"],
            "divided": xx.check_divided_power_oracle(min(N, 6), qh, v)["pass"],
        }
        bad += [(N, k) for k, ok in checks.items() if not ok]
    # the same relations at a root of unity, where divided powers are not quotients
    if not xx.check_uq_relations(6, cyc_from_angle(1, 4), cyc(1), max_mn=3)["pass"]:
        bad.append((6, "uq at q = i"))
    for N, P, k in [(4, 2, 0), (5, 2, 1), (6, 2, 0), (6, 3, 0), (7, 2, 1), (8, 2, 0)]:
        inst = jc.CellInstance(N, P, k)
        ch = xx.SpinChain(N, inst.qh_c, inst.v_c)
        for name, r in (("lemma S", xx.lemma_41(ch, P)), ("lemma TS", xx.lemma_42(ch, P, k))):
            if not (r["pass"] and r["negative_control_nonzero"]):
                bad.append((N, P, k, name))
    return not bad, "N=2..%d relations, divided powers, commutators m,n<=3, twist identity; lemmas at 6 " \
                    "critical twists with negative controls; failing: %s" % (n_max, bad or "none")


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10}


# ---------------------------------------------------------------------------
# pytest entry points

def test_criterion_01_fixtures(record):
    ok, detail = criterion_1()
    record(1, ok, detail)
    assert ok, detail


def test_criterion_02_relations(record):
    ok, detail = criterion_2()
    record(2, ok, detail)
    assert ok, detail


@pytest.mark.xfail(strict=True, reason="on two sites e1 e2 e1 = e1 is false in every representation")
def test_criterion_02_two_sites_only():
    assert not _relations_for(2)


def test_criterion_02_three_to_eight_sites():
    for N in range(3, 9):
        assert not _relations_for(N), N
        if N % 2 == 0:
            assert _winding_negative_control(N)


def test_criterion_03_transfer(record):
    ok, detail = criterion_3()
    record(3, ok, detail)
    assert ok, detail


def test_criterion_04_determinant(record):
    ok, detail = criterion_4()
    record(4, ok, detail)
    assert ok, detail


def test_criterion_05_intertwining(record):
    ok, detail = criterion_5()
    record(5, ok, detail)
    assert ok, detail


def test_criterion_06_inter_sector_cells(record):
    ok, detail = criterion_6()
    record(6, ok, detail)
    assert ok, detail


def test_criterion_07_intra_sector_cells(record):
    ok, detail = criterion_7()
    record(7, ok, detail)
    assert ok, detail


def test_criterion_08_amplitude(record):
    ok, detail = criterion_8()
    record(8, ok, detail)
    assert ok, detail


def test_criterion_09_appendix(record):
    ok, detail = criterion_9()
    record(9, ok, detail)
    assert ok, detail


def test_criterion_10_quantum_group(record):
    ok, detail = criterion_10()
    record(10, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    wanted = [int(a) for a in sys.argv[1:]] or sorted(CRITERIA)
    all_ok = True
    for n in wanted:
        t0 = time.perf_counter()
        ok, detail = CRITERIA[n]()
        all_ok &= ok
        print("criterion %2d: %s  %s  (%.0f s)" % (n, "PASS" if ok else "FAIL", detail, time.perf_counter() - t0),
              flush=True)
    sys.exit(0 if all_ok else 1)
