"""Command-line front end: every command prints one deterministic report.

Angles are given as fractions of pi, e.g. ``--q-half 1/4`` means q^(1/2) = exp(i pi/4).
Output is JSON (schema 1) by default, CSV with ``--csv`` (matrices only) or a short
human summary with ``--pretty``.  The exit status is 0 iff every verdict passes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from fractions import Fraction

from . import fixtures
from . import intertwiner as itw
from . import jordan_cell as jc
from . import linkstates as ls
from . import xxz_uq as xx
from .eptl_rep import LoopParams, OmegaRep, RhoRep, verify_relations
from .fn_analysis import bratelli_segments, verify_theorem_3_2
from .linalg import CycMatrix
from .operators import Anisotropy, check_transfer_properties, f_central, hamiltonian
from .scalars import CycScalar, cyc, cyc_from_angle

SCHEMA = 1


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# serialization

def to_plain(x):
    """Recursively turn report objects into JSON-ready data with string keys."""
    if isinstance(x, CycScalar):
        return x.to_json()
    if isinstance(x, CycMatrix):
        return matrix_triplets(x)
    if isinstance(x, dict):
        return {str(k): to_plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((to_plain(v) for v in x), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, ls.LinkState):
        return x.string
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def matrix_triplets(M: CycMatrix) -> dict:
    return {"shape": list(M.shape), "m": M.m,
            "entries": [[r, c, x.to_json()["coeffs"]] for (r, c), x in sorted(M.entries().items())]}


def verdicts(x, path="") -> list[tuple[str, bool]]:
    """Every boolean stored under a key named 'pass' (or ending in '_pass')."""
    out = []
    if isinstance(x, dict):
        for k, v in x.items():
            p = path + "/" + str(k) if path else str(k)
            if (k == "pass" or str(k).endswith("_pass")) and isinstance(v, bool):
                out.append((p, v))
            else:
                out.extend(verdicts(v, p))
    elif isinstance(x, list):
        for i, v in enumerate(x):
            out.extend(verdicts(v, "%s[%d]" % (path, i)))
    return out


def dump_json(report: dict) -> str:
    return json.dumps(to_plain(report), sort_keys=True, indent=1) + "\n"


def dump_csv(report: dict) -> str:
    """All matrices of the report as rows: name,row,col,m,coeffs (coeffs as 'exp:num;...')."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["matrix", "row", "col", "m", "coeffs"])

    def walk(x, path):
        if isinstance(x, dict) and "entries" in x and "shape" in x and "m" in x:
            for r, c, co in x["entries"]:
                w.writerow([path, r, c, x["m"], ";".join("%s:%s" % (e, v) for e, v in co)])
            return
        if isinstance(x, dict):
            for k in sorted(x):
                walk(x[k], path + "/" + k if path else k)
        elif isinstance(x, list):
            for i, v in enumerate(x):
                walk(v, "%s[%d]" % (path, i))
    walk(to_plain(report), "")
    return buf.getvalue()


def dump_pretty(report: dict) -> str:
    lines = ["%s  %s" % (report["command"], json.dumps(to_plain(report["config"]), sort_keys=True))]
    for p, ok in verdicts(report.get("result", {})):
        lines.append("  %-4s %s" % ("ok" if ok else "FAIL", p))
    lines.append("overall: %s" % ("PASS" if report["pass"] else "FAIL"))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument helpers

def angle(text: str) -> tuple[int, int]:
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError("angle must be a fraction of pi such as 1/4, got %r" % text)
    return f.numerator, f.denominator


def angle_scalar(text: str) -> CycScalar:
    a, b = angle(text)
    return cyc_from_angle(a, b)


def need(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise ConfigError("--%s is required for %s" % (n.replace("_", "-"), args.command))


def check_parity(N: int, d: int) -> None:
    if not 0 <= d <= N or (N - d) % 2:
        raise ConfigError("need 0 <= d <= N with d = N mod 2 (got N=%d, d=%d)" % (N, d))


def check_lambda(a: int, b: int) -> None:
    if b <= 0 or math.gcd(a, b) != 1:
        raise ConfigError("Lambda = pi a/b needs b > 0 and gcd(a, b) = 1 (got a=%d, b=%d)" % (a, b))


def loop_params(args, N: int) -> tuple[LoopParams, Anisotropy]:
    check_lambda(args.a, args.b)
    ani = Anisotropy(args.a, args.b)
    v = angle_scalar(args.v) if args.v else cyc(1)
    if args.alpha is not None:
        alpha = cyc(Fraction(args.alpha))
    else:
        alpha = v ** N + v ** (-N)
    return LoopParams(ani.beta, alpha, v), ani


def chain_params(args) -> tuple[CycScalar, CycScalar]:
    """q^(1/2) and v: from --q-half directly, or from Lambda (q = exp(-i Lambda))."""
    if args.q_half:
        qh = angle_scalar(args.q_half)
    else:
        need(args, "a", "b")
        check_lambda(args.a, args.b)
        qh = cyc_from_angle(-args.a, 2 * args.b)
    v = angle_scalar(args.v) if args.v else cyc(1)
    return qh, v


# ---------------------------------------------------------------------------
# commands

def cmd_basis(args) -> dict:
    need(args, "N")
    N = args.N
    sectors = [args.d] if args.d is not None else ls.sectors(N)
    out = {}
    for d in sectors:
        check_parity(N, d)
        states = ls.enumerate_states(N, d)
        out[str(d)] = {"count": len(states), "expected": math.comb(N, (N - d) // 2),
                       "states": [w.to_json() for w in states],
                       "pass": len(states) == math.comb(N, (N - d) // 2)
                       and {w.string for w in states} == ls.brute_force_sector(N, d)}
    return out


def _rep(args):
    need(args, "N", "a", "b")
    N = args.N
    if args.rep == "tau":
        qh, v = chain_params(args)
        ch = xx.SpinChain(N, qh, v)
        sz2 = args.d if args.d is not None else N % 2
        check_parity(N, sz2)
        return xx.SpinRep(ch, sz2), ch.alpha(), ch.beta()
    params, ani = loop_params(args, N)
    if args.rep == "rho":
        rep = RhoRep(N, params)
    else:
        need(args, "d")
        check_parity(N, args.d)
        rep = OmegaRep(N, args.d, params)
    return rep, params.alpha, params.beta


def cmd_repmat(args) -> dict:
    rep, alpha, beta = _rep(args)
    gens = args.gen or ["e%d" % i for i in range(1, rep.N + 1)] + ["O"]
    out = {"rep": rep.describe(), "matrices": {g: rep.generator(g) for g in gens}}
    if hasattr(rep, "basis"):
        out["basis"] = [w.string for w in rep.basis]
    return out


def cmd_relations(args) -> dict:
    need(args, "N")
    if args.rep == "tau":
        qh, v = chain_params(args)
        r = xx.check_tau_relations(args.N, qh, v)
        return {"rep": "tau", "failed_relations": r["failed_relations"], "pass": r["pass"]}
    rep, alpha, beta = _rep(args)
    return verify_relations(rep, alpha, beta)


def cmd_transfer(args) -> dict:
    need(args, "N", "a", "b")
    params, ani = loop_params(args, args.N)
    if args.rep == "omega":
        need(args, "d")
        check_parity(args.N, args.d)
        rep = OmegaRep(args.N, args.d, params)
        mirror = OmegaRep(args.N, args.d, LoopParams(params.beta, params.alpha, params.v.inverse()))
        return check_transfer_properties(rep, ani, mirror)
    return check_transfer_properties(RhoRep(args.N, params), ani)


def _alpha_arg(args):
    return Fraction(args.alpha) if args.alpha is not None else 2


def cmd_fn(args) -> dict:
    need(args, "N", "a", "b")
    check_lambda(args.a, args.b)
    ani = Anisotropy(args.a, args.b)
    alpha = _alpha_arg(args)
    out = {"theorem": verify_theorem_3_2(args.N, args.a, args.b, alpha, transfer=False)}
    if args.N == 2:
        out["fixture_F2"] = {"citation": fixtures.CITATIONS["F2"], "pass": fixtures.check_F2(args.a, args.b, alpha)}
    if args.N == 3:
        out["fixture_F3"] = {"citation": fixtures.CITATIONS["F3"], "pass": fixtures.check_F3(args.a, args.b)}
        if args.a == 0:
            out["fixture_F3_Jordan"] = dict(fixtures.check_F3_jordan(), citation=fixtures.CITATIONS["F3_Jordan"])
    if args.matrix:
        out["F"] = f_central(RhoRep(args.N, LoopParams(ani.beta, cyc(alpha))), ani)
    return out


def cmd_inter_jordan(args) -> dict:
    need(args, "N", "a", "b")
    check_lambda(args.a, args.b)
    return verify_theorem_3_2(args.N, args.a, args.b, _alpha_arg(args), transfer=True)


def cmd_xxz(args) -> dict:
    need(args, "N")
    qh, v = chain_params(args)
    N = args.N
    out = {
        "tau_relations": xx.check_tau_relations(N, qh, v),
        "uq_relations": xx.check_uq_relations(N, qh, v, max_mn=args.max_mn),
        "divided_power_oracle": xx.check_divided_power_oracle(N, qh, v),
        "omega_conjugation": xx.omega_conjugation_identity(N, qh, v, args.max_mn),
        "twist_similarity": xx.twist_similarity(N, qh, v),
    }
    out["tau_relations"].pop("blocks", None)
    if args.P is not None:
        ch = xx.SpinChain(N, qh, v)
        out["lemma_S_commutes"] = xx.lemma_41(ch, args.P)
        if args.k is not None:
            out["lemma_T_commutes"] = xx.lemma_42(ch, args.P, args.k)
    return out


def cmd_intertwiner(args) -> dict:
    need(args, "N", "d")
    check_parity(args.N, args.d)
    qh, v = chain_params(args)
    N, d = args.N, args.d
    out = {"intertwining": itw.check_intertwining(N, d, qh, v),
           "determinant": itw.det_check(N, d, qh, v),
           "critical_k": itw.criticality(N, d, qh, v)}
    if not out["critical_k"]:
        out["spectral_coincidence"] = itw.spectral_coincidence(N, d, qh, v)
    if args.matrix:
        out["matrix"] = itw.build_I(N, d, qh, v).to_json()
    if out["critical_k"] and args.expand:
        b = itw.expand(N, d, qh, v, args.T)
        out["expansion"] = b.to_json()
        out["expansion_checks"] = itw.check_bundle(b)
    if args.P is not None and args.k is not None:
        out["left_kernel"] = itw.kernel_vectors(N, args.P, args.k, qh, v)
    return out


def _instance(args) -> tuple[int, int, int, int]:
    need(args, "N", "P", "k")
    try:
        jc.check_hypotheses(args.N, args.P, args.k)
    except jc.HypothesisError as e:
        raise ConfigError(str(e))
    root = args.root or 0
    if not 0 <= root < args.N:
        raise ConfigError("--root must be in [0, %d)" % args.N)
    return args.N, args.P, args.k, root


def cmd_intra_jordan(args) -> dict:
    N, P, k, root = _instance(args)
    inst, chi = jc.build_chi(N, P, k, root)
    out = {"chi": chi, "cell": jc.certify_cell(inst), "amplitude": jc.amplitude_nu3(inst),
           "negative_controls": jc.negative_controls(N, P, k),
           "on_solid_box": (N, N - 2 * P) in jc.solid_boxes(P, max(N, 2 * P))}
    if (N, P, k) == (4, 2, 0):
        fx = fixtures.check_omega0_jordan()
        out["fixture_omega0_H_Jordan"] = dict(fx, citation=fixtures.CITATIONS["omega0_H_Jordan"])
        out["fixture_omega0_H"] = {"citation": fixtures.CITATIONS["omega0_H"], "pass": fixtures.check_omega0_H(0, 2)}
    return out


def cmd_appendix(args) -> dict:
    N, P, k, root = _instance(args)
    inst = jc.CellInstance(N, P, k, root)
    grid = []
    for y in range(1, N // 2 + 1):
        for x in range(1, y + 1):
            grid.append(itw.check_cor_51(N, y, x, inst.qh_c, inst.v_c))
    return {"B": jc.appendix_B_suite(N, P, k, root), "A": jc.appendix_A_suite(N, P, k, root),
            "nest_vanishing": {"cases": grid, "pass": all(g["pass"] for g in grid)}}


def cmd_bratelli(args) -> dict:
    need(args, "P")
    P, n_max = args.P, args.maxN
    boxes = jc.solid_boxes(P, n_max)
    out = {"P": P, "maxN": n_max, "solid_boxes": [list(b) for b in boxes],
           "segments": bratelli_segments(n_max, 1, P)}
    if args.certify:
        cert = []
        for N, d in boxes:
            if N > args.certify_maxN:
                continue
            ok = True
            for k in range(P):
                if N >= 2 * P + k:
                    inst = jc.CellInstance(N, P, k)
                    ok = ok and jc.certify_cell(inst)["pass"]
            cert.append({"N": N, "d": d, "pass": ok})
        out["certified"] = cert
    if args.float_scan:
        scan = jc.float_scan(P, n_max)
        out["float_scan"] = {"certifying": False, "sectors": scan,
                             "candidates": [[r["N"], r["d"], r["max_block"]] for r in scan if r["max_block"] > 1]}
        if P == 2:
            fig = {b: 2 for b in fixtures.FIG_SOLID_P2}
            fig.update({b: n + 1 for b, n in fixtures.FIG_DASHED_P2.items()})
            seen = {(r["N"], r["d"]): r["max_block"] for r in scan}
            out["float_scan"]["figure_citation"] = fixtures.CITATIONS["bratelli_P2"]
            out["float_scan"]["disagreements_with_figure"] = [
                [N, d, seen[(N, d)], fig.get((N, d), 1)] for N, d in sorted(seen) if seen[(N, d)] != fig.get((N, d), 1)]
    return out


def cmd_fixtures(args) -> dict:
    return {"fixtures": fixtures.fixture_corpus()}


COMMANDS = {
    "basis": cmd_basis, "repmat": cmd_repmat, "relations": cmd_relations, "transfer": cmd_transfer,
    "fn": cmd_fn, "inter-jordan": cmd_inter_jordan, "xxz": cmd_xxz, "intertwiner": cmd_intertwiner,
    "intra-jordan": cmd_intra_jordan, "appendix": cmd_appendix, "bratelli": cmd_bratelli,
    "fixtures": cmd_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eptl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", help="JSON file with default values for these options")
        s.add_argument("--N", type=int)
        s.add_argument("--d", type=int, help="defects (or 2 S^z for tau)")
        s.add_argument("--a", type=int, help="Lambda = pi a / b")
        s.add_argument("--b", type=int)
        s.add_argument("--alpha", help="non-contractible loop weight (rational); default v^N + v^-N or 2")
        s.add_argument("--v", help="twist angle over pi, e.g. 1/7")
        s.add_argument("--q-half", dest="q_half", help="angle of q^(1/2) over pi")
        s.add_argument("--rep", choices=["rho", "omega", "tau"], default="rho")
        s.add_argument("--gen", action="append", help="generator name (e1..eN, O, Oi); repeatable")
        s.add_argument("--P", type=int)
        s.add_argument("--k", type=int)
        s.add_argument("--root", type=int)
        s.add_argument("--T", type=int, default=4, help="series truncation")
        s.add_argument("--max-mn", dest="max_mn", type=int, default=3)
        s.add_argument("--maxN", type=int, default=12)
        s.add_argument("--certify", action="store_true", help="bratelli: run the cell certificate on solid boxes")
        s.add_argument("--certify-maxN", dest="certify_maxN", type=int, default=10)
        s.add_argument("--float-scan", dest="float_scan", action="store_true")
        s.add_argument("--expand", action="store_true", help="intertwiner: expansion around a critical point")
        s.add_argument("--matrix", action="store_true", help="include the full matrix in the report")
        s.add_argument("--timing", action="store_true", help="add wall time (breaks byte stability)")
        fmt = s.add_mutually_exclusive_group()
        fmt.add_argument("--csv", action="store_true")
        fmt.add_argument("--pretty", action="store_true")
        s.add_argument("--json", dest="out", help="write the report to this path instead of stdout")
    return p


CONFIG_KEYS = ("N", "d", "a", "b", "alpha", "v", "q_half", "rep", "gen", "P", "k", "root", "T",
               "max_mn", "maxN", "certify", "certify_maxN", "float_scan", "expand", "matrix")


def parse(argv) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        with open(args.config) as fh:
            conf = json.load(fh)
        defaults = parser.parse_args([args.command])
        for k, v in conf.items():
            if k not in CONFIG_KEYS:
                raise ConfigError("unknown config key %r" % k)
            if getattr(args, k) == getattr(defaults, k):
                setattr(args, k, v)
    return args


def run(args: argparse.Namespace) -> dict:
    config = {k: getattr(args, k) for k in CONFIG_KEYS if getattr(args, k) not in (None, False)}
    t0 = time.perf_counter()
    result = COMMANDS[args.command](args)
    report = {"schema": SCHEMA, "command": args.command, "config": config, "result": result}
    v = verdicts(to_plain(result))
    report["pass"] = all(ok for _, ok in v) if v else True
    report["failed"] = [p for p, ok in v if not ok]
    if args.timing:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    return report


def main(argv=None) -> int:
    try:
        args = parse(sys.argv[1:] if argv is None else argv)
        report = run(args)
    except ConfigError as e:
        sys.stderr.write("eptl: %s\n" % e)
        return 2
    if args.csv:
        text = dump_csv(report)
    elif args.pretty:
        text = dump_pretty(report)
    else:
        text = dump_json(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
