"""Loop representations of the enlarged periodic Temperley-Lieb algebra.

A diagram is described by where each of its boundary points is joined, in
lifted (universal cover) coordinates: ``conn[side][r] = (side2, shift)`` means
the point at lifted position x = r (mod N) on ``side`` is joined to the point
at lifted position x + shift on ``side2``.  A link state is placed on top of
the diagram and the resulting state is read at the bottom; lifted coordinates
keep track of winding, which decides loop weights (beta for contractible,
alpha for non-contractible loops) and how far each defect travelled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import linkstates as ls
from .linalg import CycMatrix, Embeddings, ModMat, certify_zero
from .scalars import CycScalar, common_conductor, cyc

TOP, BOT = 0, 1


class Diagram:
    """Annular (N, N) diagram with no internal loops."""

    __slots__ = ("N", "conn", "key")

    def __init__(self, N: int, conn: tuple, key):
        self.N = N
        self.conn = conn  # conn[side][r] = (side2, shift)
        self.key = key

    def follow(self, side: int, x: int) -> tuple[int, int]:
        s2, sh = self.conn[side][x % self.N]
        return s2, x + sh


@lru_cache(maxsize=None)
def generator_diagram(N: int, name: str) -> Diagram:
    """``e1``..``eN``, ``O`` (Omega), ``Oi`` (Omega inverse) or ``id``."""
    through = {"id": 0, "O": -1, "Oi": 1}
    if name in through:
        s = through[name]
        top = tuple((BOT, s) for _ in range(N))
        bot = tuple((TOP, -s) for _ in range(N))
        return Diagram(N, (top, bot), name)
    if name.startswith("e"):
        i = int(name[1:])
        if not 1 <= i <= N:
            raise ValueError("generator %s out of range for N=%d" % (name, N))
        a, b = i - 1, i % N
        row = []
        for r in range(N):
            if r == a:
                row.append(1)
            elif r == b:
                row.append(-1)
            else:
                row.append(None)
        top = tuple((TOP, s) if s is not None else (BOT, 0) for s in row)
        bot = tuple((BOT, s) if s is not None else (TOP, 0) for s in row)
        return Diagram(N, (top, bot), name)
    raise ValueError("unknown generator %r" % name)


@lru_cache(maxsize=None)
def tile_row_diagram(config: str) -> Diagram:
    """Row of tiles; 'A' joins (top, left) and (bottom, right), 'B' joins (top, right) and (bottom, left).

    All-A is Omega and all-B is Omega inverse.
    """
    N = len(config)

    def trace(side: int, x: int) -> tuple[int, int]:
        # enter tile x from its top or bottom edge and walk horizontally until leaving vertically
        t = config[x % N]
        if side == TOP:
            step = -1 if t == "A" else 1
        else:
            step = 1 if t == "A" else -1
        y = x + step
        while True:
            t = config[y % N]
            if step == -1:  # entering tile y from its right edge
                if t == "A":
                    return BOT, y
                return TOP, y
            if t == "A":    # entering from the left edge
                return TOP, y
            return BOT, y

    top = []
    bot = []
    for r in range(N):
        s, y = trace(TOP, r)
        top.append((s, y - r))
        s, y = trace(BOT, r)
        bot.append((s, y - r))
    return Diagram(N, (tuple(top), tuple(bot)), "tiles:" + config)


@dataclass(frozen=True)
class Outcome:
    target: str          # resulting link state string
    n_beta: int          # contractible loops
    n_alpha: int         # non-contractible loops
    travel: int          # summed leftward travel of surviving defects
    joined: int          # pairs of defects closed by the diagram


def act(diagram: Diagram, w: ls.LinkState) -> Outcome:
    """Place w on top of the diagram and read off the bottom."""
    N = diagram.N
    res = [""] * N
    seen_top = [False] * N
    travel = 0
    for x in range(N):
        if res[x]:
            continue
        side, y = diagram.follow(BOT, x)
        while True:
            if side == BOT:
                s = y - x
                if not 0 < abs(s) < N:
                    raise AssertionError("bottom arc of lifted span %d" % s)
                res[x], res[y % N] = ("(", ")") if s > 0 else (")", "(")
                break
            seen_top[y % N] = True
            p = w.lifted_partner(y)
            if p is None:
                res[x] = "."
                travel += y - x
                break
            seen_top[p % N] = True
            side, y = diagram.follow(TOP, p)
    joined = 0
    for y0 in w.defects():
        if seen_top[y0]:
            continue
        seen_top[y0] = True
        side, y = diagram.follow(TOP, y0)
        while True:
            assert side == TOP
            seen_top[y % N] = True
            p = w.lifted_partner(y)
            if p is None:
                joined += 1
                break
            seen_top[p % N] = True
            side, y = diagram.follow(TOP, p)
    nb = na = 0
    for r in range(N):
        if seen_top[r]:
            continue
        y = r
        while True:
            seen_top[y % N] = True
            p = w.lifted_partner(y)
            seen_top[p % N] = True
            side, y = diagram.follow(TOP, p)
            assert side == TOP
            if y % N == r:
                break
        if y != r:
            na += 1
        else:
            nb += 1
    return Outcome("".join(res), nb, na, travel, joined)


@lru_cache(maxsize=None)
def action_table(N: int, key: str, d: int | None) -> tuple[tuple[int, int, int, int, int], ...]:
    """For each basis column: (row, n_beta, n_alpha, travel, joined); d=None is the full basis."""
    dg = tile_row_diagram(key[6:]) if key.startswith("tiles:") else generator_diagram(N, key)
    basis = ls._full(N) if d is None else ls._sector(N, d)
    idx = ls.index_map(N, None)
    sub = ls.index_map(N, d) if d is not None else idx
    out = []
    for w in basis:
        o = act(dg, w)
        row = idx[o.target] if d is None else sub.get(o.target, -1)
        out.append((row, o.n_beta, o.n_alpha, o.travel, o.joined))
    return tuple(out)


# ---------------------------------------------------------------------------
# parameters and representations

class LoopParams:
    """beta, alpha and twist v written over one conductor."""

    def __init__(self, beta, alpha, v=None):
        beta, alpha = cyc(beta), cyc(alpha)
        v = cyc(1) if v is None else cyc(v)
        m = common_conductor(beta, alpha, v)
        self.m = m
        self.beta = beta.coerce(m)
        self.alpha = alpha.coerce(m)
        self.v = v.coerce(m)
        self._pw: dict = {}

    @classmethod
    def from_q(cls, q: CycScalar, v: CycScalar | None = None, alpha=None, N: int | None = None) -> "LoopParams":
        """beta = -q - 1/q; alpha defaults to v^N + v^-N (needs N)."""
        beta = -(q + q.inverse())
        if alpha is None:
            if v is None or N is None:
                raise ValueError("alpha needs v and N")
            alpha = v ** N + v ** (-N)
        return cls(beta, alpha, v)

    def weight(self, nb: int, na: int, travel: int) -> CycScalar:
        key = (nb, na, travel)
        w = self._pw.get(key)
        if w is None:
            w = self.beta ** nb * self.alpha ** na
            if travel:
                w = w * self.v ** travel
            self._pw[key] = w
        return w

    def to_json(self) -> dict:
        return {"beta": self.beta.to_json(), "alpha": self.alpha.to_json(), "v": self.v.to_json()}


class Rep:
    """Common interface: ``dim``, ``m``, ``generator(name)`` and ``diagram_matrix(key)``."""

    tag = "?"
    N = 0
    m = 1

    def generator(self, name: str) -> CycMatrix:
        return self.diagram_matrix(name)

    def diagram_matrix(self, key: str) -> CycMatrix:
        raise NotImplementedError

    def identity(self) -> CycMatrix:
        return CycMatrix.identity(self.m, self.dim)

    def describe(self) -> dict:
        return {"rep": self.tag, "N": self.N}


class RhoRep(Rep):
    """rho on all link states; defects may be closed (weight 1), winding is forgotten."""

    tag = "rho"

    def __init__(self, N: int, params: LoopParams):
        self.N = N
        self.params = params
        self.m = params.m
        self.basis = ls.full_basis(N)
        self.dim = len(self.basis)
        self._cache: dict = {}

    def diagram_matrix(self, key: str) -> CycMatrix:
        M = self._cache.get(key)
        if M is None:
            ent = {}
            for col, (row, nb, na, _t, _j) in enumerate(action_table(self.N, key, None)):
                ent[(row, col)] = self.params.weight(nb, na, 0)
            M = CycMatrix.from_entries(self.m, (self.dim, self.dim), ent)
            self._cache[key] = M
        return M


class OmegaRep(Rep):
    """omega_{d,v} on the d-defect sector; closing defects gives zero, defect travel weighs v^travel."""

    tag = "omega"

    def __init__(self, N: int, d: int, params: LoopParams):
        self.N = N
        self.d = d
        self.params = params
        self.m = params.m
        self.basis = ls.enumerate_states(N, d)
        self.dim = len(self.basis)
        self._cache: dict = {}

    def diagram_matrix(self, key: str) -> CycMatrix:
        M = self._cache.get(key)
        if M is None:
            ent = {}
            for col, (row, nb, na, t, j) in enumerate(action_table(self.N, key, self.d)):
                if j or row < 0:
                    continue
                ent[(row, col)] = self.params.weight(nb, na, t)
            M = CycMatrix.from_entries(self.m, (self.dim, self.dim), ent)
            self._cache[key] = M
        return M

    def describe(self) -> dict:
        return {"rep": self.tag, "N": self.N, "d": self.d}


# ---------------------------------------------------------------------------
# algebra elements

def parse_word(text: str) -> tuple[str, ...]:
    """Space separated generators; accepts e3, O, Oi (also O^-1)."""
    out = []
    for tok in text.replace(",", " ").split():
        if tok in ("O^-1", "Oinv", "O-"):
            tok = "Oi"
        out.append(tok)
    return tuple(out)


class AlgebraElement:
    """Formal combination of words in the generators; evaluated only inside representations."""

    def __init__(self, terms: dict | None = None):
        self.terms: dict[tuple[str, ...], CycScalar] = {}
        for w, c in (terms or {}).items():
            self._add(tuple(w), cyc(c))

    def _add(self, w: tuple[str, ...], c: CycScalar) -> None:
        cur = self.terms.get(w)
        c = c if cur is None else cur + c
        if c.is_zero():
            self.terms.pop(w, None)
        else:
            self.terms[w] = c

    @classmethod
    def word(cls, text: str | Sequence[str], coeff=1) -> "AlgebraElement":
        w = parse_word(text) if isinstance(text, str) else tuple(text)
        return cls({w: coeff})

    @classmethod
    def identity(cls) -> "AlgebraElement":
        return cls({(): 1})

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = AlgebraElement(self.terms)
        for w, c in other.terms.items():
            out._add(w, c)
        return out

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            out = AlgebraElement()
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    out._add(w1 + w2, c1 * c2)
            return out
        c = cyc(other)
        return AlgebraElement({w: x * c for w, x in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "AlgebraElement":
        out = AlgebraElement.identity()
        for _ in range(k):
            out = out * self
        return out


def word_matrix(rep: Rep, word: Sequence[str]) -> CycMatrix:
    M = rep.identity()
    for g in word:
        if g == "id":
            continue
        M = M @ rep.generator(g)
    return M


def rep_matrix(x: AlgebraElement, rep: Rep) -> CycMatrix:
    """Exact matrix of x; words act as matrix products (leftmost generator applied last)."""
    M = CycMatrix.zeros(rep.m, rep.dim, rep.dim)
    for w, c in sorted(x.terms.items()):
        M = M + word_matrix(rep, w).scale(c)
    return M


def word_residues(rep: Rep, word: Sequence[str], emb: Embeddings, cache: dict) -> ModMat:
    M = ModMat.identity(emb, rep.dim)
    for g in word:
        if g == "id":
            continue
        G = cache.get(g)
        if G is None:
            G = rep.generator(g).residues(emb)
            cache[g] = G
        M = M @ G
    return M


def element_is_zero(rep: Rep, x: AlgebraElement) -> tuple[bool, dict]:
    """Certified exact test that rep(x) = 0, using modular images with a norm bound."""
    m = rep.m
    for c in x.terms.values():
        m = m * c.m // math.gcd(m, c.m)

    def build(emb: Embeddings) -> ModMat:
        cache: dict = {}
        acc = None
        for w, c in sorted(x.terms.items()):
            t = word_residues(rep, w, emb, cache).scale(c)
            acc = t if acc is None else acc + t
        return acc

    return certify_zero(build, m)


# ---------------------------------------------------------------------------
# relations

def E_element(N: int) -> AlgebraElement:
    return AlgebraElement.word(["e%d" % i for i in range(2, N + 1, 2)])


def relation_list(N: int, alpha: CycScalar, beta: CycScalar) -> list[tuple[str, AlgebraElement]]:
    """Every defining relation as (label, element that must vanish)."""
    W = AlgebraElement.word
    rels: list[tuple[str, AlgebraElement]] = []
    for i in range(1, N + 1):
        ei = "e%d" % i
        rels.append(("e%d^2 = beta e%d" % (i, i), W([ei, ei]) - W([ei], beta)))
        for j in dict.fromkeys((i % N + 1, (i - 2) % N + 1)):
            if j != i:
                rels.append(("e%d e%d e%d = e%d" % (i, j, i, i), W([ei, "e%d" % j, ei]) - W([ei])))
        for j in range(1, N + 1):
            cyc_dist = min((i - j) % N, (j - i) % N)
            if cyc_dist > 1 and i < j:
                rels.append(("e%d e%d = e%d e%d" % (i, j, j, i), W([ei, "e%d" % j]) - W(["e%d" % j, ei])))
        im1 = (i - 2) % N + 1
        rels.append(("O e%d Oi = e%d" % (i, im1), W(["O", ei, "Oi"]) - W(["e%d" % im1])))
    rels.append(("O Oi = id", W(["O", "Oi"]) - AlgebraElement.identity()))
    rels.append(("Oi O = id", W(["Oi", "O"]) - AlgebraElement.identity()))
    eN = "e%d" % N
    for s, g in ((1, "O"), (-1, "Oi")):
        lhs = W([g, eN] * (N - 1))
        rhs = W([g] * N + [g, eN])
        rels.append(("(%s eN)^(N-1) = %s^N (%s eN)" % (g, g, g), lhs - rhs))
    if N % 2 == 0:
        E = E_element(N)
        for g in ("O", "Oi"):
            rels.append(("E %s E = alpha E" % g, E * W([g]) * E - E * alpha))
    return rels


def verify_relations(rep: Rep, alpha: CycScalar, beta: CycScalar) -> dict:
    """Pass/fail per relation; on failure, the first basis column where it is violated."""
    results = []
    ok_all = True
    for label, x in relation_list(rep.N, alpha, beta):
        ok, info = element_is_zero(rep, x)
        entry = {"relation": label, "pass": ok}
        if not ok:
            ok_all = False
            wit = info.get("witness")
            if wit is not None:
                entry["violating_column"] = int(wit[1])
        results.append(entry)
    return {"rep": rep.describe(), "pass": ok_all, "relations": results}


def reflection_matrix(rep: Rep) -> CycMatrix:
    basis = rep.basis
    perm = ls.reflection_permutation(basis)
    ent = {(perm[j], j): 1 for j in range(len(basis))}
    return CycMatrix.from_entries(rep.m, (rep.dim, rep.dim), ent)


def reflection_check(rep: Rep) -> dict:
    """R e_i R^-1 = e_{N-i} with R the mirror image of link states (e_0 read as e_N)."""
    R = reflection_matrix(rep)
    out = []
    ok_all = True
    for i in range(1, rep.N + 1):
        j = (rep.N - i) % rep.N or rep.N
        lhs = R @ rep.generator("e%d" % i)
        rhs = rep.generator("e%d" % j) @ R
        ok = lhs == rhs
        ok_all &= ok
        out.append({"i": i, "mirror": j, "pass": ok})
    return {"rep": rep.describe(), "pass": ok_all, "checks": out}
