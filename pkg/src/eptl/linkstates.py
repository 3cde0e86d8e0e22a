"""Link states on the cylinder.

A link state on N sites is stored as a string over ``(``, ``)`` and ``.``:
``(`` opens an arc that runs to the right (possibly across the seam between
site N and site 1), ``)`` closes one, ``.`` is a defect.  Each ``)`` is matched
with the nearest unmatched ``(`` to its left, reading cyclically.  When defects
are present no arc may pass over a defect, so the matching never wraps over a
``.``.  Without defects, ``()`` and ``)(`` are different states (the arc passes
over or under the seam) even though they pair the same sites.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator

DEFECT = -1


class LinkState:
    """Immutable link state on N sites."""

    __slots__ = ("string", "partner", "_hash")

    def __init__(self, string: str):
        self.string = string
        self.partner = _match(string)
        self._hash = hash(string)

    @property
    def N(self) -> int:
        return len(self.string)

    @property
    def d(self) -> int:
        return self.string.count(".")

    def defects(self) -> list[int]:
        """0-based defect positions, left to right."""
        return [i for i, c in enumerate(self.string) if c == "."]

    def arcs(self) -> list[tuple[int, int]]:
        """Arcs as (opener, span): the arc leaves ``opener`` (0-based) and ends ``span`` sites to the right."""
        N = self.N
        return [(i, (self.partner[i] - i) % N) for i, c in enumerate(self.string) if c == "("]

    def lifted_partner(self, x: int) -> int | None:
        """Partner of lifted position x in lifted coordinates (None for a defect)."""
        N = self.N
        r = x % N
        c = self.string[r]
        if c == ".":
            return None
        p = self.partner[r]
        return x + (p - r) % N if c == "(" else x - (r - p) % N

    def key(self) -> tuple:
        return (self.d, tuple(p + 1 if p >= 0 else -1 for p in self.partner), self.string)

    def reflect(self) -> "LinkState":
        """Mirror j -> N+1-j: reverse the string and swap the two bracket kinds."""
        sw = {"(": ")", ")": "(", ".": "."}
        return LinkState("".join(sw[c] for c in reversed(self.string)))

    def translate(self, k: int = 1) -> "LinkState":
        """Shift every site k places to the left (site i goes to i-k)."""
        k %= max(self.N, 1)
        return LinkState(self.string[k:] + self.string[:k])

    def to_json(self) -> dict:
        return {"N": self.N, "partner": [p + 1 if p >= 0 else -1 for p in self.partner], "string": self.string}

    def __eq__(self, other) -> bool:
        return isinstance(other, LinkState) and other.string == self.string

    def __lt__(self, other: "LinkState") -> bool:
        return self.key() < other.key()

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return "LinkState(%r)" % self.string

    def __str__(self) -> str:
        return self.string


def _match(s: str) -> tuple[int, ...]:
    N = len(s)
    partner = [DEFECT] * N
    if any(c not in "()." for c in s):
        raise ValueError("link state strings use only '(', ')' and '.': %r" % s)
    if s.count("(") != s.count(")"):
        raise ValueError("unbalanced link state %r" % s)
    if not s:
        return ()
    # start just after a defect (or anywhere if none) so a single cyclic pass suffices
    dpos = s.find(".")
    start = (dpos + 1) % N if dpos >= 0 else 0
    stack: list[int] = []
    for t in range(2 * N if dpos < 0 else N):
        i = (start + t) % N
        c = s[i]
        if c == ".":
            if stack:
                raise ValueError("arc passes over a defect in %r" % s)
        elif c == "(":
            if t < N:
                stack.append(i)
        elif stack and partner[i] == DEFECT:
            j = stack.pop()
            partner[i] = j
            partner[j] = i
    if any(partner[i] == DEFECT for i in range(N) if s[i] != "."):
        raise ValueError("unmatched bracket in %r" % s)
    return tuple(partner)


def parse(text: str) -> LinkState:
    """Accept either the bare string or the rendered form ``"N=4: )(.."``."""
    text = text.strip()
    if ":" in text:
        head, text = text.split(":", 1)
        text = text.strip()
        n = int(head.strip().lstrip("N="))
        if n != len(text):
            raise ValueError("declared N=%d but %d sites given" % (n, len(text)))
    return LinkState(text)


def render(w: LinkState) -> str:
    return "N=%d: %s" % (w.N, w.string)


@lru_cache(maxsize=None)
def _sector(N: int, d: int) -> tuple[LinkState, ...]:
    if d < 0 or d > N or (N - d) % 2:
        raise ValueError("need 0 <= d <= N and d = N mod 2 (got N=%d, d=%d)" % (N, d))
    k = (N - d) // 2
    out = []
    for closers in combinations(range(N), k):
        out.append(LinkState(_from_closers(N, closers)))
    out.sort(key=LinkState.key)
    return tuple(out)


def _from_closers(N: int, closers: tuple[int, ...]) -> str:
    """Each closer takes the nearest unmatched site to its left (cyclically) as opener; leftovers are defects."""
    chars = ["."] * N
    cl = set(closers)
    for c in closers:
        chars[c] = ")"
    done: set[int] = set()
    stack: list[int] = []
    for t in range(2 * N):
        i = t % N
        if i in cl:
            if i not in done and stack:
                chars[stack.pop()] = "("
                done.add(i)
        elif t < N:
            stack.append(i)
    return "".join(chars)


def enumerate_states(N: int, d: int) -> list[LinkState]:
    """Ordered basis of the sector with d defects; C(N, (N-d)/2) states."""
    return list(_sector(N, d))


def sectors(N: int) -> list[int]:
    return list(range(N % 2, N + 1, 2))


@lru_cache(maxsize=None)
def _full(N: int) -> tuple[LinkState, ...]:
    out: list[LinkState] = []
    for d in sectors(N):
        out.extend(_sector(N, d))
    return tuple(out)


def full_basis(N: int) -> list[LinkState]:
    """All link states, sectors in increasing defect number."""
    return list(_full(N))


@lru_cache(maxsize=None)
def index_map(N: int, d: int | None = None) -> dict[str, int]:
    basis = _full(N) if d is None else _sector(N, d)
    return {w.string: i for i, w in enumerate(basis)}


def sector_offsets(N: int) -> dict[int, tuple[int, int]]:
    """d -> (start, stop) slice of the sector inside the full basis."""
    out = {}
    pos = 0
    for d in sectors(N):
        n = comb(N, (N - d) // 2)
        out[d] = (pos, pos + n)
        pos += n
    return out


def iter_all(N: int) -> Iterator[LinkState]:
    yield from _full(N)


# named states --------------------------------------------------------------

def all_defects(N: int) -> LinkState:
    return LinkState("." * N)


def bubbles_at(N: int, *mids: int) -> LinkState:
    """Bubbles whose midpoints sit between sites k and k+1 (1-based, k = N means across the seam)."""
    chars = ["."] * N
    for k in mids:
        if not 1 <= k <= N:
            raise ValueError("midpoint %d out of range" % k)
        i, j = k - 1, k % N
        if chars[i] != "." or chars[j] != ".":
            raise ValueError("overlapping bubbles at %s" % (mids,))
        chars[i], chars[j] = "(", ")"
    return LinkState("".join(chars))


def concentric(N: int, x: int, m: int) -> LinkState:
    """m nested arcs centred between sites x and x+1 (1-based); arcs (x-j+1, x+j), j = 1..m.

    Sites are read cyclically so the nest may cross the seam.
    """
    if 2 * m > N:
        raise ValueError("too many arcs")
    chars = ["."] * N
    for j in range(1, m + 1):
        a = (x - j) % N
        b = (x + j - 1) % N
        chars[a], chars[b] = "(", ")"
    return LinkState("".join(chars))


def straddle_concentric(N: int, y: int) -> LinkState:
    """y nested arcs centred on the seam between site N and site 1."""
    return concentric(N, N, y)


def reflection_permutation(basis: list[LinkState]) -> list[int]:
    idx = {w.string: i for i, w in enumerate(basis)}
    return [idx[w.reflect().string] for w in basis]


def brute_force_sector(N: int, d: int) -> set[str]:
    """Independent enumeration: every string with the right counts that parses as a valid state."""
    out = set()
    k = (N - d) // 2
    from itertools import product
    for chars in product("().", repeat=N):
        s = "".join(chars)
        if s.count("(") != k or s.count(")") != k:
            continue
        try:
            LinkState(s)
        except ValueError:
            continue
        out.add(s)
    return out
