"""The Weyl group S_{n+1}, its Coxeter elements, parabolic coset representatives,
Hasse diagrams of W^p and Tits representatives in Aut(sl_{n+1}).

Permutations are stored 0-based: ``perm[i] = w(i)`` and ``w`` sends
``eps_{i+1}`` to ``eps_{perm[i]+1}``.  Products compose right to left, so a
word ``(i1, ..., ik)`` denotes ``s_{i1} s_{i2} ... s_{ik}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

import networkx as nx

from .errors import IndexOutOfRange, InternalMismatch
from .rootsys import (
    Root,
    Weight,
    check_rank,
    omega,
    permute_eps,
    positive_roots,
    weight_to_eps,
)


@dataclass(frozen=True)
class WeylElt:
    n: int
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(self.n + 1)):
            raise ValueError(f"{self.perm} is not a permutation of 0..{self.n}")

    @classmethod
    def identity(cls, n: int) -> "WeylElt":
        return cls(n, tuple(range(n + 1)))

    @classmethod
    def simple(cls, n: int, i: int) -> "WeylElt":
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"s_{i} does not exist in rank {n}")
        p = list(range(n + 1))
        p[i - 1], p[i] = p[i], p[i - 1]
        return cls(n, tuple(p))

    @classmethod
    def from_word(cls, n: int, word: Iterable[int]) -> "WeylElt":
        w = cls.identity(n)
        for i in word:
            w = w * cls.simple(n, i)
        return w

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        if other.n != self.n:
            raise ValueError("rank mismatch in product")
        return WeylElt(self.n, tuple(self.perm[other.perm[i]] for i in range(self.n + 1)))

    def inverse(self) -> "WeylElt":
        inv = [0] * (self.n + 1)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return WeylElt(self.n, tuple(inv))

    def __pow__(self, k: int) -> "WeylElt":
        out = WeylElt.identity(self.n)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def length(self) -> int:
        p = self.perm
        return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])

    @property
    def word(self) -> tuple[int, ...]:
        """The lexicographically smallest reduced word."""
        return _lex_reduced_word(self.perm)

    def act_root(self, a: Root) -> Root:
        return Root(a.n, self.perm[a.i - 1] + 1, self.perm[a.j - 1] + 1)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n + 1))

    def name(self) -> str:
        w = self.word
        return "e" if not w else "".join(f"s{i}" for i in w)

    def __str__(self) -> str:
        return self.name()


@lru_cache(maxsize=None)
def _lex_reduced_word(perm: tuple[int, ...]) -> tuple[int, ...]:
    # w = s_i (s_i w) whenever s_i is a left descent; taking the smallest such i
    # at every step yields the lexicographically first reduced word.
    p = list(perm)
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    out = []
    while True:
        for i in range(len(p) - 1):
            if inv[i] > inv[i + 1]:
                out.append(i + 1)
                # left multiplication by s_{i+1} swaps the values i and i+1
                inv[i], inv[i + 1] = inv[i + 1], inv[i]
                break
        else:
            return tuple(out)


def sort_key(w: WeylElt) -> tuple[int, tuple[int, ...]]:
    return (w.length, w.word)


def enumerate_weyl(n: int) -> list[WeylElt]:
    """All (n+1)! elements, sorted by (length, lexicographic reduced word)."""
    check_rank(n)
    return sorted((WeylElt(n, p) for p in permutations(range(n + 1))), key=sort_key)


def length_and_word(w: WeylElt) -> tuple[int, tuple[int, ...]]:
    return w.length, w.word


def coxeter_w1(n: int) -> WeylElt:
    return WeylElt.from_word(n, range(1, n + 1))


def coxeter_wj(n: int, j: int) -> WeylElt:
    """``w_j = w_1^j`` with ``w_1 = s_1 s_2 ... s_n``; ``j = 0`` gives the identity."""
    if not 0 <= j <= n:
        raise IndexOutOfRange(f"w_{j} is not defined for rank {n}")
    return coxeter_w1(n) ** j


def w_plus(n: int) -> list[WeylElt]:
    return [coxeter_wj(n, j) for j in range(n + 1)]


# --- parabolic data -----------------------------------------------------------


@dataclass(frozen=True)
class ParabolicSet:
    """The subset Sigma of simple-root indices defining a standard parabolic."""

    n: int
    sigma: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", frozenset(self.sigma))
        bad = [i for i in self.sigma if not 1 <= i <= self.n]
        if bad:
            raise ValueError(f"simple-root indices {bad} out of range for rank {self.n}")

    @classmethod
    def of(cls, n: int, *indices: int) -> "ParabolicSet":
        return cls(n, frozenset(indices))

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1)) - self.sigma

    def contains_root(self, a: Root) -> bool:
        """Whether ``a`` lies in the root subsystem spanned by Sigma."""
        lo, hi = min(a.i, a.j), max(a.i, a.j)
        return all(k in self.sigma for k in range(lo, hi))

    def blocks(self) -> list[int]:
        """Sizes of the Levi blocks, left to right."""
        sizes = [1]
        for i in range(1, self.n + 1):
            if i in self.sigma:
                sizes[-1] += 1
            else:
                sizes.append(1)
        return sizes

    def sorted_tuple(self) -> tuple[int, ...]:
        return tuple(sorted(self.sigma))

    def dynkin(self) -> str:
        """``o`` for nodes in Sigma, ``x`` for the others."""
        return "".join("o" if i in self.sigma else "x" for i in range(1, self.n + 1))

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.sorted_tuple()) + "}"


def rho_p(sig: ParabolicSet) -> Weight:
    n = sig.n
    out = Weight.zero(n)
    for i in sig.complement:
        out = out + omega(n, i)
    return out


def _is_min_rep_by_inversions(w: WeylElt, sig: ParabolicSet) -> bool:
    # Positive roots made negative by w^{-1} must avoid the Sigma subsystem.
    winv = w.inverse()
    for b in positive_roots(sig.n):
        if not winv.act_root(b).is_positive and sig.contains_root(b):
            return False
    return True


def _reps_by_filter(sig: ParabolicSet) -> list[WeylElt]:
    return [w for w in enumerate_weyl(sig.n) if _is_min_rep_by_inversions(w, sig)]


def _reps_by_orbit(sig: ParabolicSet) -> list[WeylElt]:
    # Breadth-first walk of the W-orbit of rho^p through simple reflections.
    # The first word reaching a point u is a minimal-length y with y(rho^p) = u,
    # and the representative attached to u is w = y^{-1}.
    n = sig.n
    start = weight_to_eps(rho_p(sig))
    seen = {start: WeylElt.identity(n)}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            y = seen[x]
            for i in range(1, n + 1):
                s = WeylElt.simple(n, i)
                xs = permute_eps(s.perm, x)
                if xs not in seen:
                    seen[xs] = s * y
                    nxt.append(xs)
        frontier = nxt
    return [y.inverse() for y in seen.values()]


def min_coset_reps(sig: ParabolicSet) -> list[WeylElt]:
    """W^p, computed two independent ways and cross-checked."""
    check_rank(sig.n)
    a = sorted(_reps_by_filter(sig), key=sort_key)
    b = sorted(_reps_by_orbit(sig), key=sort_key)
    if a != b:
        raise InternalMismatch(f"coset representatives disagree for Sigma={sig}")
    return a


def parabolic_subgroup(sig: ParabolicSet) -> list[WeylElt]:
    """W_Sigma: the permutations that keep every index inside its Levi block."""
    block_of: list[int] = []
    for b, size in enumerate(sig.blocks()):
        block_of.extend([b] * size)
    return [w for w in enumerate_weyl(sig.n)
            if all(block_of[w.perm[i]] == block_of[i] for i in range(sig.n + 1))]


# --- W_+ and its action on parabolics ----------------------------------------


def rotate_sigma(sig: ParabolicSet, j: int) -> ParabolicSet | None:
    """``w_j(Sigma)`` as a rotation of the extended diagram; None if node 0 is hit."""
    m = sig.n + 1
    image = {(i + j) % m for i in sig.sigma}
    if 0 in image:
        return None
    return ParabolicSet(sig.n, frozenset(image))


def wplus_stabilizer(sig: ParabolicSet) -> list[int]:
    """Rotation amounts j (0 included) with ``w_j(Sigma) = Sigma``."""
    return [j for j in range(sig.n + 1) if rotate_sigma(sig, j) == sig]


def wplus_stabilizer_and_orbits(sig: ParabolicSet) -> tuple[list[int], list[list[WeylElt]]]:
    """W_+^p (as rotation amounts) and the orbits of left multiplication on W^p.

    Each orbit is sorted by (length, word); orbits are sorted by their first
    element, which serves as the canonical representative.
    """
    check_rank(sig.n)
    stab = wplus_stabilizer(sig)
    reps = min_coset_reps(sig)
    rep_set = set(reps)
    gens = [coxeter_wj(sig.n, j) for j in stab]
    seen: set[WeylElt] = set()
    orbits = []
    for w in reps:
        if w in seen:
            continue
        orbit = sorted({g * w for g in gens}, key=sort_key)
        if not set(orbit) <= rep_set:
            raise InternalMismatch(f"W_+^p does not preserve W^p for Sigma={sig}")
        seen.update(orbit)
        orbits.append(orbit)
    orbits.sort(key=lambda o: sort_key(o[0]))
    return stab, orbits


def orbit_representatives(sig: ParabolicSet) -> list[WeylElt]:
    return [o[0] for o in wplus_stabilizer_and_orbits(sig)[1]]


# --- Hasse diagrams -------------------------------------------------------------


def reflections(n: int) -> list[WeylElt]:
    out = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            p = list(range(n + 1))
            p[i], p[j] = p[j], p[i]
            out.append(WeylElt(n, tuple(p)))
    return out


def wp_hasse(sig: ParabolicSet, include_dotted: bool = True) -> nx.DiGraph:
    """Hasse diagram of W^p.

    Solid edges ``w -> w s_i`` carry the label ``s_i``; dotted edges are the
    remaining Bruhat covers ``u -> u t`` (t a reflection).  Vertices carry
    ``black=True`` for the canonical representative of each W_+^p-orbit.
    """
    check_rank(sig.n)
    n = sig.n
    reps = min_coset_reps(sig)
    rep_set = set(reps)
    black = set(orbit_representatives(sig))
    g = nx.DiGraph()
    for w in reps:
        g.add_node(w, name=w.name(), length=w.length, black=w in black)
    for w in reps:
        for i in range(1, n + 1):
            ws = w * WeylElt.simple(n, i)
            if ws in rep_set and ws.length == w.length + 1:
                g.add_edge(w, ws, label=f"s{i}", style="solid")
    if include_dotted:
        for u in reps:
            for t in reflections(n):
                w = u * t
                if w in rep_set and w.length == u.length + 1 and not g.has_edge(u, w):
                    g.add_edge(u, w, label="", style="dotted")
    return g


def hasse_to_dot(g: nx.DiGraph, title: str = "Wp") -> str:
    nodes = sorted(g.nodes, key=sort_key)
    lines = [f'digraph "{title}" {{', "  rankdir=BT;", '  node [shape=circle, style=filled, fillcolor=white];']
    for w in nodes:
        fill = "black" if g.nodes[w]["black"] else "white"
        font = "white" if fill == "black" else "black"
        lines.append(f'  "{w.name()}" [fillcolor={fill}, fontcolor={font}];')
    edges = sorted(g.edges, key=lambda e: (sort_key(e[0]), sort_key(e[1])))
    for u, w in edges:
        data = g.edges[u, w]
        if data["style"] == "dotted":
            lines.append(f'  "{u.name()}" -> "{w.name()}" [style=dotted];')
        else:
            lines.append(f'  "{u.name()}" -> "{w.name()}" [label="{data["label"]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- Tits representatives --------------------------------------------------------

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class WbarElt:
    """An element ``sigma^flip o elt`` of the group generated by the r_i and sigma.

    ``word`` is a sequence of labels ``"r1" .. "rn"`` and ``"sigma"``; it is
    read left to right as a composition ``g1 o g2 o ... o gk``.
    """

    n: int
    flip: bool
    elt: WeylElt
    word: tuple[str, ...] = ()

    @classmethod
    def from_word(cls, n: int, word: Sequence[str]) -> "WbarElt":
        flip = False
        elt = WeylElt.identity(n)
        w0 = longest_element(n)
        # Fold from the right, prepending one generator at a time.  On h*
        # sigma acts as -w0, hence s o sigma^f = sigma^f o (w0^f s w0^f).
        for label in reversed(list(word)):
            if label == "sigma":
                flip = not flip
            else:
                i = _parse_r(label, n)
                s = WeylElt.simple(n, i)
                # prepend s: sigma^f u  ->  s sigma^f u = sigma^f (w0^f s w0^f) u
                elt = (w0 * s * w0 if flip else s) * elt
        return cls(n, flip, elt, tuple(word))

    @classmethod
    def from_weyl(cls, w: WeylElt) -> "WbarElt":
        return cls.from_word(w.n, tuple(f"r{i}" for i in w.word))

    @classmethod
    def identity(cls, n: int) -> "WbarElt":
        return cls(n, False, WeylElt.identity(n), ())

    @property
    def perm(self) -> tuple[int, ...]:
        return self.elt.perm

    def is_identity(self) -> bool:
        return not self.flip and self.elt.is_identity()

    def name(self) -> str:
        if not self.word:
            return "e"
        return "".join("sigma" if x == "sigma" else "s" + x[1:] for x in self.word)


def _parse_r(label: str, n: int) -> int:
    if not label.startswith("r"):
        raise ValueError(f"unknown generator label {label!r}")
    i = int(label[1:])
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"{label} does not exist in rank {n}")
    return i


def longest_element(n: int) -> WeylElt:
    return WeylElt(n, tuple(range(n, -1, -1)))


def _identity_matrix(m: int) -> list[list[int]]:
    return [[int(i == j) for j in range(m)] for i in range(m)]


def _matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    m = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m)] for i in range(m)]


def _transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*a)]


@dataclass(frozen=True)
class GAut:
    """``X -> A X A^{-1}`` (or ``X -> -A X^T A^{-1}`` when ``transpose_flag``).

    ``A`` is a signed permutation matrix, so ``A^{-1} = A^T``.
    """

    transpose_flag: bool
    A: Matrix

    @classmethod
    def identity(cls, n: int) -> "GAut":
        return cls(False, tuple(tuple(r) for r in _identity_matrix(n + 1)))

    @property
    def size(self) -> int:
        return len(self.A)

    def compose(self, other: "GAut") -> "GAut":
        """``self o other``."""
        return GAut(self.transpose_flag != other.transpose_flag,
                    tuple(tuple(r) for r in _matmul(self.A, other.A)))

    def inverse(self) -> "GAut":
        return GAut(self.transpose_flag, tuple(tuple(r) for r in _transpose(self.A)))

    def apply(self, x: Sequence[Sequence]) -> list[list]:
        a_inv = _transpose(self.A)
        if self.transpose_flag:
            y = _matmul(_matmul(self.A, _transpose(x)), a_inv)
            return [[-v for v in row] for row in y]
        return _matmul(_matmul(self.A, x), a_inv)


def tits_generator(n: int, label: str) -> GAut:
    m = n + 1
    if label == "sigma":
        s = [[0] * m for _ in range(m)]
        for i in range(1, m + 1):
            s[i - 1][m - i] = (-1) ** i
        return GAut(True, tuple(tuple(r) for r in s))
    i = _parse_r(label, n)
    a = _identity_matrix(m)
    # exp(F) exp(-E) exp(F) restricted to the slot (i, i+1) is [[0, -1], [1, 0]].
    a[i - 1][i - 1], a[i - 1][i] = 0, -1
    a[i][i - 1], a[i][i] = 1, 0
    return GAut(False, tuple(tuple(r) for r in a))


def tits_representative(x: WbarElt) -> GAut:
    out = GAut.identity(x.n)
    for label in x.word:
        out = out.compose(tits_generator(x.n, label))
    return out


def chevalley_matrix(n: int, kind: str, k: int) -> list[list[int]]:
    """The matrices e_k = E_{k,k+1}, f_k = E_{k+1,k}, h_k = E_kk - E_{k+1,k+1}."""
    m = n + 1
    x = [[0] * m for _ in range(m)]
    if kind == "e":
        x[k - 1][k] = 1
    elif kind == "f":
        x[k][k - 1] = 1
    elif kind == "h":
        x[k - 1][k - 1] = 1
        x[k][k] = -1
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return x


def bracket(x: Sequence[Sequence], y: Sequence[Sequence]) -> list[list]:
    xy = _matmul(x, y)
    yx = _matmul(y, x)
    return [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(xy, yx)]


def fraction_matrix(x: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in x]
