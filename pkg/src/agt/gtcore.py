"""Gelfand-Tsetlin tableaux, relation modules and the explicit sl_{n+1} action.

A tableau has rows ``k = 1 .. n+1``; row ``k`` holds ``v_{k,1} .. v_{k,k}``.
The top row is frozen.  A module is a seed tableau plus a set of arrows
between adjacent rows; its basis is the set of integer shifts ``z`` of the
lower rows for which every arrow still holds:

* a downward arrow ``a -> b`` (``a`` in row ``k+1``, ``b`` in row ``k``)
  requires ``v_a - v_b`` to be a non-negative integer;
* an upward arrow ``a -> b`` (``a`` in row ``k``, ``b`` in row ``k+1``)
  requires ``v_a - v_b`` to be a positive integer.

Shift vectors list the positions row ``n`` first, then row ``n-1``, down to
row 1, matching the coordinates ``(r, s, t | m, n | l)`` used for sl_4.

Generators act by the classical Gelfand-Tsetlin formulas.  Summands with a
vanishing denominator are dropped.  Terms that leave the basis are dropped as
well (the relation-module convention); ``strict=True`` instead raises
:class:`ClosureViolation` for any such term with a nonzero coefficient.

Modules carry a frame ``w``; the twisted action of ``a`` is the Gelfand-Tsetlin
action of ``w^{-1}(a)``, with ``w`` realized by its Tits representative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from gmpy2 import mpq

from .errors import ClosureViolation, HypothesisViolated, NotInBasis, RankMismatch
from .rootsys import (Root, Weight, as_fraction, check_rank, format_rational, pairing,
                      parse_rational)
from .weylgrp import WbarElt, chevalley_matrix, tits_representative

Position = tuple[int, int]
Shift = tuple[int, ...]

# Inner loops run on gmpy2 rationals; they compare and hash equal to Fractions.
_ONE = mpq(1)


def positions(n: int) -> list[Position]:
    """Movable positions: row n left to right, then row n-1, ..., row 1."""
    return [(k, i) for k in range(n, 0, -1) for i in range(1, k + 1)]


# --- tableaux ---------------------------------------------------------------


@dataclass(frozen=True)
class Tableau:
    """Rows ``rows[k-1] = (v_{k,1}, ..., v_{k,k})`` for ``k = 1 .. n+1``."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(as_fraction(x) for x in r) for r in self.rows)
        for k, r in enumerate(rows, start=1):
            if len(r) != k:
                raise ValueError(f"row {k} must have {k} entries, got {len(r)}")
        if len(rows) < 2:
            raise ValueError("a tableau needs at least two rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_top_down(cls, rows: Sequence[Sequence]) -> "Tableau":
        """Build from rows listed top (row n+1) first, entries as rationals or strings."""
        return cls(tuple(tuple(parse_rational(x) if isinstance(x, str) else Fraction(x) for x in r)
                         for r in reversed(list(rows))))

    @property
    def n(self) -> int:
        return len(self.rows) - 1

    def entry(self, k: int, i: int) -> Fraction:
        return self.rows[k - 1][i - 1]

    def row(self, k: int) -> tuple[Fraction, ...]:
        return self.rows[k - 1]

    def shifted(self, z: Sequence) -> "Tableau":
        """Add ``z`` (ordered as :func:`positions`) to the movable entries."""
        n = self.n
        rows = [list(r) for r in self.rows]
        for (k, i), dz in zip(positions(n), z):
            rows[k - 1][i - 1] += dz
        return Tableau(tuple(tuple(r) for r in rows))

    def shifted_at(self, k: int, i: int, amount) -> "Tableau":
        rows = [list(r) for r in self.rows]
        rows[k - 1][i - 1] += Fraction(amount)
        return Tableau(tuple(tuple(r) for r in rows))

    def has_row_collision(self) -> bool:
        return any(len(set(r)) != len(r) for r in self.rows)

    def render(self) -> str:
        """Pyramid layout, top row first."""
        cells = [[format_rational(x) for x in r] for r in reversed(self.rows)]
        width = max(len(c) for r in cells for c in r) + 2
        total = width * len(cells[0])
        lines = []
        for r in cells:
            body = "".join(c.center(width) for c in r)
            lines.append(body.center(total).rstrip())
        return "\n".join(lines)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in reversed(self.rows)]


# --- relations ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Arrow:
    src: Position
    dst: Position

    def __post_init__(self) -> None:
        if abs(self.src[0] - self.dst[0]) != 1:
            raise ValueError(f"arrow {self.src}->{self.dst} does not join adjacent rows")

    @property
    def downward(self) -> bool:
        return self.src[0] == self.dst[0] + 1

    def __str__(self) -> str:
        return f"({self.src[0]},{self.src[1]})->({self.dst[0]},{self.dst[1]})"


@dataclass(frozen=True)
class RelationSet:
    arrows: frozenset[Arrow]

    @classmethod
    def of(cls, pairs: Iterable) -> "RelationSet":
        out = set()
        for p in pairs:
            out.add(p if isinstance(p, Arrow) else Arrow(tuple(p[0]), tuple(p[1])))
        return cls(frozenset(out))

    @classmethod
    def empty(cls) -> "RelationSet":
        return cls(frozenset())

    def sorted(self) -> list[Arrow]:
        return sorted(self.arrows)

    def without(self, arrows: Iterable[Arrow]) -> "RelationSet":
        return RelationSet(self.arrows - frozenset(arrows))

    def with_arrows(self, arrows: Iterable[Arrow]) -> "RelationSet":
        return RelationSet(self.arrows | frozenset(arrows))

    def incident(self, pos: Position) -> list[Arrow]:
        return [a for a in self.sorted() if pos in (a.src, a.dst)]

    def __len__(self) -> int:
        return len(self.arrows)

    def to_json(self) -> list[list[list[int]]]:
        return [[list(a.src), list(a.dst)] for a in self.sorted()]


def arrow_holds(diff: Fraction, downward: bool) -> bool:
    if diff.denominator != 1:
        return False
    return diff >= 0 if downward else diff > 0


def maximal_relation_set(t: Tableau) -> RelationSet:
    """Every adjacent-row pair with an integral difference, oriented by its sign."""
    arrows = set()
    for k in range(1, t.n + 1):
        for j, upper in enumerate(t.row(k + 1), start=1):
            for i, lower in enumerate(t.row(k), start=1):
                d = upper - lower
                if d.denominator != 1:
                    continue
                if d >= 0:
                    arrows.add(Arrow((k + 1, j), (k, i)))
                else:
                    arrows.add(Arrow((k, i), (k + 1, j)))
    return RelationSet(frozenset(arrows))


def chain_relation_set(n: int) -> RelationSet:
    """The downward arrows ``(k+1, i) -> (k, i)``."""
    return RelationSet(frozenset(Arrow((k + 1, i), (k, i))
                                 for k in range(1, n + 1) for i in range(1, k + 1)))


# --- windows ------------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """Inclusive per-position bounds on shift vectors."""

    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.lower) != len(self.upper):
            raise ValueError("window bounds have different lengths")
        if any(a > b for a, b in zip(self.lower, self.upper)):
            raise ValueError("empty window")

    @classmethod
    def radius(cls, n: int, r: int) -> "Window":
        m = n * (n + 1) // 2
        return cls((-r,) * m, (r,) * m)

    @classmethod
    def around(cls, center: Sequence[int], r: int) -> "Window":
        return cls(tuple(c - r for c in center), tuple(c + r for c in center))

    def contains(self, z: Sequence[int]) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lower, z, self.upper))


# --- module vectors -------------------------------------------------------------


class ModuleVector:
    """Finite formal sum of basis members with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Shift, Fraction] | None = None) -> None:
        self.terms: dict[Shift, Fraction] = {}
        if terms:
            for z, c in terms.items():
                c = mpq(c)
                if c:
                    self.terms[tuple(z)] = c

    @classmethod
    def basis(cls, z: Sequence[int]) -> "ModuleVector":
        return cls({tuple(z): _ONE})

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self.terms)
        for z, c in other.terms.items():
            v = out.get(z, 0) + c
            if v:
                out[z] = v
            else:
                out.pop(z, None)
        return ModuleVector(out)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + other.scale(-1)

    def scale(self, c) -> "ModuleVector":
        c = mpq(c)
        if not c:
            return ModuleVector()
        return ModuleVector({z: c * v for z, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ModuleVector) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> list[tuple[Shift, Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{format_rational(c)}*T{list(z)}" for z, c in self.items())

    def to_json(self) -> list[dict]:
        return [{"shift": list(z), "coeff": format_rational(c)} for z, c in self.items()]


# --- operators ------------------------------------------------------------------
#
# An operator is an element of sl_{n+1} given as a sparse matrix: a sorted
# tuple of ((a, b), coefficient) with 1-based indices.

Operator = tuple[tuple[tuple[int, int], Fraction], ...]


def operator_from_matrix(x: Sequence[Sequence]) -> Operator:
    out = []
    for a, row in enumerate(x, start=1):
        for b, v in enumerate(row, start=1):
            v = Fraction(v)
            if v:
                out.append(((a, b), v))
    return tuple(sorted(out))


def operator_matrix(op: Operator, m: int) -> list[list[Fraction]]:
    x = [[Fraction(0)] * m for _ in range(m)]
    for (a, b), v in op:
        x[a - 1][b - 1] += v
    return x


def chevalley(n: int, kind: str, k: int) -> Operator:
    if not 1 <= k <= n:
        raise ValueError(f"generator index {k} out of range for rank {n}")
    return operator_from_matrix(chevalley_matrix(n, kind, k))


def root_vector(root: Root) -> Operator:
    """``E_{i,j}`` for the root ``eps_i - eps_j``."""
    return (((root.i, root.j), Fraction(1)),)


def coroot(root: Root) -> Operator:
    """``h_root = E_{ii} - E_{jj}``."""
    return tuple(sorted((((root.i, root.i), Fraction(1)), ((root.j, root.j), Fraction(-1)))))


def parse_operator(n: int, text: str) -> Operator:
    """``e2``, ``f1``, ``h3`` (Chevalley) or ``E13`` / ``E_1_3`` (matrix unit)."""
    s = text.strip()
    if not s:
        raise ValueError("empty operator name")
    if s[0] in "efh" and s[1:].isdigit():
        return chevalley(n, s[0], int(s[1:]))
    if s[0] == "E":
        body = s[1:].strip("_")
        parts = body.split("_") if "_" in body else list(body)
        if len(parts) != 2:
            raise ValueError(f"cannot parse matrix unit {text!r}")
        a, b = int(parts[0]), int(parts[1])
        if a == b or not (1 <= a <= n + 1 and 1 <= b <= n + 1):
            raise ValueError(f"matrix unit {text!r} is not a root vector of rank {n}")
        return (((a, b), Fraction(1)),)
    raise ValueError(f"unknown operator {text!r}")


# --- the raw Gelfand-Tsetlin formulas --------------------------------------------


def _terms_on_rows(kind: str, k: int, rows, one) -> list[tuple[int, object]]:
    """Formula core on ``rows[k-1] = row k``; ``one`` fixes the number type."""
    row = rows[k - 1]
    if kind == "h":
        below = sum(rows[k - 2], 0 * one) if k > 1 else 0 * one
        return [(0, 2 * sum(row, 0 * one) - below - sum(rows[k], 0 * one) - 1)]
    out = []
    for i, x in enumerate(row, start=1):
        den = one
        for j, y in enumerate(row, start=1):
            if j != i:
                den *= x - y
        if den == 0:
            continue
        num = one
        if kind == "e":
            for y in rows[k]:
                num *= x - y
            num = -num
        elif kind == "f":
            if k > 1:
                for y in rows[k - 2]:
                    num *= x - y
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
        if num:
            out.append((i, num / den))
    return out


def gt_terms(kind: str, k: int, t: Tableau) -> list[tuple[int, Fraction]]:
    """Raw formula output as ``(i, coefficient)`` pairs: ``e_k`` moves ``(k, i)`` up by one,
    ``f_k`` down by one; ``h_k`` returns ``[(0, eigenvalue)]``."""
    if not 1 <= k <= t.n:
        raise ValueError(f"generator index {k} out of range for rank {t.n}")
    return _terms_on_rows(kind, k, t.rows, Fraction(1))


def gt_act(kind: str, k: int, t: Tableau) -> dict[Tableau, Fraction]:
    """The Gelfand-Tsetlin formulas on a single tableau (no basis, no truncation)."""
    if kind == "h":
        (_, c), = gt_terms(kind, k, t)
        return {t: c} if c else {}
    step = 1 if kind == "e" else -1
    return {t.shifted_at(k, i, step): c for i, c in gt_terms(kind, k, t)}


# --- modules ------------------------------------------------------------------


@dataclass(frozen=True)
class ArrowCheck:
    src: int          # index into the shift vector, or -1 for a top-row entry
    dst: int
    base_diff: int
    downward: bool


@dataclass(eq=False)
class GTModule:
    base: Tableau
    relations: RelationSet
    frame: WbarElt | None = None
    label: str = ""
    _checks: list[ArrowCheck] = field(init=False, repr=False)
    _index: dict[Position, int] = field(init=False, repr=False)
    _raw: dict = field(init=False, repr=False)
    _root: dict = field(init=False, repr=False)
    _diag: dict = field(init=False, repr=False)
    _twist: dict = field(init=False, repr=False)
    _op: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        n = self.base.n
        check_rank(n)
        if self.frame is None:
            self.frame = WbarElt.identity(n)
        if self.frame.n != n:
            raise RankMismatch("frame and tableau have different ranks")
        if self.base.has_row_collision():
            raise HypothesisViolated("seed tableau has two equal entries in one row")
        self._index = {p: idx for idx, p in enumerate(positions(n))}
        checks = []
        for a in self.relations.sorted():
            for p in (a.src, a.dst):
                if not (1 <= p[0] <= n + 1 and 1 <= p[1] <= p[0]):
                    raise ValueError(f"arrow {a} leaves the tableau")
            d = self.base.entry(*a.src) - self.base.entry(*a.dst)
            if not arrow_holds(d, a.downward):
                raise HypothesisViolated(f"seed tableau violates the arrow {a} (difference {d})")
            checks.append(ArrowCheck(self._index.get(a.src, -1), self._index.get(a.dst, -1),
                                     int(d), a.downward))
        self._checks = checks
        self._raw, self._root, self._diag, self._twist, self._op = {}, {}, {}, {}, {}
        self._positions = positions(n)
        self._base_q = [[mpq(x) for x in r] for r in self.base.rows]

    # -- structure
    @property
    def n(self) -> int:
        return self.base.n

    @property
    def dim_shift(self) -> int:
        return self.n * (self.n + 1) // 2

    def zero_shift(self) -> Shift:
        return (0,) * self.dim_shift

    def index(self, pos: Position) -> int:
        return self._index[pos]

    def tableau(self, z: Sequence[int]) -> Tableau:
        return self.base.shifted(z)

    def contains(self, z: Sequence[int]) -> bool:
        for c in self._checks:
            d = c.base_diff + (z[c.src] if c.src >= 0 else 0) - (z[c.dst] if c.dst >= 0 else 0)
            if d < 0 or (d == 0 and not c.downward):
                return False
        return True

    def constraints(self) -> list[tuple[dict[int, int], int]]:
        """Each arrow as ``sum coeff * z[idx] >= bound``."""
        out = []
        for c in self._checks:
            coeffs: dict[int, int] = {}
            if c.src >= 0:
                coeffs[c.src] = coeffs.get(c.src, 0) + 1
            if c.dst >= 0:
                coeffs[c.dst] = coeffs.get(c.dst, 0) - 1
            out.append((coeffs, (0 if c.downward else 1) - c.base_diff))
        return out

    def enumerate_basis(self, window: Window) -> list[Shift]:
        """All basis members inside the window, in lexicographic order of shifts."""
        m = self.dim_shift
        if len(window.lower) != m:
            raise ValueError(f"window has {len(window.lower)} coordinates, expected {m}")
        # Each check is tested as soon as its last coordinate is assigned.
        by_last: list[list[ArrowCheck]] = [[] for _ in range(m)]
        top_checks = []
        for c in self._checks:
            last = max(c.src, c.dst)
            if last < 0:
                top_checks.append(c)
            else:
                by_last[last].append(c)
        if top_checks:
            return []
        out: list[Shift] = []
        z = [0] * m

        def ok(c: ArrowCheck) -> bool:
            d = c.base_diff + (z[c.src] if c.src >= 0 else 0) - (z[c.dst] if c.dst >= 0 else 0)
            return d > 0 or (d == 0 and c.downward)

        def rec(idx: int) -> None:
            if idx == m:
                out.append(tuple(z))
                return
            for v in range(window.lower[idx], window.upper[idx] + 1):
                z[idx] = v
                if all(ok(c) for c in by_last[idx]):
                    rec(idx + 1)
            z[idx] = 0

        rec(0)
        return out

    # -- raw generator action on basis members
    def _rows_at(self, z: Shift) -> list[list]:
        rows = [list(r) for r in self._base_q]
        for (k, i), dz in zip(self._positions, z):
            if dz:
                rows[k - 1][i - 1] += dz
        return rows

    def _raw_action(self, kind: str, k: int, z: Shift) -> tuple[tuple[Shift, object], ...]:
        key = (kind, k, z)
        hit = self._raw.get(key)
        if hit is not None:
            return hit
        out = []
        step = 1 if kind == "e" else -1
        for i, c in _terms_on_rows(kind, k, self._rows_at(z), _ONE):
            zz = list(z)
            zz[self._index[(k, i)]] += step
            out.append((tuple(zz), c))
        res = tuple(out)
        self._raw[key] = res
        return res

    def h_eigenvalues(self, z: Shift) -> tuple:
        hit = self._diag.get(z)
        if hit is None:
            rows = self._rows_at(z)
            hit = tuple(_terms_on_rows("h", k, rows, _ONE)[0][1] for k in range(1, self.n + 1))
            self._diag[z] = hit
        return hit

    def _filter(self, terms, strict: bool, what: str) -> dict[Shift, Fraction]:
        out: dict[Shift, Fraction] = {}
        for zz, c in terms:
            if not c:
                continue
            if not self.contains(zz):
                if strict:
                    raise ClosureViolation(f"{what} leaves the basis at shift {list(zz)} "
                                           f"with coefficient {c}", shift=zz, coefficient=c)
                continue
            out[zz] = out.get(zz, 0) + c
        return {zz: c for zz, c in out.items() if c}

    def _apply_unit(self, a: int, b: int, z: Shift, strict: bool) -> dict[Shift, Fraction]:
        """``E_{a,b}`` (a != b) on a basis member, via nested brackets of simple generators."""
        key = (a, b, z, strict)
        hit = self._root.get(key)
        if hit is not None:
            return hit
        if b == a + 1:
            res = self._filter(self._raw_action("e", a, z), strict, f"E{a}{b}")
        elif a == b + 1:
            res = self._filter(self._raw_action("f", b, z), strict, f"E{a}{b}")
        elif a < b:
            # E_{a,b} = e_a E_{a+1,b} - E_{a+1,b} e_a
            res = self._combine(
                self._apply_seq([(a, a + 1), (a + 1, b)], z, strict),
                self._apply_seq([(a + 1, b), (a, a + 1)], z, strict))
        else:
            # E_{a,b} = f_{a-1} E_{a-1,b} - E_{a-1,b} f_{a-1}
            res = self._combine(
                self._apply_seq([(a, a - 1), (a - 1, b)], z, strict),
                self._apply_seq([(a - 1, b), (a, a - 1)], z, strict))
        self._root[key] = res
        return res

    @staticmethod
    def _combine(x: dict, y: dict) -> dict:
        out = dict(x)
        for zz, c in y.items():
            v = out.get(zz, 0) - c
            if v:
                out[zz] = v
            else:
                out.pop(zz, None)
        return out

    def _apply_seq(self, units: list[tuple[int, int]], z: Shift, strict: bool) -> dict:
        """Apply ``E_{u_1} ... E_{u_m}`` (rightmost first) to the basis member z."""
        vec = {z: _ONE}
        for a, b in reversed(units):
            nxt: dict[Shift, Fraction] = {}
            for zz, c in vec.items():
                for z2, c2 in self._apply_unit(a, b, zz, strict).items():
                    v = nxt.get(z2, 0) + c * c2
                    if v:
                        nxt[z2] = v
                    else:
                        nxt.pop(z2, None)
            vec = nxt
        return vec

    def _diagonal_value(self, diag: Sequence[Fraction], z: Shift) -> Fraction:
        """Eigenvalue of ``diag(d_1, ..., d_{n+1})`` (trace zero) as ``sum c_k h_k``."""
        ev = self.h_eigenvalues(z)
        total, acc = mpq(0), mpq(0)
        for k in range(self.n):
            acc += diag[k]
            total += acc * ev[k]
        return total

    def twisted_operator(self, op: Operator) -> Operator:
        """``w^{-1}(op)`` for the frame ``w`` (identity frames return op)."""
        if self.frame.is_identity() and not self.frame.word:
            return op
        hit = self._twist.get(op)
        if hit is None:
            g = tits_representative(self.frame).inverse()
            hit = operator_from_matrix(g.apply(operator_matrix(op, self.n + 1)))
            self._twist[op] = hit
        return hit

    def _apply_to_member(self, op: Operator, z: Shift, strict: bool) -> dict[Shift, Fraction]:
        """An (already twisted) operator on one basis member, memoized."""
        key = (op, z, strict)
        hit = self._op.get(key)
        if hit is not None:
            return hit
        diag = [mpq(0)] * (self.n + 1)
        out: dict[Shift, object] = {}
        for (a, b), v in op:
            v = mpq(v)
            if a == b:
                diag[a - 1] += v
                continue
            for z2, c2 in self._apply_unit(a, b, z, strict).items():
                out[z2] = out.get(z2, 0) + v * c2
        if sum(diag) != 0:
            raise ValueError("operator is not traceless")
        if any(diag):
            ev = self._diagonal_value(diag, z)
            if ev:
                out[z] = out.get(z, 0) + ev
        res = {zz: c for zz, c in out.items() if c}
        self._op[key] = res
        return res

    def apply_operator(self, op: Operator, x: ModuleVector, *, twisted: bool = True,
                       strict: bool = False) -> ModuleVector:
        if twisted:
            op = self.twisted_operator(op)
        out: dict[Shift, Fraction] = {}
        for z, c in x.terms.items():
            if strict and not self.contains(z):
                raise NotInBasis(f"shift {list(z)} is not a basis member")
            for z2, c2 in self._apply_to_member(op, z, strict).items():
                out[z2] = out.get(z2, 0) + c * c2
        return ModuleVector(out)

    def act(self, word: Sequence[Operator | str], x: ModuleVector, *, twisted: bool = True,
            strict: bool = False) -> ModuleVector:
        """Apply the product ``X_1 X_2 ... X_m`` (rightmost first)."""
        for op in reversed(list(word)):
            if isinstance(op, str):
                op = parse_operator(self.n, op)
            x = self.apply_operator(op, x, twisted=twisted, strict=strict)
        return x

    # -- characters and weights
    def gamma_character(self, z: Sequence[int]) -> "GammaCharacter":
        z = tuple(z)
        if not self.contains(z):
            raise NotInBasis(f"shift {list(z)} is not a basis member")
        t = self.tableau(z)
        return GammaCharacter(self.frame.word, tuple(tuple(sorted(r)) for r in t.rows))

    def weight_of(self, z: Sequence[int], *, twisted: bool = True) -> Weight:
        """Eigenvalues of the (twisted) ``h_1 .. h_n`` on a basis member."""
        z = tuple(z)
        if not self.contains(z):
            raise NotInBasis(f"shift {list(z)} is not a basis member")
        vals = []
        for k in range(1, self.n + 1):
            op = chevalley(self.n, "h", k)
            if twisted:
                op = self.twisted_operator(op)
            diag = [Fraction(0)] * (self.n + 1)
            for (a, b), v in op:
                if a != b:
                    raise ValueError("twisted Cartan element is not diagonal")
                diag[a - 1] += v
            vals.append(self._diagonal_value(diag, z))
        return Weight(tuple(vals))

    # -- derived modules
    def with_relations(self, relations: RelationSet, label: str | None = None) -> "GTModule":
        return GTModule(self.base, relations, self.frame, self.label if label is None else label)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "base": self.base.to_json(),
            "arrows": self.relations.to_json(),
            "frame": list(self.frame.word),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GTModule":
        base = Tableau.from_top_down(data["base"])
        frame = WbarElt.from_word(base.n, tuple(data.get("frame", ())))
        rel = RelationSet.of((tuple(a), tuple(b)) for a, b in data["arrows"])
        return cls(base, rel, frame, data.get("label", ""))


@dataclass(frozen=True)
class GammaCharacter:
    frame: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]


# --- highest weight tableaux -------------------------------------------------------


def gl_weight(lam: Weight) -> tuple[Fraction, ...]:
    """``m_i = lam_i + ... + lam_n`` with ``m_{n+1} = 0``."""
    n = lam.n
    m = [Fraction(0)] * (n + 1)
    for i in range(n - 1, -1, -1):
        m[i] = m[i + 1] + lam.coeffs[i]
    return tuple(m)


def standard_top_row(lam: Weight) -> tuple[Fraction, ...]:
    return tuple(mi - i for i, mi in enumerate(gl_weight(lam)))


def standard_tableau(lam: Weight) -> Tableau:
    """Row k is the first k entries of the top row ``m_i - i + 1``."""
    top = standard_top_row(lam)
    return Tableau(tuple(top[:k] for k in range(1, lam.n + 2)))


def _lemma_v(lam: Weight, r: int) -> list[Fraction]:
    """The auxiliary numbers ``v_1 .. v_{n+1}`` for the lemma tableau (1-based list)."""
    n = lam.n
    shifted = lam + Weight((Fraction(1),) * n)

    def c(j: int) -> Fraction:
        return shifted.coeffs[j - 1]

    # Unknowns v_1..v_{n+1}; v_1 is fixed last by the trace condition.
    # Each constraint ties one new unknown to an already determined one.
    rel: dict[int, tuple[int, Fraction]] = {}  # v_a = v_b + offset
    rel[2] = (1, -c(r))                          # v1 - v2 = c_r
    if r >= 2:
        rel[r + 1] = (1, c(r - 1))               # v1 - v_{r+1} = -c_{r-1}
    if r + 2 <= n + 1:
        rel[r + 2] = (2, -c(r + 1))              # v2 - v_{r+2} = c_{r+1}
    if r >= 3:
        # v_{j+2} - v_{j+3} = c_j, 1 <= j <= r-2: chain from v_{r+1} downwards
        for j in range(r - 2, 0, -1):
            rel[j + 2] = (j + 3, c(j))
    for j in range(r + 2, n + 1):
        rel[j + 1] = (j, -c(j))                  # v_j - v_{j+1} = c_j
    offsets: dict[int, Fraction] = {1: Fraction(0)}
    while len(offsets) < n + 1:
        progressed = False
        for a, (b, off) in rel.items():
            if a not in offsets and b in offsets:
                offsets[a] = offsets[b] + off
                progressed = True
        if not progressed:
            raise HypothesisViolated("lemma constraints do not determine every v_j")
    total = -Fraction((n + 1) * n, 2)
    v1 = (total - sum(offsets.values())) / (n + 1)
    return [Fraction(0)] + [v1 + offsets[j] for j in range(1, n + 2)]


def lemma_entry(v: Sequence[Fraction], r: int, i: int, j: int) -> Fraction:
    """Piecewise entry rule for the tableau of ``lemma_module``.

    The last case uses ``v_{j+1}``; with ``v_j`` the bottom rows repeat an entry and the
    highest weight check in the expected frame fails.
    """
    if i == j == 1:
        return v[1] + r - 1
    if 1 < i <= r and j == i - 1:
        return v[1] + r - i + 1
    if i > r and j == r:
        return v[1]
    if 1 < i <= r and j == i:
        return v[2] + r - i + 1
    if i > r and j == i:
        return v[2]
    if i >= 3 and j == 1:
        return v[3]
    if i >= 4 and 2 <= j < r:
        return v[j + 2]
    if i > j >= r + 1:
        return v[j + 1]
    raise HypothesisViolated(f"no rule for entry ({i},{j}) with r={r}")


def lemma_hypotheses(lam: Weight, r: int) -> list[str]:
    """Names of the satisfied alternative conditions (empty when none holds)."""
    from .rootsys import alpha, is_regular_dominant

    n = lam.n
    shifted = lam + Weight((Fraction(1),) * n)

    def pair(i: int, j: int) -> Fraction:
        return pairing(shifted, alpha(n, i, j))

    def natural(x: Fraction) -> bool:
        return x.denominator == 1 and x >= 1

    if not is_regular_dominant(lam) or pair(r, r).denominator == 1:
        return []
    found = []
    if all(pair(i, j).denominator != 1 for i in range(1, r + 1) for j in range(i, r + 1)):
        found.append("i")
    if all(natural(pair(i, i)) for i in range(1, r)):
        found.append("ii")
    if r != 1 and pair(r - 1, r - 1).denominator != 1 and natural(pair(r - 1, r)) and all(
            natural(pair(k, k)) for k in range(1, n + 1) if k not in (r - 1, r)):
        found.append("iii")
    if r != n and pair(r + 1, r + 1).denominator != 1 and natural(pair(r, r + 1)) and all(
            natural(pair(k, k)) for k in range(1, n + 1) if k not in (r, r + 1)):
        found.append("iv")
    return found


def lemma_tableau(lam: Weight, r: int) -> Tableau:
    n = lam.n
    if not 1 <= r <= n:
        raise HypothesisViolated(f"r={r} out of range")
    if not lemma_hypotheses(lam, r):
        raise HypothesisViolated(f"{lam} does not satisfy the hypotheses for r={r}")
    if r == 1:
        return standard_tableau(lam)
    v = _lemma_v(lam, r)
    rows = tuple(tuple(lemma_entry(v, r, i, j) for j in range(1, i + 1)) for i in range(1, n + 2))
    return Tableau(rows)


def lemma_borel_roots(n: int, r: int) -> list[Root]:
    """Roots whose root vectors must kill the lemma tableau (untwisted action)."""
    from .rootsys import alpha

    out = [alpha(n, j, j) for j in range(1, n + 1) if j not in (2, r + 1)]
    if r >= 2 and r + 1 <= n:
        out.append(alpha(n, 2, r + 1))
    out.append(-alpha(n, 1, r))
    return out


def lemma_expected_eigenvalues(lam: Weight, r: int) -> list[tuple[Operator, Fraction]]:
    """(Cartan element, eigenvalue) pairs predicted for the lemma tableau."""
    from .rootsys import alpha

    n = lam.n

    def lp(j: int) -> Fraction:
        return pairing(lam, alpha(n, j, j))

    out = [(coroot(alpha(n, 1, 1)), lp(r))]
    if r >= 2:
        out.append((coroot(-alpha(n, 1, r)), lp(r - 1)))
    if r >= 2 and r + 1 <= n:
        out.append((coroot(alpha(n, 2, r + 1)), lp(r + 1)))
    for j in range(1, r - 1):
        out.append((coroot(alpha(n, j + 2, j + 2)), lp(j)))
    for j in range(r + 2, n + 1):
        out.append((coroot(alpha(n, j, j)), lp(j)))
    return out


def build_hw_tableau(lam: Weight, variant: str = "standard", r: int | None = None
                     ) -> tuple[Tableau, RelationSet]:
    if variant == "standard":
        t = standard_tableau(lam)
    elif variant == "lemma":
        if r is None:
            raise ValueError("the lemma variant needs r")
        t = lemma_tableau(lam, r)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return t, maximal_relation_set(t)


# --- built-in modules --------------------------------------------------------------------


def verma(lam: Weight, relations: str = "maximal") -> GTModule:
    """Module seeded by the standard tableau of ``lam``.

    ``relations="maximal"`` uses every integral adjacent-row relation (this is
    the finite-dimensional module when ``lam`` is dominant integral);
    ``relations="chain"`` uses only ``(k+1, i) -> (k, i)``.
    """
    t = standard_tableau(lam)
    if relations == "maximal":
        rel = maximal_relation_set(t)
    elif relations == "chain":
        rel = chain_relation_set(lam.n)
    else:
        raise ValueError(f"unknown relation choice {relations!r}")
    return GTModule(t, rel, WbarElt.identity(lam.n), f"verma{lam}")


def finite_module(lam: Weight) -> GTModule:
    from .errors import NotDominantIntegral

    if not lam.is_dominant_integral():
        raise NotDominantIntegral(f"{lam} is not dominant integral")
    m = verma(lam, "maximal")
    m.label = f"finite{lam}"
    return m


def lemma_module(lam: Weight, r: int) -> GTModule:
    t, rel = build_hw_tableau(lam, "lemma", r)
    return GTModule(t, rel, WbarElt.identity(lam.n), f"lemma(r={r}){lam}")


def builtin_module(name: str, **params) -> GTModule:
    """``verma`` (params: lam, relations), ``finite`` (lam), ``lemma`` (lam, r),
    ``table_sl4`` (orbit, row, lam, nu)."""
    if name == "verma":
        return verma(params["lam"], params.get("relations", "maximal"))
    if name == "finite":
        return finite_module(params["lam"])
    if name == "lemma":
        return lemma_module(params["lam"], params["r"])
    if name == "table_sl4":
        from .tables import table_sl4

        return table_sl4(params["orbit"], params["row"], params["lam"], params.get("nu"))
    raise ValueError(f"unknown built-in module {name!r}")


def shifts_in_box(lower: Sequence[int], upper: Sequence[int]) -> Iterator[Shift]:
    yield from product(*(range(a, b + 1) for a, b in zip(lower, upper)))
