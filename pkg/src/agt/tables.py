"""The four sl_4 table families: base tableaux, relation diagrams and inequality sets.

Positions carry letters: ``A..D`` the top row (4,1..4), ``E, F, G`` row 3,
``H, I`` row 2 and ``J`` the single entry of row 1.  A diagram is a list of
two-letter arrows ``XY`` meaning ``X -> Y``.

Each table has four rows: the module ``M`` itself, its localization ``D_f``
along the first frame root, the twist ``T_f`` and the generic localization
``D_nu``.  The printed inequality sets are stored verbatim as ASCII strings
(``l`` for the row-1 shift, ``lambda1..3`` for the weight coordinates) and
compared with the sets derived from the diagrams.

The shift names follow the entries rather than the positions: in row 3 the
entry carrying ``v_1`` is ``r``, the one carrying ``v_2`` is ``s`` and the
one carrying ``v_3`` is ``t``; row 2 is ``m, n`` and row 1 is ``l``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .errors import ParameterConstraintViolated
from .gtcore import Arrow, GTModule, RelationSet, Tableau, maximal_relation_set
from .rootsys import Weight
from .weylgrp import WbarElt

__all__ = [
    "LETTERS",
    "ORBITS",
    "ROWS",
    "TableComparison",
    "compare_table",
    "default_parameters",
    "derive_inequalities",
    "parse_printed",
    "diagram_mismatch",
    "implied_by",
    "render_markdown",
    "table_base",
    "table_diagram",
    "table_sl4",
    "v_from_lambda",
]

LETTERS: dict[str, tuple[int, int]] = {
    "A": (4, 1), "B": (4, 2), "C": (4, 3), "D": (4, 4),
    "E": (3, 1), "F": (3, 2), "G": (3, 3),
    "H": (2, 1), "I": (2, 2),
    "J": (1, 1),
}
_LETTER_OF = {pos: name for name, pos in LETTERS.items()}

ROWS = ("M", "D_f", "T_f", "D_nu")

ORBITS = ("principal", "subregular", "rectangular", "minimal")

_PARTITIONS = {
    "principal": (4,),
    "subregular": (3, 1),
    "rectangular": (2, 2),
    "minimal": (2, 1, 1),
}

_CAPTIONS = {
    "principal": "Principal nilpotent orbit",
    "subregular": "Subregular nilpotent orbit",
    "rectangular": "Rectangular nilpotent orbit",
    "minimal": "Minimal nilpotent orbit",
}

# v-indices of the top row and of row 3 (row 2 is always (v1, v2 + 1), row 1 is v1).
_LAYOUT = {
    "principal": ((1, 2, 3, 4), (1, 2, 3)),
    "subregular": ((1, 2, 4, 3), (1, 2, 3)),
    "rectangular": ((1, 3, 2, 4), (1, 3, 2)),
    "minimal": ((1, 3, 2, 4), (1, 3, 2)),
}

_PRINTED_M = {
    "principal": "AE BF CG EH IF HJ",
    "subregular": "AE BF FC DG EH IF HJ",
    "rectangular": "AE EB BF CG GD EH HF IG HJ",
    "minimal": "AE BF FC CG GD EH FI IG HJ",
}

_PRINTED_SETS = {
    "principal": {
        "M": ["l <= m <= r <= 0", "s <= 0", "t <= 0", "s <= n"],
        "D_f": ["m <= r <= 0", "s <= 0", "t <= 0", "s <= n"],
        "T_f": ["m <= r <= 0", "s <= 0", "t <= 0", "s <= n", "m <= l"],
        "D_nu": ["m <= r <= 0", "s <= 0", "t <= 0", "s <= n"],
    },
    "subregular": {
        "M": ["l <= m <= r <= 0", "-lambda3 <= s <= 0", "t <= 0", "s <= n"],
        "D_f": ["m <= r <= 0", "-lambda3 <= s <= 0", "t <= 0", "s <= n"],
        "T_f": ["m <= r <= 0", "-lambda3 <= s <= 0", "t <= 0", "s <= n", "m <= l"],
        "D_nu": ["m <= r <= 0", "-lambda3 <= s <= 0", "t <= 0", "s <= n"],
    },
    "rectangular": {
        "M": ["t - lambda1 <= m <= r", "-lambda3 <= s <= 0", "t <= 0", "s <= n",
              "-lambda1 <= r <= 0", "l <= m"],
        "D_f": ["t - lambda1 <= m <= r", "-lambda3 <= s <= 0", "t <= 0", "s <= n",
                "-lambda1 <= r <= 0"],
        "T_f": ["t - lambda1 <= m <= r", "-lambda3 <= s <= 0", "t <= 0", "s <= n",
                "-lambda1 <= r <= 0", "m <= l"],
        "D_nu": ["t - lambda1 <= m <= r", "-lambda3 <= s <= 0", "t <= 0", "s <= n",
                 "-lambda1 <= r <= 0"],
    },
    "minimal": {
        "M": ["l <= m <= r <= 0", "-lambda2 <= t <= 0", "-lambda3 <= s <= 0",
              "s <= n <= t - lambda2"],
        "D_f": ["m <= r <= 0", "-lambda2 <= t <= 0", "-lambda3 <= s <= 0",
                "s <= n <= t - lambda2"],
        "T_f": ["m <= r <= 0", "-lambda2 <= t <= 0", "-lambda3 <= s <= 0",
                "s <= n <= t - lambda2", "m <= l"],
        "D_nu": ["m <= r <= 0", "-lambda2 <= t <= 0", "-lambda3 <= s <= 0",
                 "s <= n <= t - lambda2"],
    },
}

# Two instantiations per table: (p, q, mu, eta, nu) with lambda = mu - (p/q) eta.
_PARAMETERS = {
    "principal": [(5, 4, (0, 0, 0), (1, 1, 1), Fraction(1, 3)),
                  (7, 5, (1, 0, 1), (1, 1, 1), Fraction(1, 3))],
    "subregular": [(5, 3, (0, 0, 1), (1, 1, 0), Fraction(1, 2)),
                   (7, 3, (1, 0, 1), (1, 1, 0), Fraction(1, 2))],
    "rectangular": [(7, 2, (0, 0, 0), (0, 1, 0), Fraction(1, 3)),
                    (9, 2, (1, 0, 1), (0, 1, 0), Fraction(1, 3))],
    "minimal": [(7, 2, (0, 1, 1), (1, 0, 0), Fraction(1, 3)),
                (9, 2, (1, 1, 2), (1, 0, 0), Fraction(1, 3))],
}


def _check_orbit(orbit: str) -> str:
    if orbit not in _LAYOUT:
        raise ValueError(f"unknown table orbit {orbit!r}; expected one of {', '.join(ORBITS)}")
    return orbit


def _check_row(row: str) -> str:
    if row not in ROWS:
        raise ValueError(f"unknown table row {row!r}; expected one of {', '.join(ROWS)}")
    return row


def frame_s2() -> WbarElt:
    return WbarElt.from_word(3, ("r2",))


def default_parameters(orbit: str) -> list[tuple[Weight, Fraction]]:
    """The two built-in (lambda, nu) instantiations of a table."""
    out = []
    for p, q, mu, eta, nu in _PARAMETERS[_check_orbit(orbit)]:
        pq = Fraction(p, q)
        out.append((Weight(tuple(Fraction(m) - pq * e for m, e in zip(mu, eta))), nu))
    return out


def v_from_lambda(lam: Weight) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """``v`` with ``v1-v3 = c1``, ``v3-v2 = c2``, ``v2-v4 = c3`` and sum ``-6``.

    Here ``c_i = <lam + rho, alpha_i>``.
    """
    if lam.n != 3:
        raise ParameterConstraintViolated("the tables live in sl_4")
    c1, c2, c3 = (x + 1 for x in lam.coeffs)
    v4 = (Fraction(-6) - c1 - 2 * c2 - 3 * c3) / 4
    v2 = v4 + c3
    v3 = v2 + c2
    v1 = v3 + c1
    return v1, v2, v3, v4


def _base_rows(orbit: str, v: Sequence) -> list[list]:
    top, row3 = _LAYOUT[orbit]
    return [
        [v[i - 1] for i in top],
        [v[i - 1] for i in row3],
        [v[0], v[1] + 1],
        [v[0]],
    ]


def table_base(orbit: str, lam: Weight) -> Tableau:
    """The table's seed tableau ``T(v)`` for the weight ``lam``."""
    return Tableau.from_top_down(_base_rows(_check_orbit(orbit), v_from_lambda(lam)))


def _parse_diagram(text: str) -> RelationSet:
    return RelationSet.of((LETTERS[a[0]], LETTERS[a[1]]) for a in text.split())


def diagram_letters(rel: RelationSet) -> str:
    return " ".join(_LETTER_OF[a.src] + _LETTER_OF[a.dst] for a in rel.sorted())


def table_diagram(orbit: str, row: str) -> RelationSet:
    """The printed relation diagram of one table row."""
    m = _parse_diagram(_PRINTED_M[_check_orbit(orbit)])
    hj = Arrow(LETTERS["H"], LETTERS["J"])
    row = _check_row(row)
    if row == "M":
        return m
    rest = m.without([hj])
    if row == "T_f":
        return rest.with_arrows([Arrow(LETTERS["J"], LETTERS["H"])])
    return rest


def _longest_path(t: Tableau, edges: list, src, dst) -> Fraction | None:
    """Largest certified lower bound for ``x_src - x_dst`` from difference constraints."""
    n = t.n
    top = [(n + 1, i) for i in range(1, n + 2)]
    all_edges = list(edges)
    for u in top:
        for w in top:
            if u != w:
                d = t.entry(*u) - t.entry(*w)
                if d.denominator == 1:
                    all_edges.append((u, w, d))
    nodes = {p for u, w, _ in all_edges for p in (u, w)} | {src, dst}
    dist = {p: None for p in nodes}
    dist[src] = Fraction(0)
    for _ in range(len(nodes)):
        changed = False
        for u, w, b in all_edges:
            if dist[u] is not None and (dist[w] is None or dist[u] + b > dist[w]):
                dist[w] = dist[u] + b
                changed = True
        if not changed:
            break
    return dist[dst]


def implied_by(t: Tableau, rel: RelationSet, arrow: Arrow) -> bool:
    """Whether ``arrow`` follows from ``rel`` and the frozen top row of ``t``.

    Each arrow reads ``x_src - x_dst >= b`` (``b = 0`` downward, ``1`` upward);
    two top-row entries with integral difference ``d`` give the edges ``d`` and
    ``-d``.  The arrow is implied when a path from its source to its target
    certifies at least its own bound.
    """
    edges = [(x.src, x.dst, Fraction(0 if x.downward else 1)) for x in rel.sorted() if x != arrow]
    best = _longest_path(t, edges, arrow.src, arrow.dst)
    return best is not None and best >= (0 if arrow.downward else 1)


def diagram_mismatch(t: Tableau, printed: RelationSet) -> list[str]:
    """Reasons why the seed's maximal relations and ``printed`` cut out different bases."""
    maximal = maximal_relation_set(t)
    out = [f"{_LETTER_OF[a.src]}{_LETTER_OF[a.dst]} is not satisfied by the seed"
           for a in printed.sorted() if a not in maximal.arrows]
    out += [f"{_LETTER_OF[a.src]}{_LETTER_OF[a.dst]} holds but is not implied by the diagram"
            for a in maximal.sorted() if a not in printed.arrows and not implied_by(t, printed, a)]
    return out


def table_sl4(orbit: str, row: str = "M", lam: Weight | None = None,
              nu: Fraction | None = None) -> GTModule:
    """One of the sixteen built-in table modules, in frame ``s_2``.

    ``lam`` defaults to the first built-in instantiation.  The weight must
    make the seed's own integral relations equivalent to the printed diagram;
    otherwise ParameterConstraintViolated is raised.  Relations that the seed
    satisfies beyond the diagram are fine when the diagram implies them.
    """
    from .localize import localize_module, twisting_functor

    orbit, row = _check_orbit(orbit), _check_row(row)
    defaults = default_parameters(orbit)[0]
    lam = defaults[0] if lam is None else lam
    base = table_base(orbit, lam)
    if base.has_row_collision():
        raise ParameterConstraintViolated(f"{lam} gives a seed with repeated row entries")
    printed = table_diagram(orbit, "M")
    problems = diagram_mismatch(base, printed)
    if problems:
        raise ParameterConstraintViolated(
            f"{lam} does not realize the {orbit} diagram: " + "; ".join(problems))
    m = GTModule(base, printed, frame_s2(), f"{orbit}:M{lam}")
    if row == "M":
        return m
    if row == "D_f":
        out = localize_module(m, Fraction(0))
    elif row == "T_f":
        out = twisting_functor(m)
    else:
        if nu is None:
            nu = defaults[1]
        nu = Fraction(nu)
        if nu.denominator == 1:
            raise ParameterConstraintViolated(f"nu = {nu} must not be an integer")
        out = localize_module(m, nu)
    out.label = f"{orbit}:{row}{lam}" + (f"[nu={nu}]" if row == "D_nu" else "")
    return out


# --- symbolic inequality sets --------------------------------------------------------

_SYMS = {name: sympy.Symbol(name) for name in
         ("r", "s", "t", "m", "n", "l", "lambda1", "lambda2", "lambda3", "nu")}


def _shift_names(orbit: str) -> dict[tuple[int, int], sympy.Symbol]:
    _, row3 = _LAYOUT[orbit]
    by_v = {1: "r", 2: "s", 3: "t"}
    names = {(3, i): _SYMS[by_v[v]] for i, v in enumerate(row3, start=1)}
    names.update({(2, 1): _SYMS["m"], (2, 2): _SYMS["n"], (1, 1): _SYMS["l"]})
    return names


def _symbolic_entries(orbit: str, row: str) -> dict[tuple[int, int], sympy.Expr]:
    c1, c2, c3 = (_SYMS[f"lambda{i}"] + 1 for i in (1, 2, 3))
    v4 = sympy.Integer(0)
    v2 = v4 + c3
    v3 = v2 + c2
    v1 = v3 + c1
    rows = _base_rows(orbit, (v1, v2, v3, v4))
    names = _shift_names(orbit)
    entries = {}
    for k, r in zip((4, 3, 2, 1), rows):
        for i, x in enumerate(r, start=1):
            entries[(k, i)] = x + names.get((k, i), 0)
    if row == "T_f":
        entries[(1, 1)] += 1
    elif row == "D_nu":
        entries[(1, 1)] += _SYMS["nu"]
    return entries


def derive_inequalities(orbit: str, row: str) -> frozenset[sympy.Expr]:
    """Atoms ``E >= 0`` read off the printed diagram of a table row."""
    orbit, row = _check_orbit(orbit), _check_row(row)
    entries = _symbolic_entries(orbit, row)
    out = set()
    for a in table_diagram(orbit, row).sorted():
        diff = entries[a.src] - entries[a.dst]
        out.add(sympy.expand(diff if a.downward else diff - 1))
    return frozenset(out)


def parse_printed(chains: Sequence[str]) -> frozenset[sympy.Expr]:
    """Atoms ``E >= 0`` of printed chains ``a <= b <= c``."""
    out = set()
    for chain in chains:
        parts = [sympy.sympify(p, locals=_SYMS) for p in chain.split("<=")]
        for lo, hi in zip(parts, parts[1:]):
            out.add(sympy.expand(hi - lo))
    return frozenset(out)


def printed_inequalities(orbit: str, row: str) -> frozenset[sympy.Expr]:
    return parse_printed(_PRINTED_SETS[_check_orbit(orbit)][_check_row(row)])


_SHIFT_SYMS = frozenset(_SYMS[x] for x in ("r", "s", "t", "m", "n", "l"))


def atom_text(atom: sympy.Expr) -> str:
    """``E >= 0`` rendered as ``lhs <= rhs``.

    Shift variables sit on the side where their coefficient is positive;
    weight terms and constants join the side that has no shift variable,
    or the right-hand side when both have one.
    """
    left, right, params = sympy.Integer(0), sympy.Integer(0), sympy.Integer(0)
    for term in sympy.Add.make_args(atom):
        if term.free_symbols & _SHIFT_SYMS:
            coeff, _ = term.as_coeff_Mul()
            if coeff < 0:
                left -= term
            else:
                right += term
        else:
            params += term
    if left == 0 and right != 0:
        left = -params
    else:
        right += params
    return f"{sympy.sstr(left)} <= {sympy.sstr(right)}"


@dataclass(frozen=True)
class TableComparison:
    orbit: str
    row: str
    derived: frozenset
    printed: frozenset

    @property
    def matches(self) -> bool:
        return self.derived == self.printed

    def only_derived(self) -> list[str]:
        return sorted(atom_text(a) for a in self.derived - self.printed)

    def only_printed(self) -> list[str]:
        return sorted(atom_text(a) for a in self.printed - self.derived)

    def to_json(self) -> dict:
        return {
            "orbit": self.orbit,
            "row": self.row,
            "matches": self.matches,
            "derived": sorted(atom_text(a) for a in self.derived),
            "printed": list(_PRINTED_SETS[self.orbit][self.row]),
            "only_derived": self.only_derived(),
            "only_printed": self.only_printed(),
        }


def compare_table(orbit: str, row: str) -> TableComparison:
    return TableComparison(orbit, row, derive_inequalities(orbit, row),
                           printed_inequalities(orbit, row))


_BASE_TEXT = {"M": "T(v)", "D_f": "T(v)", "T_f": "T(v+δ^{1,1})", "D_nu": "T(v+νδ^{1,1})"}


def _pretty(text: str) -> str:
    text = text.replace("lambda", "λ").replace("nu", "ν")
    return " ".join("ℓ" if tok == "l" else tok for tok in text.split(" "))


def render_markdown(orbit: str) -> str:
    """A deterministic markdown report: layout, per-row diagrams and set comparison."""
    orbit = _check_orbit(orbit)
    top, row3 = _LAYOUT[orbit]
    lines = [f"# sl4 table: {_CAPTIONS[orbit]} (orbit {list(_PARTITIONS[orbit])}, frame s2)", ""]
    lines.append("Seed T(v), top row first:")
    lines.append("")
    lines.append("    " + "  ".join(f"v{i}" for i in top))
    lines.append("     " + "  ".join(f"v{i}" for i in row3))
    lines.append("       v1  v2+1")
    lines.append("         v1")
    lines.append("")
    lines.append("Pairings: v1-v3 = <λ+ρ,α1>, v3-v2 = <λ+ρ,α2>, v2-v4 = <λ+ρ,α3>, "
                 "v1+v2+v3+v4 = -6.")
    lines.append("")
    lines.append("| row | base | diagram | derived set | printed set | match |")
    lines.append("|---|---|---|---|---|---|")
    comparisons = [compare_table(orbit, row) for row in ROWS]
    for cmp in comparisons:
        derived = ", ".join(_pretty(a) for a in sorted(atom_text(x) for x in cmp.derived))
        printed = ", ".join(_pretty(s) for s in _PRINTED_SETS[orbit][cmp.row])
        lines.append(f"| {cmp.row} | {_BASE_TEXT[cmp.row]} | "
                     f"{diagram_letters(table_diagram(orbit, cmp.row))} | {derived} | {printed} | "
                     f"{'yes' if cmp.matches else 'no'} |")
    lines.append("")
    lines.append("## Diff against the printed sets")
    lines.append("")
    if all(c.matches for c in comparisons):
        lines.append("No differences.")
    else:
        for cmp in comparisons:
            if cmp.matches:
                continue
            lines.append(f"- {cmp.row}: derived only: "
                         f"{', '.join(_pretty(a) for a in cmp.only_derived()) or '-'}; "
                         f"printed only: {', '.join(_pretty(a) for a in cmp.only_printed()) or '-'}")
    lines.append("")
    return "\n".join(lines)


def all_table_modules(instance: int = 0) -> list[GTModule]:
    """The sixteen modules for the chosen built-in instantiation."""
    out = []
    for orbit in ORBITS:
        lam, nu = default_parameters(orbit)[instance]
        for row in ROWS:
            out.append(table_sl4(orbit, row, lam, nu))
    return out

