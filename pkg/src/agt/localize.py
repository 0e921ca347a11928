"""Twisted localization along the first frame root, at the level of tableau modules.

For a module ``M`` in frame ``w`` let ``gamma_1 = w(alpha_1)``.  The twisted
action of ``f_{gamma_1}`` is a nonzero multiple of the untwisted ``f_1``, which
lowers the single entry of row 1 and never annihilates a basis member.  So:

* ``D_f(M)`` keeps the seed and forgets every arrow at position (1,1);
* ``D^nu_f(M)`` additionally moves the (1,1) entry by ``nu``;
* ``T_f(M) = D_f(M)/M`` is spanned by the tableaux that ``M`` misses.

The symbolic side is the automorphism ``Theta^nu`` of the localized
enveloping algebra, restricted to one sl_2-triple and kept in the normal form
``sum c(nu) f^m x`` with ``x`` one of ``1, e, h``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import sympy

from .errors import HypothesisViolated, NotFirstRoot, NotInjective, ParameterConstraintViolated
from .gtcore import (
    Arrow,
    GTModule,
    ModuleVector,
    Shift,
    Window,
    coroot,
    root_vector,
)
from .rootsys import Root
from .verify import Failure, Report
from .weylgrp import tits_representative

__all__ = [
    "LocalizedElement",
    "apply_localized",
    "complement_check",
    "first_frame_root",
    "localize_module",
    "submodule_check",
    "theta_generator",
    "twisting_functor",
]

_J = (1, 1)


def first_frame_root(M: GTModule) -> tuple[Root, Fraction]:
    """``gamma_1`` together with the scalar ``c`` in ``twisted f_{gamma_1} = c f_1``."""
    n = M.n
    g = tits_representative(M.frame)
    f1 = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    f1[1][0] = Fraction(1)
    image = g.apply(f1)
    hits = [(a, b, x) for a, row in enumerate(image, start=1)
            for b, x in enumerate(row, start=1) if x]
    assert len(hits) == 1, "a Tits representative maps root vectors to root vectors"
    a, b, x = hits[0]
    # f_{gamma_1} = E_ab, and its twist is E_21 / x.
    return Root(n, b, a), Fraction(1) / Fraction(x)


def _check_root(M: GTModule, root: Root | None) -> None:
    if root is None:
        return
    gamma, _ = first_frame_root(M)
    if root != gamma:
        raise NotFirstRoot(f"localization is along {gamma}, the first root of the frame, "
                           f"not along {root}")


def _check_injective(M: GTModule) -> None:
    for a in M.relations.incident(_J):
        if a.src == _J:
            raise NotInjective(f"the arrow {a} bounds the row-1 entry from below, "
                               "so f annihilates a basis member")


def localize_module(M: GTModule, nu=0, root: Root | None = None) -> GTModule:
    """``D^nu_f(M)``: the (1,1) entry moves by ``nu`` and its arrows disappear.

    A non-integral ``nu`` must also keep the moved entry non-integral against
    row 2, otherwise ParameterConstraintViolated is raised.
    """
    _check_root(M, root)
    _check_injective(M)
    nu = Fraction(nu)
    base = M.base.shifted_at(1, 1, nu)
    if nu.denominator != 1:
        for x in base.row(2):
            d = base.entry(1, 1) - x
            if d.denominator == 1:
                raise ParameterConstraintViolated(
                    f"nu = {nu} makes the row-1 entry differ from the row-2 entry {x} "
                    "by an integer")
    rel = M.relations.without(M.relations.incident(_J))
    label = f"D_f({M.label})" if nu == 0 else f"D^{nu}_f({M.label})"
    return GTModule(base, rel, M.frame, label)


def twisting_functor(M: GTModule, root: Root | None = None) -> GTModule:
    """``T_f(M) = D_f(M)/M`` as a tableau module.

    ``M`` must bound the row-1 entry by exactly one downward arrow
    ``(2,i) -> (1,1)``; the quotient is seeded one step past that bound and
    carries the reversed arrow.
    """
    _check_root(M, root)
    _check_injective(M)
    at_j = M.relations.incident(_J)
    if len(at_j) != 1:
        raise HypothesisViolated(f"T_f needs exactly one arrow at (1,1), found {len(at_j)}")
    (a,) = at_j
    d = M.base.entry(*a.src) - M.base.entry(1, 1)
    base = M.base.shifted_at(1, 1, d + 1)
    rel = M.relations.without([a]).with_arrows([Arrow(_J, a.src)])
    return GTModule(base, rel, M.frame, f"T_f({M.label})")


# --- basis bookkeeping between modules with different seeds --------------------------------


def _offset(M: GTModule, D: GTModule) -> Shift | None:
    """Integer ``o`` with ``M.base + z = D.base + (z + o)``; None if the seeds are not aligned."""
    if M.n != D.n or M.base.row(M.n + 1) != D.base.row(D.n + 1):
        return None
    out = []
    for p in M._positions:
        diff = M.base.entry(*p) - D.base.entry(*p)
        if diff.denominator != 1:
            return None
        out.append(int(diff))
    return tuple(out)


def _translate(z: Shift, o: Shift) -> Shift:
    return tuple(a + b for a, b in zip(z, o))


def _generators(n: int):
    from .gtcore import chevalley

    return [(f"{k}{i}", chevalley(n, k, i)) for i in range(1, n + 1) for k in "efh"]


def submodule_check(M: GTModule, D: GTModule, window: Window) -> bool:
    """Whether ``M`` sits inside ``D`` on the window: basis inclusion and equal actions."""
    return submodule_report(M, D, window).passed


def submodule_report(M: GTModule, D: GTModule, window: Window) -> Report:
    rep = Report(f"submodule [{M.label}] in [{D.label}]")
    o = _offset(M, D)
    if o is None or M.frame.word != D.frame.word:
        rep.failures.append(Failure("seeds or frames not aligned", M.zero_shift(), ""))
        return rep
    back = tuple(-x for x in o)
    gens = _generators(M.n)
    for z in M.enumerate_basis(window):
        zd = _translate(z, o)
        rep.checked_count += 1
        if not D.contains(zd):
            rep.failures.append(Failure("basis inclusion", z, "missing from the larger module"))
            continue
        for name, op in gens:
            rep.checked_count += 1
            mine = M.apply_operator(op, ModuleVector.basis(z))
            theirs = D.apply_operator(op, ModuleVector.basis(zd))
            pulled = ModuleVector({_translate(y, back): c for y, c in theirs.terms.items()})
            if pulled != mine:
                rep.failures.append(Failure(name, z, repr(pulled - mine)))
    return rep


def complement_check(M: GTModule, D: GTModule, T: GTModule, window: Window) -> Report:
    """On the window of ``D``: the bases of ``M`` and ``T`` are disjoint and cover ``D``."""
    rep = Report(f"complement [{M.label}] + [{T.label}] = [{D.label}]")
    om, ot = _offset(D, M), _offset(D, T)
    if om is None or ot is None:
        rep.failures.append(Failure("seeds not aligned", D.zero_shift(), ""))
        return rep
    for z in D.enumerate_basis(window):
        rep.checked_count += 1
        in_m, in_t = M.contains(_translate(z, om)), T.contains(_translate(z, ot))
        if in_m and in_t:
            rep.failures.append(Failure("basis overlap", z, "in both M and T_f(M)"))
        elif not in_m and not in_t:
            rep.failures.append(Failure("basis gap", z, "in neither M nor T_f(M)"))
    for X, ox, what in ((M, om, "M"), (T, ot, "T_f(M)")):
        back = tuple(-x for x in ox)
        for z in X.enumerate_basis(window):
            rep.checked_count += 1
            if not D.contains(_translate(z, back)):
                rep.failures.append(Failure(f"{what} outside D_f(M)", z, ""))
    return rep


# --- Theta on an sl_2-triple -----------------------------------------------------------------

NU = sympy.Symbol("nu")
_LETTERS = ("e", "h", "1")


@dataclass(frozen=True)
class LocalizedElement:
    """``sum c * f^m x`` with ``x`` in ``1, h, e`` and ``c`` a polynomial in ``nu``."""

    terms: Mapping[tuple[int, str], sympy.Expr] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (m, x), c in self.terms.items():
            if x not in _LETTERS:
                raise ValueError(f"unknown letter {x!r}")
            c = sympy.expand(sympy.sympify(c))
            if c != 0:
                clean[(int(m), x)] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=self._order)))

    @staticmethod
    def _order(item) -> tuple:
        (m, x), _ = item
        return (-m, _LETTERS.index(x))

    def __add__(self, other: "LocalizedElement") -> "LocalizedElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LocalizedElement(out)

    def scale(self, c) -> "LocalizedElement":
        return LocalizedElement({k: v * c for k, v in self.terms.items()})

    def subs(self, nu) -> "LocalizedElement":
        return LocalizedElement({k: v.subs(NU, nu) for k, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for (m, x), c in self.terms.items():
            mono = []
            if m == 1:
                mono.append("f")
            elif m != 0:
                mono.append(f"f^{m}")
            if x != "1":
                mono.append(x)
            coeff = sympy.factor(c)
            negative = coeff.could_extract_minus_sign()
            if negative:
                coeff = -coeff
            if not mono:
                body = sympy.sstr(coeff)
            elif coeff == 1:
                body = " ".join(mono)
            else:
                text = sympy.sstr(coeff)
                if isinstance(coeff, sympy.Add):
                    text = f"({text})"
                body = text + " " + " ".join(mono)
            if not out:
                out = ("-" if negative else "") + body
            else:
                out += (" - " if negative else " + ") + body
        return out

    @classmethod
    def letter(cls, x: str) -> "LocalizedElement":
        if x == "f":
            return cls({(1, "1"): 1})
        return cls({(0, x): 1})


def _ad_f(u: LocalizedElement) -> LocalizedElement:
    """``[f, u]`` for ``u`` in the span of ``f^m x``: f commutes with its own powers."""
    out = LocalizedElement()
    for (m, x), c in u.terms.items():
        if x == "1":
            continue
        if x == "h":     # [f, h] = 2f
            out = out + LocalizedElement({(m + 1, "1"): 2 * c})
        else:            # [f, e] = -h
            out = out + LocalizedElement({(m, "h"): -c})
    return out


def theta_generator(x: str, nu=NU) -> LocalizedElement:
    """``Theta^nu(x) = sum_k binom(nu+k-1, k) f^{-k} ad(f)^k (x)`` for ``x`` in ``e, h, f``."""
    if x not in ("e", "h", "f"):
        raise ValueError(f"expected one of e, h, f; got {x!r}")
    nu = sympy.sympify(nu)
    term = LocalizedElement.letter(x)
    total = LocalizedElement()
    k = 0
    while term.terms:
        coeff = sympy.expand_func(sympy.binomial(nu + k - 1, k)) if k else sympy.Integer(1)
        shifted = LocalizedElement({(m - k, y): c for (m, y), c in term.terms.items()})
        total = total + shifted.scale(sympy.expand(coeff))
        term = _ad_f(term)
        k += 1
    return total


def apply_localized(D: GTModule, u: LocalizedElement, z: Shift) -> ModuleVector:
    """Act by ``u`` (numeric coefficients) on a basis member of a localized module ``D``.

    ``f`` is the twisted ``f_{gamma_1}``; it moves only the row-1 entry, so its
    inverse is the opposite unit shift with the reciprocal scalar.
    """
    if D.relations.incident(_J):
        raise HypothesisViolated("f is invertible only once the row-1 arrows are gone")
    gamma, scale = first_frame_root(D)
    j = D.index(_J)
    e_op, h_op = root_vector(gamma), coroot(gamma)
    out = ModuleVector()
    for (m, x), c in u.terms.items():
        c = Fraction(str(c))
        vec = ModuleVector.basis(z)
        if x == "e":
            vec = D.apply_operator(e_op, vec)
        elif x == "h":
            vec = D.apply_operator(h_op, vec)
        moved = {}
        for y, cy in vec.terms.items():
            y2 = list(y)
            y2[j] -= m
            moved[tuple(y2)] = cy * scale ** m
        out = out + ModuleVector(moved).scale(c)
    return out


def theta_consistency(M: GTModule, nu: Fraction, window: Window) -> Report:
    """``x`` on ``D^nu`` against ``Theta^nu(x)`` on ``D^0``, member by member."""
    D0, Dnu = localize_module(M, 0), localize_module(M, nu)
    gamma, _ = first_frame_root(M)
    ops = {"e": root_vector(gamma), "h": coroot(gamma),
           "f": root_vector(-gamma)}
    rep = Report(f"theta consistency [{M.label}] nu={nu}")
    for z in Dnu.enumerate_basis(window):
        for x in ("e", "h", "f"):
            rep.checked_count += 1
            lhs = Dnu.apply_operator(ops[x], ModuleVector.basis(z))
            rhs = apply_localized(D0, theta_generator(x, sympy.Rational(nu.numerator,
                                                                         nu.denominator)), z)
            if lhs != rhs:
                rep.failures.append(Failure(f"theta({x})", z, repr(lhs - rhs)))
    return rep


def sl2_casimir_report(M: GTModule, window: Window, xi: Fraction) -> Report:
    """``h^2/2 + h + 2fe`` acts on every window member of an sl_2 module by ``xi``."""
    if M.n != 1:
        raise ValueError("the Casimir check is for sl_2 modules")
    rep = Report(f"casimir [{M.label}]")
    for z in M.enumerate_basis(window):
        rep.checked_count += 1
        x = ModuleVector.basis(z)
        h = M.act(["h1"], x)
        hh = M.act(["h1"], h)
        fe = M.act(["f1", "e1"], x)
        val = hh.scale(Fraction(1, 2)) + h + fe.scale(2) - x.scale(xi)
        if not val.is_zero():
            rep.failures.append(Failure("casimir", z, repr(val)))
    return rep

