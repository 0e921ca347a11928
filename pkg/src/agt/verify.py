"""Brute-force checks on Gelfand-Tsetlin modules inside finite windows.

Every check returns a :class:`Report`; failures are data, never exceptions.
Windows are boxes of shift vectors; the generator action itself is always
exact and windowless, so identities are tested on the window members while
their images may lie anywhere in the basis.
"""

from __future__ import annotations

from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Callable, Sequence

from gmpy2 import mpq

from .errors import ClosureViolation, NotDominantIntegral, NotInBasis
from .gtcore import (
    GTModule,
    ModuleVector,
    Operator,
    Shift,
    Window,
    chevalley,
    coroot,
    root_vector,
)
from .rootsys import Root, Weight, pairing, positive_roots, rho

_ONE_Q = mpq(1)

__all__ = [
    "Report",
    "Window",
    "check_lie_relations",
    "closure_check",
    "generation_check",
    "is_hw_vector",
    "lie_identities",
    "tameness_check",
    "weight_multiplicities",
    "weyl_dim",
]


@dataclass
class Failure:
    identity: str
    member: Shift
    residual: str

    def to_json(self) -> dict:
        return {"identity": self.identity, "member": list(self.member), "residual": self.residual}


@dataclass
class Report:
    name: str
    checked_count: int = 0
    failures: list[Failure] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: "Report") -> "Report":
        self.checked_count += other.checked_count
        self.failures.extend(other.failures)
        return self

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checked_count} checks, {len(self.failures)} failures"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked_count": self.checked_count,
            "failures": [f.to_json() for f in self.failures[:50]],
            "failure_count": len(self.failures),
            "notes": self.notes,
        }


def cartan_entry(i: int, j: int) -> int:
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


Word = tuple[tuple[Fraction, tuple[Operator, ...]], ...]


def lie_identities(n: int) -> list[tuple[str, Word]]:
    """Each identity as a signed sum of operator words that must vanish."""
    e = {i: chevalley(n, "e", i) for i in range(1, n + 1)}
    f = {i: chevalley(n, "f", i) for i in range(1, n + 1)}
    h = {i: chevalley(n, "h", i) for i in range(1, n + 1)}
    one, two = Fraction(1), Fraction(2)
    out: list[tuple[str, Word]] = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i < j:
                out.append((f"[h{i},h{j}]=0", ((one, (h[i], h[j])), (-one, (h[j], h[i])))))
            w = [(one, (e[i], f[j])), (-one, (f[j], e[i]))]
            if i == j:
                w.append((-one, (h[i],)))
            out.append((f"[e{i},f{j}]={'h' + str(i) if i == j else '0'}", tuple(w)))
            a = Fraction(cartan_entry(i, j))
            out.append((f"[h{i},e{j}]={a}e{j}",
                        ((one, (h[i], e[j])), (-one, (e[j], h[i])), (-a, (e[j],)))))
            out.append((f"[h{i},f{j}]={-a}f{j}",
                        ((one, (h[i], f[j])), (-one, (f[j], h[i])), (a, (f[j],)))))
            if i == j:
                continue
            if abs(i - j) == 1:
                for name, g in (("e", e), ("f", f)):
                    out.append((f"serre({name}{i},{name}{j})",
                                ((one, (g[i], g[i], g[j])), (-two, (g[i], g[j], g[i])),
                                 (one, (g[j], g[i], g[i])))))
            elif i < j:
                for name, g in (("e", e), ("f", f)):
                    out.append((f"[{name}{i},{name}{j}]=0",
                                ((one, (g[i], g[j])), (-one, (g[j], g[i])))))
    return out


def _evaluate(M: GTModule, word: Word, z: Shift, twisted: bool, strict: bool) -> ModuleVector:
    total = ModuleVector()
    start = ModuleVector.basis(z)
    for coeff, ops in word:
        total = total + M.act(ops, start, twisted=twisted, strict=strict).scale(coeff)
    return total


class _Compiled:
    """Identities with operators replaced by small integers, plus a member-action cache.

    Operators hold Fractions, whose hashing dominates the cost of the plain
    route; the compiled route looks each (operator, member) pair up once.
    """

    def __init__(self, M: GTModule, twisted: bool, strict: bool) -> None:
        self.M, self.strict = M, strict
        self.ops: list[Operator] = []
        index: dict[Operator, int] = {}
        self.ids = []
        for name, word in lie_identities(M.n):
            cw = []
            for coeff, ops in word:
                seq = []
                for op in ops:
                    if op not in index:
                        index[op] = len(self.ops)
                        self.ops.append(M.twisted_operator(op) if twisted else op)
                    seq.append(index[op])
                cw.append((mpq(coeff), tuple(reversed(seq))))
            self.ids.append((name, tuple(cw)))
        self.cache: dict = {}

    def act(self, k: int, z: Shift) -> dict:
        key = (k, z)
        hit = self.cache.get(key)
        if hit is None:
            hit = self.M._apply_to_member(self.ops[k], z, self.strict)
            self.cache[key] = hit
        return hit

    def evaluate(self, word, z: Shift, memo: dict) -> dict:
        """Sum of ``coeff * word`` on ``z``; ``memo`` shares operator prefixes per member."""
        total: dict = {}
        for coeff, seq in word:
            vec = self._prefix(seq, z, memo)
            for zz, c in vec.items():
                total[zz] = total.get(zz, 0) + coeff * c
        return {zz: c for zz, c in total.items() if c}

    def _prefix(self, seq: tuple[int, ...], z: Shift, memo: dict) -> dict:
        hit = memo.get(seq)
        if hit is not None:
            return hit
        if not seq:
            return {z: _ONE_Q}
        vec = self._prefix(seq[:-1], z, memo)
        nxt: dict = {}
        for zz, c in vec.items():
            for z2, c2 in self.act(seq[-1], zz).items():
                nxt[z2] = nxt.get(z2, 0) + c * c2
        memo[seq] = nxt
        return nxt


def _lie_chunk(args) -> Report:
    M, members, twisted, strict = args
    rep = Report("lie relations")
    comp = _Compiled(M, twisted, strict)
    for z in members:
        memo: dict = {}
        for name, word in comp.ids:
            rep.checked_count += 1
            try:
                res = comp.evaluate(word, z, memo)
            except ClosureViolation as exc:
                rep.failures.append(Failure(f"closure in {name}", z, str(exc)))
                continue
            if res:
                rep.failures.append(Failure(name, z, repr(ModuleVector(res))))
    return rep


def check_lie_relations(M: GTModule, window: Window, *, twisted: bool = True, strict: bool = False,
                        jobs: int = 1) -> Report:
    """Brackets, Cartan and Serre relations on every window member, exact zero residuals.

    ``strict=True`` additionally routes every intermediate term through the
    closure test and reports escapes as failures.
    """
    members = M.enumerate_basis(window)
    if jobs > 1 and len(members) > 1:
        chunks = [members[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_lie_chunk, [(M, c, twisted, strict) for c in chunks]))
        rep = Report("lie relations")
        for p in parts:
            rep.merge(p)
        rep.failures.sort(key=lambda f: (f.member, f.identity))
    else:
        rep = _lie_chunk((M, members, twisted, strict))
    rep.name = f"lie relations [{M.label}]"
    rep.notes["members"] = len(members)
    return rep


def closure_check(M: GTModule, window: Window, *, twisted: bool = True) -> Report:
    """Every generator on every window member: terms leaving the basis must have coefficient 0."""
    rep = Report(f"closure [{M.label}]")
    members = M.enumerate_basis(window)
    gens = [(f"{k}{i}", chevalley(M.n, k, i)) for i in range(1, M.n + 1) for k in "ef"]
    for z in members:
        for name, op in gens:
            rep.checked_count += 1
            try:
                M.apply_operator(op, ModuleVector.basis(z), twisted=twisted, strict=True)
            except ClosureViolation as exc:
                rep.failures.append(Failure(name, z, f"escape to {list(exc.shift)} "
                                                     f"coefficient {exc.coefficient}"))
    rep.notes["members"] = len(members)
    return rep


@dataclass
class HighestWeightResult:
    is_hw: bool
    eigenvalues: tuple[Fraction, ...]
    nonzero: list[str]


def is_hw_vector(M: GTModule, z: Sequence[int], roots: Sequence[Root], *,
                 twisted: bool = True) -> HighestWeightResult:
    """Whether the root vectors of ``roots`` all kill the basis member ``z``.

    Also returns the eigenvalues of the coroots ``h_root`` for the same roots.
    """
    z = tuple(z)
    if not M.contains(z):
        raise NotInBasis(f"shift {list(z)} is not a basis member")
    x = ModuleVector.basis(z)
    bad, evs = [], []
    for a in roots:
        y = M.apply_operator(root_vector(a), x, twisted=twisted)
        if not y.is_zero():
            bad.append(str(a))
        hv = M.apply_operator(coroot(a), x, twisted=twisted)
        evs.append(hv.terms.get(z, Fraction(0)))
    return HighestWeightResult(not bad, tuple(evs), bad)


def simple_roots(n: int) -> list[Root]:
    return [Root(n, i, i + 1) for i in range(1, n + 1)]


def tameness_check(M: GTModule, window: Window) -> Report:
    """Gamma-characters of distinct window members must differ."""
    rep = Report(f"tameness [{M.label}]")
    seen: dict = {}
    for z in M.enumerate_basis(window):
        rep.checked_count += 1
        ch = M.gamma_character(z)
        if ch in seen:
            rep.failures.append(Failure("character collision", z, f"same as {list(seen[ch])}"))
        else:
            seen[ch] = z
    return rep


def _neighbours(M: GTModule, z: Shift, twisted: bool) -> list[Shift]:
    out = []
    x = ModuleVector.basis(z)
    for i in range(1, M.n + 1):
        for k in "ef":
            y = M.apply_operator(chevalley(M.n, k, i), x, twisted=twisted)
            out.extend(zz for zz in y.terms if zz != z)
    return out


def generation_check(M: GTModule, z: Sequence[int], window: Window, *, twisted: bool = True
                     ) -> Report:
    """Reachability from ``z`` (and back to ``z``) through nonzero matrix coefficients.

    On a tame module the submodule generated by a basis member is spanned by
    basis members, so support reachability is exact generation; the search is
    confined to the window, so the result is evidence only.
    """
    z = tuple(z)
    rep = Report(f"generation [{M.label}] from {list(z)}")
    members = set(M.enumerate_basis(window))
    if z not in members:
        raise NotInBasis(f"shift {list(z)} is not a window basis member")
    edges = {m: [y for y in _neighbours(M, m, twisted) if y in members] for m in sorted(members)}
    reverse: dict[Shift, list[Shift]] = {m: [] for m in members}
    for a, outs in edges.items():
        for b in outs:
            reverse[b].append(a)

    def reach(graph, start):
        seen, queue = {start}, deque([start])
        while queue:
            a = queue.popleft()
            for b in graph[a]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return seen

    fwd, bwd = reach(edges, z), reach(reverse, z)
    rep.checked_count = len(members)
    for m in sorted(members - fwd):
        rep.failures.append(Failure("not generated", m, ""))
    rep.notes.update({"members": len(members), "forward": len(fwd), "backward": len(bwd),
                      "two_sided": len(fwd & bwd)})
    return rep


def weight_multiplicities(M: GTModule, window: Window, *, twisted: bool = True) -> dict[Weight, int]:
    counts = Counter(M.weight_of(z, twisted=twisted) for z in M.enumerate_basis(window))
    return dict(sorted(counts.items(), key=lambda kv: kv[0].coeffs))


def weyl_dim(lam: Weight) -> int:
    if not lam.is_dominant_integral():
        raise NotDominantIntegral(f"{lam} is not dominant integral")
    r = rho(lam.n)
    shifted = lam + r
    num = prod(pairing(shifted, a) for a in positive_roots(lam.n))
    den = prod(pairing(r, a) for a in positive_roots(lam.n))
    value = Fraction(num) / Fraction(den)
    assert value.denominator == 1
    return int(value)


def run_suite(M: GTModule, window: Window, *, jobs: int = 1,
              extra: Callable[[GTModule], list[Report]] | None = None) -> list[Report]:
    reports = [check_lie_relations(M, window, jobs=jobs), tameness_check(M, window)]
    if extra is not None:
        reports.extend(extra(M))
    return reports
