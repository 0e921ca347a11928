"""Admissible levels and admissible highest weights in type A.

For a level ``k`` with ``k + n + 1 = p/q`` (lowest terms, ``p >= n + 1``):

* ``Pr_{k,Z}`` are the dominant integral weights with ``<lam, theta> <= p - n - 1``;
* ``Lambda_k(p)`` collects ``mu - (p/q) eta`` where ``mu`` is in ``Pr_{k,Z}``
  and ``eta = sum a_i omega_i`` has ``a_i >= 1`` exactly off Sigma and
  ``sum a_i <= q - 1``;
* the admissible weights attached to a nilpotent orbit are the dot-translates
  ``w^{-1} . Lambda_k(p)``, one parabolic per ``~+`` class and one ``w`` per
  W_+^p-orbit on W^p.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, gcd

from .errors import InternalMismatch, NotAdmissible, NotAdmissibleWeight
from .orbits import (
    Partition,
    dominance_leq,
    orbit_q,
    parabolic_classes_for_orbit,
    partitions_of,
    richardson,
)
from .rootsys import Root, Weight, check_rank, dot_action, pairing, positive_roots
from .weylgrp import ParabolicSet, WeylElt, orbit_representatives


@dataclass(frozen=True)
class AdmissibleLevel:
    n: int
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p <= 0 or self.q <= 0:
            raise NotAdmissible("p and q must be positive")
        if gcd(self.p, self.q) != 1:
            raise NotAdmissible(f"p={self.p} and q={self.q} are not coprime")
        if self.p < self.n + 1:
            raise NotAdmissible(f"p={self.p} is smaller than n+1={self.n + 1}")

    @property
    def k(self) -> Fraction:
        return Fraction(self.p, self.q) - (self.n + 1)

    @property
    def pq(self) -> Fraction:
        return Fraction(self.p, self.q)


def admissible_number(n: int, k) -> AdmissibleLevel:
    k = Fraction(k)
    total = k + n + 1
    if total <= 0:
        raise NotAdmissible(f"k + n + 1 = {total} is not positive")
    p, q = total.numerator, total.denominator
    if p < n + 1:
        raise NotAdmissible(f"p = {p} < n + 1 = {n + 1}")
    return AdmissibleLevel(n, p, q)


def _compositions_bounded(n: int, bound: int, minimums: list[int]):
    """Integer vectors a with a_i >= minimums[i] and sum(a) <= bound, in lexicographic order."""
    def rec(i: int, remaining: int):
        if i == n:
            yield ()
            return
        lo = minimums[i]
        for v in range(lo, remaining + 1):
            for rest in rec(i + 1, remaining - v):
                yield (v,) + rest
    if sum(minimums) > bound:
        return
    yield from rec(0, bound)


def enumerate_prkz(L: AdmissibleLevel) -> list[Weight]:
    bound = L.p - L.n - 1
    return [Weight(tuple(Fraction(c) for c in a))
            for a in _compositions_bounded(L.n, bound, [0] * L.n)]


def prkz_count(L: AdmissibleLevel) -> int:
    return comb(L.p - 1, L.n)


def eta_vectors(L: AdmissibleLevel, sig: ParabolicSet) -> list[tuple[int, ...]]:
    """Coefficient vectors a of eta: a_i >= 1 off Sigma, a_i = 0 on Sigma, sum <= q-1."""
    off = sorted(sig.complement)
    out = []
    for a in _compositions_bounded(len(off), L.q - 1, [1] * len(off)):
        full = [0] * L.n
        for idx, v in zip(off, a):
            full[idx - 1] = v
        out.append(tuple(full))
    return out


def enumerate_lambda(L: AdmissibleLevel, sig: ParabolicSet) -> list[Weight]:
    if sig.n != L.n:
        raise ValueError("parabolic and level have different ranks")
    pq = L.pq
    etas = eta_vectors(L, sig)
    out = []
    for mu in enumerate_prkz(L):
        for a in etas:
            out.append(Weight(tuple(m - pq * x for m, x in zip(mu.coeffs, a))))
    return out


@dataclass(frozen=True)
class Piece:
    """One block ``w^{-1} . Lambda_k(p)`` of the orbit decomposition."""

    sigma: ParabolicSet
    coset_rep: WeylElt
    weights: tuple[Weight, ...]


def orbit_pieces(L: AdmissibleLevel, orbit: Partition) -> list[Piece]:
    check_rank(L.n)
    if orbit.total != L.n + 1:
        raise ValueError(f"orbit {orbit} is not a partition of {L.n + 1}")
    pieces = []
    for sig in parabolic_classes_for_orbit(orbit):
        lam = enumerate_lambda(L, sig)
        if not lam:
            continue
        for w in orbit_representatives(sig):
            winv = w.inverse()
            pieces.append(Piece(sig, w, tuple(dot_action(winv, mu) for mu in lam)))
    return pieces


def _assert_disjoint(pieces: list[Piece]) -> None:
    seen: dict[Weight, Piece] = {}
    for piece in pieces:
        for lam in piece.weights:
            if lam in seen:
                other = seen[lam]
                raise InternalMismatch(
                    f"weight {lam} lies in two pieces: ({other.sigma}, {other.coset_rep}) "
                    f"and ({piece.sigma}, {piece.coset_rep})")
            seen[lam] = piece


def weight_order_key(lam: Weight) -> tuple[Fraction, ...]:
    return lam.coeffs


def enumerate_orbit_weights(L: AdmissibleLevel, orbit: Partition) -> list[Weight]:
    """All admissible weights attached to the orbit, pairwise disjointness asserted."""
    pieces = orbit_pieces(L, orbit)
    _assert_disjoint(pieces)
    return sorted((lam for piece in pieces for lam in piece.weights), key=weight_order_key)


def _orbit_job(args: tuple[AdmissibleLevel, Partition]) -> tuple[Partition, list[Weight]]:
    L, orbit = args
    return orbit, enumerate_orbit_weights(L, orbit)


def enumerate_all(L: AdmissibleLevel, jobs: int = 1) -> dict[Partition, list[Weight]]:
    """Weights for every orbit of sl_{n+1}; disjointness across orbits asserted too."""
    orbits = partitions_of(L.n + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(_orbit_job, [(L, o) for o in orbits]))
    else:
        results = dict(_orbit_job((L, o)) for o in orbits)
    seen: set[Weight] = set()
    for orbit in orbits:
        for lam in results[orbit]:
            if lam in seen:
                raise InternalMismatch(f"weight {lam} attached to two orbits")
            seen.add(lam)
    return {o: results[o] for o in orbits}


@dataclass(frozen=True)
class Classification:
    orbit: Partition
    parabolic: ParabolicSet
    coset_rep: WeylElt
    base: Weight

    def to_json(self) -> dict:
        return {
            "orbit": list(self.orbit.parts),
            "sigma": list(self.parabolic.sorted_tuple()),
            "coset_word": list(self.coset_rep.word),
            "base": self.base.to_json(),
        }


def decompose_lambda_member(L: AdmissibleLevel, mu: Weight) -> tuple[Weight, tuple[int, ...]] | None:
    """Write ``mu = nu - (p/q) eta`` with nu integral, ``0 <= a_i <= q-1``; None if impossible."""
    pq = L.pq
    nu, a = [], []
    for c in mu.coeffs:
        if (c * L.q).denominator != 1:
            return None
        # c = m - (p/q) x  with 0 <= x < q  forces  p x = -q c (mod q).
        x = (-int(c * L.q) * pow(L.p, -1, L.q)) % L.q if L.q > 1 else 0
        m = c + pq * x
        if m.denominator != 1:
            return None
        nu.append(m)
        a.append(x)
    return Weight(tuple(nu)), tuple(a)


def in_lambda(L: AdmissibleLevel, sig: ParabolicSet, mu: Weight) -> bool:
    dec = decompose_lambda_member(L, mu)
    if dec is None:
        return False
    nu, a = dec
    if not nu.is_dominant_integral() or sum(nu.coeffs) > L.p - L.n - 1:
        return False
    if sum(a) > L.q - 1:
        return False
    return all((a[i - 1] >= 1) == (i not in sig.sigma) for i in range(1, L.n + 1))


def classify_weight(L: AdmissibleLevel, lam: Weight) -> Classification:
    if lam.n != L.n:
        raise NotAdmissibleWeight("rank mismatch")
    check_rank(L.n)
    shifted = lam + Weight((Fraction(1),) * lam.n)
    for a in positive_roots(lam.n):
        c = pairing(shifted, a)
        if c.denominator == 1 and c <= 0:
            raise NotAdmissibleWeight(f"<lam + rho, {a}> = {c} is a non-positive integer")
    for orbit in partitions_of(L.n + 1):
        for sig in parabolic_classes_for_orbit(orbit):
            for w in orbit_representatives(sig):
                mu = dot_action(w, lam)
                if in_lambda(L, sig, mu):
                    return Classification(orbit, sig, w, mu)
    raise NotAdmissibleWeight(f"{lam} is not an admissible weight at level p/q = {L.p}/{L.q}")


def t_eta_condition(y: WeylElt, eta: tuple[int, ...] | Weight, q: int) -> bool:
    """The finite predicate on (y, eta): bounds on (eta, alpha) split by the sign of y(alpha)."""
    n = y.n
    eta_w = eta if isinstance(eta, Weight) else Weight(tuple(Fraction(x) for x in eta))
    for a in positive_roots(n):
        val = pairing(eta_w, a)
        if y.act_root(a).is_positive:
            if not 0 <= val <= q - 1:
                return False
        elif not 1 <= val <= q:
            return False
    return True


def casimir_xi(lam: Weight, gamma: Root) -> Fraction:
    c = pairing(lam, gamma)
    return c * (c + 2) / 2


def orbit_is_reachable(L: AdmissibleLevel, orbit: Partition) -> bool:
    """Non-emptiness criterion: the orbit lies below ``O_q`` in dominance order."""
    return dominance_leq(orbit, orbit_q(L.n, L.q))


def richardson_of(sig: ParabolicSet) -> Partition:
    return richardson(sig)


def all_orbit_weights_flat(L: AdmissibleLevel) -> list[Weight]:
    out = []
    for ws in enumerate_all(L).values():
        out.extend(ws)
    return sorted(out, key=weight_order_key)


def candidate_weights(L: AdmissibleLevel):
    """Product grid used by brute-force oracles: coordinates ``m - (p/q) x``."""
    pq = L.pq
    span = range(-(L.p + 2 * L.n + 2), L.p + 1)
    for m in product(span, repeat=L.n):
        for x in product(range(L.q), repeat=L.n):
            yield Weight(tuple(Fraction(mi) - pq * xi for mi, xi in zip(m, x)))
