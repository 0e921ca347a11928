"""Exact root-system data for sl_{n+1}.

Weights live in fundamental-weight (omega) coordinates.  The epsilon picture
is a derived view: ``omega_i = eps_1 + ... + eps_i - i/(n+1) (eps_1 + ... + eps_{n+1})``,
so every weight has epsilon coordinates summing to zero.

Roots are index pairs ``(i, j)`` standing for ``eps_i - eps_j`` (1-based).
All roots have squared length 2, so coroots and roots are identified and
``<lam, (eps_i - eps_j)^vee>`` is just the difference of epsilon entries.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import RankMismatch, RankTooLarge

Q = Fraction

DEFAULT_RANK_CAP = 8


def rank_cap() -> int:
    """The largest rank accepted by enumerating operations (env ``AGT_RANK_CAP``)."""
    raw = os.environ.get("AGT_RANK_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_RANK_CAP
    return int(raw)


def check_rank(n: int) -> None:
    if n < 1:
        raise ValueError(f"rank must be positive, got {n}")
    cap = rank_cap()
    if n > cap:
        raise RankTooLarge(f"rank {n} exceeds the configured cap {cap} (set AGT_RANK_CAP)")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"num/den"`` (or an integer literal) into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text.strip())


def format_rational(x: Fraction | int) -> str:
    return str(as_fraction(x))


def as_fraction(x) -> Fraction:
    """A plain Fraction with int parts (gmpy2 rationals would leak mpz parts otherwise)."""
    if isinstance(x, Fraction) and type(x.numerator) is int:
        return x
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    return Fraction(x)


@dataclass(frozen=True)
class Weight:
    """A weight ``sum_i coeffs[i-1] * omega_i`` of sl_{n+1}."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))
        if len(self.coeffs) < 1:
            raise ValueError("a weight needs at least one coordinate")

    @classmethod
    def of(cls, *values) -> "Weight":
        return cls(tuple(parse_rational(v) for v in values))

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((Fraction(0),) * n)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        """1-based access: ``lam[i]`` is the omega_i coefficient."""
        return self.coeffs[i - 1]

    def _check(self, other: "Weight") -> None:
        if other.n != self.n:
            raise RankMismatch(f"rank {self.n} vs rank {other.n}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coeffs))

    def scale(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(tuple(c * a for a in self.coeffs))

    def __rmul__(self, c) -> "Weight":
        return self.scale(c)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_dominant_integral(self) -> bool:
        return self.is_integral() and all(c >= 0 for c in self.coeffs)

    def to_eps(self) -> tuple[Fraction, ...]:
        return weight_to_eps(self)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(c) for c in self.coeffs) + ")"


def omega(n: int, i: int) -> Weight:
    if not 1 <= i <= n:
        raise ValueError(f"omega index {i} out of range for rank {n}")
    return Weight(tuple(Fraction(int(k == i)) for k in range(1, n + 1)))


def rho(n: int) -> Weight:
    return Weight((Fraction(1),) * n)


def weight_to_eps(lam: Weight) -> tuple[Fraction, ...]:
    """Epsilon coordinates (trace zero) of a weight."""
    n = lam.n
    shift = sum((j * lam.coeffs[j - 1] for j in range(1, n + 1)), Fraction(0)) / (n + 1)
    tails = [Fraction(0)] * (n + 2)
    for i in range(n, 0, -1):
        tails[i] = tails[i + 1] + lam.coeffs[i - 1]
    return tuple(tails[i] - shift for i in range(1, n + 2))


def eps_to_weight(x: Sequence[Fraction]) -> Weight:
    """Inverse of :func:`weight_to_eps`; any trace is accepted (it is projected away)."""
    return Weight(tuple(Fraction(x[i]) - Fraction(x[i + 1]) for i in range(len(x) - 1)))


@dataclass(frozen=True, order=True)
class Root:
    """The root ``eps_i - eps_j`` of sl_{n+1} (1-based, ``i != j``)."""

    n: int
    i: int
    j: int

    def __post_init__(self) -> None:
        if self.i == self.j:
            raise ValueError("a root needs i != j")
        if not (1 <= self.i <= self.n + 1 and 1 <= self.j <= self.n + 1):
            raise ValueError(f"root indices ({self.i}, {self.j}) out of range for rank {self.n}")

    @property
    def is_positive(self) -> bool:
        return self.i < self.j

    def __neg__(self) -> "Root":
        return Root(self.n, self.j, self.i)

    @property
    def height(self) -> int:
        return self.j - self.i

    def simple_index(self) -> int | None:
        """``k`` when this root is the simple root alpha_k, else None."""
        return self.i if self.j == self.i + 1 else None

    def __str__(self) -> str:
        return f"e{self.i}-e{self.j}"


def simple_root(n: int, k: int) -> Root:
    return Root(n, k, k + 1)


def alpha(n: int, i: int, j: int) -> Root:
    """``alpha_{i,j} = alpha_i + ... + alpha_j`` (so ``alpha_{i,i}`` is simple)."""
    return Root(n, i, j + 1)


def theta(n: int) -> Root:
    return Root(n, 1, n + 1)


def positive_roots(n: int) -> list[Root]:
    return [Root(n, i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2)]


def all_roots(n: int) -> list[Root]:
    pos = positive_roots(n)
    return pos + [-a for a in pos]


def pairing(lam: Weight, a: Root) -> Fraction:
    """``<lam, a^vee>``: the omega-coefficients summed over the root's support."""
    if lam.n != a.n:
        raise RankMismatch(f"weight of rank {lam.n} paired with root of rank {a.n}")
    lo, hi = (a.i, a.j) if a.i < a.j else (a.j, a.i)
    s = sum(lam.coeffs[lo - 1:hi - 1], Fraction(0))
    return s if a.i < a.j else -s


# --- Weyl group actions on weights -------------------------------------------
#
# A permutation ``perm`` (0-based tuple) acts by eps_i -> eps_{perm[i]}.  The
# flip sigma acts by eps_i -> -eps_{n+2-i}, i.e. omega_i -> omega_{n+1-i}.


def permute_eps(perm: Sequence[int], x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * len(x)
    for i, xi in enumerate(x):
        out[perm[i]] = xi
    return tuple(out)


def _perm_of(w) -> tuple[int, ...]:
    perm = getattr(w, "perm", w)
    return tuple(perm)


def weyl_act(w, lam: Weight) -> Weight:
    """Linear action of a Weyl group element (anything with a 0-based ``perm``)."""
    perm = _perm_of(w)
    if len(perm) != lam.n + 1:
        raise RankMismatch(f"Weyl element of rank {len(perm) - 1} acting on rank {lam.n}")
    return eps_to_weight(permute_eps(perm, weight_to_eps(lam)))


def dot_action(w, lam: Weight) -> Weight:
    """``w . lam = w(lam + rho) - rho``."""
    r = rho(lam.n)
    return weyl_act(w, lam + r) - r


def act_weight(w, lam: Weight) -> Weight:
    """Action of an element of the extended group (``flip`` then ``perm`` part).

    ``w`` is a :class:`agt.weylgrp.WbarElt` (or a plain Weyl element, treated
    as having no flip).  The element is ``sigma^flip o perm``.
    """
    out = weyl_act(w, lam)
    if getattr(w, "flip", False):
        out = Weight(tuple(reversed(out.coeffs)))
    return out


def act_root(w, a: Root) -> Root:
    perm = _perm_of(w)
    if len(perm) != a.n + 1:
        raise RankMismatch(f"Weyl element of rank {len(perm) - 1} acting on a root of rank {a.n}")
    i, j = perm[a.i - 1] + 1, perm[a.j - 1] + 1
    if getattr(w, "flip", False):
        m = a.n + 2
        i, j = m - j, m - i
    return Root(a.n, i, j)


def integral_root_system(lam: Weight) -> tuple[list[Root], bool]:
    """Positive roots with integral ``<lam + rho, a^vee>``.

    The boolean reports whether this set is the positive system of the
    parabolic subsystem spanned by the simple roots it contains.
    """
    n = lam.n
    shifted = lam + rho(n)
    found = [a for a in positive_roots(n) if pairing(shifted, a).denominator == 1]
    simple = {a.i for a in found if a.j == a.i + 1}
    generated = [a for a in positive_roots(n) if all(k in simple for k in range(a.i, a.j))]
    return found, set(found) == set(generated)


def is_regular_dominant(lam: Weight) -> bool:
    """True unless some ``<lam + rho, a^vee>`` (a > 0) is a non-positive integer."""
    shifted = lam + rho(lam.n)
    for a in positive_roots(lam.n):
        c = pairing(shifted, a)
        if c.denominator == 1 and c <= 0:
            return False
    return True



def root_to_weight(a: Root) -> Weight:
    """The root as a weight: its omega-coordinates are the simple-coroot pairings."""
    out = []
    for k in range(1, a.n + 1):
        out.append(Fraction(int(a.i == k) - int(a.i == k + 1) - int(a.j == k) + int(a.j == k + 1)))
    return Weight(tuple(out))
