"""Partition calculus for nilpotent orbits of sl_{n+1}.

Orbits are labelled by partitions of n+1 (Jordan types).  Standard parabolics
are described by their Levi blocks; the Richardson orbit of the parabolic
with block partition beta is the orbit of beta transposed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import networkx as nx
from sympy.utilities.iterables import partitions as _sympy_partitions

from .rootsys import check_rank
from .weylgrp import ParabolicSet, rotate_sigma


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive, got {self.parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing, got {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"4,2"`` or ``"[2,2,1,1]"``."""
        body = text.strip().strip("[]")
        return cls(tuple(int(x) for x in body.replace(" ", "").split(",") if x))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"


def partitions_of(m: int) -> list[Partition]:
    """All partitions of m, in reverse lexicographic order (largest first)."""
    out = []
    for d in _sympy_partitions(m):
        parts: list[int] = []
        for k in sorted(d, reverse=True):
            parts.extend([k] * d[k])
        out.append(Partition(tuple(parts)))
    out.sort(reverse=True)
    return out


def transpose(lam: Partition) -> Partition:
    p = lam.parts
    return Partition(tuple(sum(1 for x in p if x > i) for i in range(p[0])))


def orbit_dim(lam: Partition) -> int:
    m = lam.total
    return m * m - sum(c * c for c in transpose(lam).parts)


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """``lam <= mu`` in dominance order (partial sums of lam never exceed mu's)."""
    if lam.total != mu.total:
        raise ValueError("dominance compares partitions of the same integer")
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam.parts[i] if i < len(lam) else 0
        b += mu.parts[i] if i < len(mu) else 0
        if a > b:
            return False
    return True


def dominance_hasse(n: int) -> nx.DiGraph:
    """Cover relations of the dominance order on partitions of n+1 (edges go up)."""
    parts = partitions_of(n + 1)
    g = nx.DiGraph()
    for p in parts:
        g.add_node(p, dim=orbit_dim(p))
    for a in parts:
        for b in parts:
            if a != b and dominance_leq(a, b):
                g.add_edge(a, b)
    if g.number_of_edges():
        reduced = nx.transitive_reduction(g)
        reduced.add_nodes_from(g.nodes(data=True))
        g = reduced
    return g


def orbit_hasse_dot(n: int) -> str:
    g = dominance_hasse(n)
    nodes = sorted(g.nodes)
    lines = [f'digraph "orbits_sl{n + 1}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for p in nodes:
        lines.append(f'  "{p}" [label="O{p}\\ndim {orbit_dim(p)}"];')
    for a, b in sorted(g.edges):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def block_partition(sig: ParabolicSet) -> Partition:
    return Partition(tuple(sorted(sig.blocks(), reverse=True)))


def richardson(sig: ParabolicSet) -> Partition:
    return transpose(block_partition(sig))


def parabolic_of_blocks(n: int, blocks: tuple[int, ...] | list[int]) -> ParabolicSet:
    """The standard parabolic whose Levi blocks are ``blocks`` in the given order."""
    if sum(blocks) != n + 1:
        raise ValueError(f"blocks {blocks} do not sum to {n + 1}")
    sigma = set()
    start = 1
    for size in blocks:
        sigma.update(range(start, start + size - 1))
        start += size
    return ParabolicSet(n, frozenset(sigma))


def parabolic_of_partition(lam: Partition) -> ParabolicSet:
    return parabolic_of_blocks(lam.total - 1, lam.parts)


def orbit_q(n: int, q: int) -> Partition:
    """``[q^r, s]`` with ``n + 1 = q r + s`` and ``0 <= s < q`` (s dropped when 0)."""
    if q < 1:
        raise ValueError("q must be positive")
    q = min(q, n + 1)
    r, s = divmod(n + 1, q)
    return Partition(tuple([q] * r + ([s] if s else [])))


def subsets(n: int) -> Iterator[ParabolicSet]:
    nodes = range(1, n + 1)
    for k in range(n + 1):
        for c in combinations(nodes, k):
            yield ParabolicSet(n, frozenset(c))


def equivalence_classes(sig: ParabolicSet) -> tuple[list[ParabolicSet], list[list[ParabolicSet]]]:
    """The ``~`` class of Sigma and its splitting into ``~+`` classes.

    ``~`` compares block partitions; ``~+`` is generated by the rotations
    ``w_j`` of the extended Dynkin diagram.  Members are listed in
    lexicographic order of their Dynkin strings (``o`` before ``x``).
    """
    check_rank(sig.n)
    target = block_partition(sig)
    cls = [s for s in subsets(sig.n) if block_partition(s) == target]
    cls.sort(key=lambda s: s.dynkin())
    remaining = list(cls)
    plus: list[list[ParabolicSet]] = []
    while remaining:
        seed = remaining[0]
        orbit = {seed}
        for j in range(sig.n + 1):
            image = rotate_sigma(seed, j)
            if image is not None:
                orbit.add(image)
        members = [s for s in cls if s in orbit]
        plus.append(members)
        remaining = [s for s in remaining if s not in orbit]
    return cls, plus


def canonical_member(members: list[ParabolicSet]) -> ParabolicSet:
    """Representative of a ``~+`` class: the member with lexicographically smallest blocks."""
    return min(members, key=lambda s: (s.blocks(), s.sorted_tuple()))


def parabolic_classes_for_orbit(orbit: Partition) -> list[ParabolicSet]:
    """One canonical parabolic per ``~+`` class of ``[p_{orbit^t}]``."""
    sig = parabolic_of_partition(transpose(orbit))
    _, plus = equivalence_classes(sig)
    return [canonical_member(m) for m in plus]
