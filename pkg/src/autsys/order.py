"""Canonical orders and the bridge between partial orders and systems."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Union

from .core import (
    AutonomousSystem,
    AutsysError,
    ElementOutside,
    NotAutonomous,
    Subset,
    bits,
    normalize,
)


class TooLarge(AutsysError):
    pass


class NotAPartialOrder(AutsysError):
    pass


@dataclass(frozen=True)
class CanonicalOrder:
    """``x <= y`` in context ``carrier``: every member inside it holding y holds x.

    ``below[i]`` is the mask of elements ``<=`` element ``i`` (zero for
    elements outside the carrier).
    """

    system: AutonomousSystem
    carrier: int
    below: tuple[int, ...]

    def leq(self, x, y) -> bool:
        i, j = self.system.index(x), self.system.index(y)
        return bool(self.carrier >> j & 1) and bool(self.below[j] >> i & 1)

    def lt(self, x, y) -> bool:
        return self.system.index(x) != self.system.index(y) and self.leq(x, y)

    @property
    def pairs(self) -> frozenset[tuple[str, str]]:
        g = self.system.ground
        return frozenset((g[i], g[j]) for j in bits(self.carrier) for i in bits(self.below[j]))

    def strict_pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset((x, y) for x, y in self.pairs if x != y)

    def covers(self) -> list[tuple[str, str]]:
        """Covering pairs (x, y): x < y with nothing strictly between."""
        g = self.system.ground
        out = []
        for j in bits(self.carrier):
            strict = self.below[j] & ~(1 << j)
            for i in bits(strict):
                between = strict & ~(1 << i)
                if not any(self.below[k] >> i & 1 for k in bits(between)):
                    out.append((g[i], g[j]))
        return out

    def is_downward_closed(self, S: int) -> bool:
        return all(not self.below[j] & ~S for j in bits(S))


def canonical_order(P: AutonomousSystem, A: Subset) -> CanonicalOrder:
    A = P.mask(A)
    if A not in P:
        raise NotAutonomous(f"{P.labels(A)} is not autonomous")
    below = [0] * P.n
    inside = P.subsets_of(A)
    for j in bits(A):
        need = A
        for m in inside:
            if m >> j & 1:
                need &= m
        below[j] = need
    return CanonicalOrder(P, A, tuple(below))


def min_aut_containing(P: AutonomousSystem, A: Subset, x: Union[str, int]) -> int:
    """Minimal member inside ``A`` containing ``x``; least mask on ties."""
    A = P.mask(A)
    if A not in P:
        raise NotAutonomous(f"{P.labels(A)} is not autonomous")
    i = P.index(x)
    if not A >> i & 1:
        raise ElementOutside(f"{P.ground[i]!r} is not in {P.labels(A)}")
    cands = [m for m in P.subsets_of(A) if m >> i & 1]
    minimal = [m for m in cands if not any(c != m and not c & ~m for c in cands)]
    return min(minimal)


@dataclass(frozen=True)
class PosetCheck:
    ok: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def nonintersecting_pairs(P: AutonomousSystem) -> Iterable[tuple[int, int]]:
    members = P.members
    for a, b in itertools.combinations(P.family, 2):
        if a & b not in members:
            yield a, b


def is_poset(P: AutonomousSystem) -> PosetCheck:
    """Pairwise intersection closure, with the first failing pair as witness."""
    for pair in nonintersecting_pairs(P):
        return PosetCheck(False, pair)
    return PosetCheck(True)


@dataclass(frozen=True)
class PartialOrderRelation:
    carrier: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(sorted(self.carrier)))
        object.__setattr__(self, "pairs", frozenset(self.pairs))

    @classmethod
    def from_pairs(cls, carrier: Iterable[str], less: Iterable[tuple[str, str]]) -> "PartialOrderRelation":
        """Reflexive-transitive closure of ``less``; raises if it is not antisymmetric."""
        carrier = tuple(sorted(set(carrier)))
        idx = {x: i for i, x in enumerate(carrier)}
        n = len(carrier)
        reach = [[i == j for j in range(n)] for i in range(n)]
        for x, y in less:
            if x not in idx or y not in idx:
                raise NotAPartialOrder(f"pair ({x!r}, {y!r}) leaves the carrier")
            reach[idx[x]][idx[y]] = True
        for k in range(n):
            for i in range(n):
                if reach[i][k]:
                    for j in range(n):
                        if reach[k][j]:
                            reach[i][j] = True
        for i, j in itertools.combinations(range(n), 2):
            if reach[i][j] and reach[j][i]:
                raise NotAPartialOrder(f"{carrier[i]!r} and {carrier[j]!r} form a cycle")
        pairs = frozenset((carrier[i], carrier[j]) for i in range(n) for j in range(n) if reach[i][j])
        return cls(carrier, pairs)

    def leq(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs

    def strict_pairs(self) -> list[tuple[str, str]]:
        return sorted((x, y) for x, y in self.pairs if x != y)

    def restrict(self, subset: Iterable[str]) -> "PartialOrderRelation":
        keep = set(subset)
        return PartialOrderRelation(
            tuple(sorted(keep)), frozenset((x, y) for x, y in self.pairs if x in keep and y in keep)
        )


def to_poset(P: AutonomousSystem) -> PartialOrderRelation | None:
    """The order whose down-sets are exactly the family, if there is one.

    The system is normalized first.
    """
    P = normalize(P)
    if not is_poset(P):
        return None
    g = P.ground
    pairs = set()
    for j in range(P.n):
        need = P.full
        for m in P.family:
            if m >> j & 1:
                need &= m
        pairs.update((g[i], g[j]) for i in bits(need))
    rel = PartialOrderRelation(g, frozenset(pairs))
    assert from_poset(rel).family == P.family
    return rel


MAX_POSET_SIZE = 16


def from_poset(R: PartialOrderRelation, max_size: int = MAX_POSET_SIZE) -> AutonomousSystem:
    """System whose autonomous sets are the down-sets of ``R``."""
    n = len(R.carrier)
    if n > max_size:
        raise TooLarge(f"carrier of size {n} exceeds bound {max_size}")
    idx = {x: i for i, x in enumerate(R.carrier)}
    below = [0] * n
    for x, y in R.pairs:
        below[idx[y]] |= 1 << idx[x]
    family = []
    for S in range(1 << n):
        if all(not below[j] & ~S for j in bits(S)):
            family.append(S)
    return AutonomousSystem(R.carrier, tuple(family))
