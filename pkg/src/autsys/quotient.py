"""Homomorphisms, joins and quotients.

The quotient along a surjection ``f`` is the largest family on the target
making ``f`` a homomorphism. With ``S`` the target sets whose preimage is
autonomous, ``S`` is union closed (preimages commute with unions), every
family making ``f`` a homomorphism lies inside ``S``, and the members of
``S`` reachable from the empty set by single-element insertions inside
``S`` form a union-closed accessible family. That reachable part is
therefore the quotient, computed here without enumerating candidate
families.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import AutonomousSystem, AutsysError, bits


class MalformedMap(AutsysError):
    pass


class NotSurjective(MalformedMap):
    pass


class MalformedPartition(AutsysError):
    pass


class EmptyInput(AutsysError):
    pass


@dataclass(frozen=True)
class GroundMap:
    source: tuple[str, ...]
    target: tuple[str, ...]
    assignment: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(sorted(self.source)))
        object.__setattr__(self, "target", tuple(sorted(self.target)))
        if set(self.assignment) != set(self.source):
            raise MalformedMap("assignment must be defined on exactly the source")
        stray = set(self.assignment.values()) - set(self.target)
        if stray:
            raise MalformedMap(f"images {sorted(stray)} are not in the target")

    def is_surjective(self) -> bool:
        return set(self.assignment.values()) == set(self.target)

    def preimage_masks(self, P: AutonomousSystem) -> list[int]:
        """Mask (over P's ground) of the preimage of each target element."""
        if self.source != P.ground:
            raise MalformedMap("map source differs from the system's ground")
        tidx = {t: j for j, t in enumerate(self.target)}
        cells = [0] * len(self.target)
        for i, x in enumerate(P.ground):
            cells[tidx[self.assignment[x]]] |= 1 << i
        return cells


def _preimage(cells: Sequence[int], T: int) -> int:
    out = 0
    for j in bits(T):
        out |= cells[j]
    return out


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty cells of labels; each cell has a target label.

    A singleton cell is labelled by its element and a larger cell by its
    sorted elements joined with ``+`` unless labels are given.
    """

    cells: tuple[tuple[str, ...], ...]
    names: tuple[str, ...]

    @classmethod
    def of(cls, cells: Iterable[Iterable[str]], names: Iterable[str] | None = None) -> "Partition":
        cells = [tuple(sorted(c)) for c in cells]
        if names is None:
            names = ["+".join(c) for c in cells]
        names = list(names)
        if len(names) != len(cells):
            raise MalformedPartition("one label per cell is required")
        if len(set(names)) != len(names):
            raise MalformedPartition(f"cell labels must be distinct: {names}")
        pairs = sorted(zip(cells, names))
        return cls(tuple(c for c, _ in pairs), tuple(nm for _, nm in pairs))

    @classmethod
    def discrete(cls, ground: Iterable[str]) -> "Partition":
        return cls.of([(x,) for x in ground])

    def check(self, ground: Sequence[str]) -> None:
        seen: set[str] = set()
        for c in self.cells:
            if not c:
                raise MalformedPartition("empty cell")
            for x in c:
                if x in seen:
                    raise MalformedPartition(f"{x!r} appears in two cells")
                seen.add(x)
        if seen != set(ground):
            missing = sorted(set(ground) - seen)
            extra = sorted(seen - set(ground))
            raise MalformedPartition(f"cells do not cover the ground (missing {missing}, unknown {extra})")

    def to_map(self, ground: Sequence[str]) -> GroundMap:
        self.check(ground)
        assignment = {x: nm for c, nm in zip(self.cells, self.names) for x in c}
        return GroundMap(tuple(ground), self.names, assignment)


def is_homomorphism(P: AutonomousSystem, Q: AutonomousSystem, f: GroundMap) -> bool:
    """Every autonomous set of Q pulls back to an autonomous set of P."""
    if f.target != Q.ground:
        raise MalformedMap("map target differs from Q's ground")
    cells = f.preimage_masks(P)
    return all(_preimage(cells, T) in P for T in Q.family)


def union_closure(family: Iterable[int]) -> set[int]:
    closed = set(family)
    frontier = list(closed)
    while frontier:
        a = frontier.pop()
        for b in list(closed):
            u = a | b
            if u not in closed:
                closed.add(u)
                frontier.append(u)
    return closed


def join(systems: Sequence[AutonomousSystem]) -> AutonomousSystem:
    """Least upper bound: union closure of all families over the union ground."""
    systems = list(systems)
    if not systems:
        raise EmptyInput("join of no systems")
    ground = tuple(sorted(set().union(*(P.ground for P in systems))))
    idx = {x: i for i, x in enumerate(ground)}
    family = {0}
    for P in systems:
        lift = [1 << idx[x] for x in P.ground]
        for m in P.family:
            family.add(sum(lift[i] for i in bits(m)))
    return AutonomousSystem(ground, tuple(union_closure(family)))


def quotient_by_map(P: AutonomousSystem, f: GroundMap) -> AutonomousSystem:
    if not f.is_surjective():
        raise NotSurjective("quotient maps must be surjective")
    cells = f.preimage_masks(P)
    k = len(f.target)
    S = {T for T in range(1 << k) if _preimage(cells, T) in P}
    reached = {0} if 0 in S else set()
    frontier = list(reached)
    while frontier:
        T = frontier.pop()
        for j in range(k):
            U = T | (1 << j)
            if U != T and U in S and U not in reached:
                reached.add(U)
                frontier.append(U)
    return AutonomousSystem(f.target, tuple(reached))


def quotient_by_partition(P: AutonomousSystem, part: Partition) -> AutonomousSystem:
    return quotient_by_map(P, part.to_map(P.ground))


def is_homomorphism_induced(P: AutonomousSystem, part: Partition) -> bool:
    """The cell collapse maps onto a system with a nonempty autonomous set."""
    return len(quotient_by_partition(P, part).family) > 1


def set_partitions(items: Sequence, min_blocks: int = 0, max_blocks: int | None = None):
    """Yield every set partition of ``items`` as a list of lists.

    Restricted-growth order: the first item always opens block 0.
    """
    items = list(items)
    n = len(items)
    hi = n if max_blocks is None else max_blocks

    def grow(i: int, blocks: list[list]):
        remaining = n - i
        if len(blocks) + remaining < min_blocks:
            return
        if i == n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(items[i])
            yield from grow(i + 1, blocks)
            b.pop()
        if len(blocks) < hi:
            blocks.append([items[i]])
            yield from grow(i + 1, blocks)
            blocks.pop()

    yield from grow(0, [])
