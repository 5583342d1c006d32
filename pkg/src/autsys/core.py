"""Finite autonomous systems (antimatroids given by their feasible sets).

A system is a sorted tuple of element labels plus a family of subsets of
that ground. Subsets are stored as integer bit-masks: bit ``i`` stands for
``ground[i]``. Every operation in the package takes and returns masks,
and :meth:`AutonomousSystem.mask` / :meth:`AutonomousSystem.labels`
convert to and from label collections.

For a finite family closed under pairwise union, the order property is
equivalent to accessibility (every nonempty member has an element whose
removal leaves a member), so that is what :func:`validate` checks.
Strong aut descendability holds trivially for finite systems: any chain
of finitely many sets contains its own intersection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

Subset = Union[int, Iterable[str]]


class AutsysError(Exception):
    pass


class MalformedInput(AutsysError):
    pass


class NotAutonomous(AutsysError):
    pass


class ElementOutside(AutsysError):
    pass


class InvalidSystem(AutsysError):
    def __init__(self, report: "ValidationReport"):
        super().__init__(f"not an autonomous system: {report.summary()}")
        self.report = report


def bits(mask: int) -> Iterable[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def compress(mask: int, keep: int) -> int:
    """Re-index ``mask`` onto the positions of ``keep``, packed from bit 0."""
    out = 0
    for pos, i in enumerate(bits(keep)):
        if mask >> i & 1:
            out |= 1 << pos
    return out


@dataclass(frozen=True)
class AutonomousSystem:
    """A ground set of labels with its family of autonomous sets.

    ``ground`` must be sorted and duplicate free. ``family`` is normalised
    to a sorted duplicate-free tuple of masks. Axioms are not checked here;
    use :meth:`from_sets` or :func:`validate` for untrusted input.
    """

    ground: tuple[str, ...]
    family: tuple[int, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        ground = tuple(self.ground)
        if list(ground) != sorted(set(ground)):
            raise MalformedInput(f"ground must be sorted and distinct: {ground!r}")
        full = (1 << len(ground)) - 1
        family = tuple(sorted(set(self.family)))
        for m in family:
            if m < 0 or m & ~full:
                raise MalformedInput(f"family member {m:#b} exceeds the ground")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(ground)})

    @classmethod
    def from_sets(cls, ground: Iterable[str], sets: Iterable[Iterable[str]]) -> "AutonomousSystem":
        """Build and validate a system from label collections.

        The empty set is always added. Raises :class:`InvalidSystem` when the
        axioms fail and :class:`MalformedInput` on unknown labels.
        """
        ground = tuple(ground)
        report = validate(ground, list(sets) + [()])
        if report:
            raise InvalidSystem(report)
        return cls(tuple(sorted(ground)), report.family)

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.family)

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    def index(self, x: Union[str, int]) -> int:
        if isinstance(x, int):
            if not 0 <= x < self.n:
                raise ElementOutside(f"index {x} outside ground of size {self.n}")
            return x
        try:
            return self._index[x]
        except KeyError:
            raise ElementOutside(f"{x!r} is not in the ground {self.ground}") from None

    def mask(self, xs: Subset) -> int:
        """Convert a label collection (or an existing mask) to a mask."""
        if isinstance(xs, int):
            if xs < 0 or xs & ~self.full:
                raise ElementOutside(f"mask {xs:#b} exceeds the ground")
            return xs
        if isinstance(xs, str):
            raise TypeError("pass a collection of labels, not a bare string")
        out = 0
        for x in xs:
            out |= 1 << self.index(x)
        return out

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.ground[i] for i in bits(mask))

    def sets(self) -> list[tuple[str, ...]]:
        """Family members as label tuples, sorted by size then lexicographically."""
        return sorted((self.labels(m) for m in self.family), key=lambda s: (len(s), s))

    def subsets_of(self, X: int) -> list[int]:
        """Family members contained in ``X``, in family order."""
        return [m for m in self.family if not m & ~X]

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(s) + "}" for s in self.sets())
        return f"AutonomousSystem(ground={list(self.ground)}, family=[{body}])"


@dataclass(frozen=True)
class ValidationReport:
    """Itemised axiom violations. Falsy exactly when the family is valid."""

    ground: tuple[str, ...]
    family: tuple[int, ...]
    union_violations: tuple[tuple[int, int], ...] = ()
    accessibility_violations: tuple[int, ...] = ()
    missing_empty: bool = False

    def __bool__(self) -> bool:
        return bool(self.union_violations or self.accessibility_violations or self.missing_empty)

    def _labels(self, m: int) -> list[str]:
        return [self.ground[i] for i in bits(m)]

    def as_dict(self) -> dict:
        return {
            "valid": not self,
            "missing_empty": self.missing_empty,
            "union_violations": [[self._labels(a), self._labels(b)] for a, b in self.union_violations],
            "accessibility_violations": [self._labels(a) for a in self.accessibility_violations],
        }

    def summary(self) -> str:
        if not self:
            return "valid"
        parts = []
        if self.missing_empty:
            parts.append("empty set missing")
        if self.union_violations:
            parts.append(f"{len(self.union_violations)} union violation(s)")
        if self.accessibility_violations:
            parts.append(f"{len(self.accessibility_violations)} inaccessible set(s)")
        return ", ".join(parts)


def check_masks(ground: Sequence[str], family: Iterable[int]) -> ValidationReport:
    """Validate a mask family over ``ground`` (bit i is ``ground[i]``)."""
    fam = tuple(sorted(set(family)))
    members = set(fam)
    unions = tuple(
        (a, b) for a, b in itertools.combinations(fam, 2) if a | b not in members
    )
    inaccessible = tuple(
        a for a in fam if a and not any(a ^ (1 << i) in members for i in bits(a))
    )
    return ValidationReport(tuple(ground), fam, unions, inaccessible, 0 not in members)


def validate(ground: Iterable[str], family: Iterable[Iterable[str]]) -> ValidationReport:
    """Check the union and accessibility axioms on a label family.

    Duplicate sets are merged before checking. Masks in the returned report
    index the sorted ground.
    """
    ground = list(ground)
    if len(set(ground)) != len(ground):
        raise MalformedInput(f"duplicate labels in ground {ground!r}")
    order = sorted(ground)
    index = {x: i for i, x in enumerate(order)}
    masks = []
    for s in family:
        if isinstance(s, str):
            raise MalformedInput(f"set {s!r} must be a list of labels")
        m = 0
        for x in s:
            if x not in index:
                raise MalformedInput(f"unknown element {x!r}")
            m |= 1 << index[x]
        masks.append(m)
    return check_masks(order, masks)


def check(P: AutonomousSystem) -> ValidationReport:
    return check_masks(P.ground, P.family)


def autonomous_part(P: AutonomousSystem, X: Subset) -> int:
    """Largest autonomous subset of ``X``: the union of all members inside it."""
    X = P.mask(X)
    out = 0
    for m in P.family:
        if not m & ~X:
            out |= m
    return out


def restrict_ground(P: AutonomousSystem, keep: int) -> AutonomousSystem:
    """System on ``keep`` with the members contained in ``keep`` (re-indexed)."""
    return AutonomousSystem(
        P.labels(keep), tuple(compress(m, keep) for m in P.family if not m & ~keep)
    )


def normalize(P: AutonomousSystem) -> AutonomousSystem:
    """Drop elements that lie in no autonomous set."""
    part = autonomous_part(P, P.full)
    if part == P.full:
        return P
    return restrict_ground(P, part)


def full_chain(P: AutonomousSystem, A: Subset) -> list[str]:
    """Order ``A`` so that every initial segment is autonomous.

    Built backwards by removing the lowest-index removable element.
    """
    A = P.mask(A)
    if A not in P:
        raise NotAutonomous(f"{P.labels(A)} is not autonomous")
    order = []
    cur = A
    while cur:
        for i in bits(cur):
            if cur ^ (1 << i) in P:
                order.append(i)
                cur ^= 1 << i
                break
        else:  # pragma: no cover - only reachable for invalid systems
            raise InvalidSystem(check(P))
    return [P.ground[i] for i in reversed(order)]


def is_axiom(P: AutonomousSystem, x: Union[str, int]) -> bool:
    """True when the singleton ``{x}`` is autonomous."""
    return (1 << P.index(x)) in P


def permute(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for i in bits(mask):
        out |= 1 << perm[i]
    return out


def _signatures(P: AutonomousSystem) -> list[tuple]:
    # per-element isomorphism invariant: sizes of the members containing it
    sig = [[] for _ in range(P.n)]
    for m in P.family:
        k = popcount(m)
        for i in bits(m):
            sig[i].append(k)
    return [tuple(sorted(s)) for s in sig]


def isomorphic(P: AutonomousSystem, Q: AutonomousSystem) -> dict[str, str] | None:
    """A label bijection carrying P's family exactly onto Q's, or None.

    Backtracking over bijections that respect per-element signatures.
    """
    if P.n != Q.n or len(P.family) != len(Q.family):
        return None
    if sorted(map(popcount, P.family)) != sorted(map(popcount, Q.family)):
        return None
    sp, sq = _signatures(P), _signatures(Q)
    if sorted(sp) != sorted(sq):
        return None
    target = Q.members
    n = P.n
    perm = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return all(permute(m, perm) in target for m in P.family)
        for j in range(n):
            if not used[j] and sp[i] == sq[j]:
                perm[i], used[j] = j, True
                if extend(i + 1):
                    return True
                used[j] = False
        perm[i] = -1
        return False

    if not extend(0):
        return None
    return {P.ground[i]: Q.ground[perm[i]] for i in range(n)}


def canonical_form(P: AutonomousSystem) -> tuple[int, tuple[int, ...]]:
    """Label-free key, equal for two systems iff they are isomorphic.

    Elements are first ordered by signature; the key is the lexicographically
    least sorted family over all permutations within signature classes.
    """
    sig = _signatures(P)
    order = sorted(range(P.n), key=lambda i: sig[i])
    classes = [list(g) for _, g in itertools.groupby(order, key=lambda i: sig[i])]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
        perm = [0] * P.n
        pos = 0
        for block in choice:
            for i in block:
                perm[i] = pos
                pos += 1
        key = tuple(sorted(permute(m, perm) for m in P.family))
        if best is None or key < best:
            best = key
    return (P.n, best if best is not None else ())
