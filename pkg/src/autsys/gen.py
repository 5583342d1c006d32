"""Exhaustive and random generation of small autonomous systems."""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .core import AutonomousSystem, AutsysError, bits, canonical_form, check_masks, popcount
from .ops import contract, delete
from .order import PartialOrderRelation, from_poset
from .quotient import union_closure

MAX_EXHAUSTIVE = 4


class TooLarge(AutsysError):
    pass


def default_labels(n: int) -> tuple[str, ...]:
    """``e1..en``, zero padded from n = 10 on so that label order is index order."""
    width = len(str(n))
    return tuple(f"e{i:0{width}d}" for i in range(1, n + 1))


def _check_n(n: int, max_n: int):
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > max_n:
        raise TooLarge(f"exhaustive enumeration is limited to n <= {max_n}")


def enumerate_all(n: int, normalized: bool = True, max_n: int = MAX_EXHAUSTIVE) -> Iterator[AutonomousSystem]:
    """Every labelled antimatroid on ``n`` elements, each once.

    Nonempty subsets are decided in (size, mask) order. A subset that is
    the union of two chosen proper subsets must be chosen; otherwise it may
    be chosen only if removing some element leaves a chosen set.
    """
    _check_n(n, max_n)
    ground = default_labels(n)
    full = (1 << n) - 1
    order = sorted(range(1, full + 1), key=lambda m: (popcount(m), m))
    chosen: list[int] = [0]
    member = {0}

    def forced(S: int) -> bool:
        subs = [m for m in chosen if m and not m & ~S]
        return any(a | b == S for a, b in itertools.combinations(subs, 2))

    def accessible(S: int) -> bool:
        return any(S ^ (1 << i) in member for i in bits(S))

    def rec(k: int):
        if k == len(order):
            yield AutonomousSystem(ground, tuple(chosen))
            return
        S = order[k]
        if forced(S):
            options = [True]
        elif accessible(S):
            options = [False, True]
        else:
            options = [False]
        if normalized and S == full:
            options = [o for o in options if o]
        for take in options:
            if take:
                chosen.append(S)
                member.add(S)
            yield from rec(k + 1)
            if take:
                chosen.pop()
                member.discard(S)

    yield from rec(0)


def enumerate_naive(n: int, normalized: bool = True, max_n: int = MAX_EXHAUSTIVE) -> Iterator[AutonomousSystem]:
    """Oracle: filter every family of nonempty subsets (plus the empty set) by the axioms."""
    _check_n(n, max_n)
    ground = default_labels(n)
    full = (1 << n) - 1
    nonempty = list(range(1, full + 1))
    for pick in itertools.product((False, True), repeat=len(nonempty)):
        fam = [0] + [m for m, t in zip(nonempty, pick) if t]
        if normalized and (n and full not in fam):
            continue
        if not check_masks(ground, fam):
            yield AutonomousSystem(ground, tuple(fam))


def iso_classes(systems) -> list[AutonomousSystem]:
    """One representative per isomorphism class, first occurrence kept."""
    seen = set()
    out = []
    for P in systems:
        key = canonical_form(P)
        if key not in seen:
            seen.add(key)
            out.append(P)
    return out


def all_partial_orders(n: int) -> Iterator[PartialOrderRelation]:
    """Every labelled partial order on ``default_labels(n)``."""
    ground = default_labels(n)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for pick in itertools.product((False, True), repeat=len(pairs)):
        rel = {p for p, t in zip(pairs, pick) if t}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2 and i != k):
            continue
        yield PartialOrderRelation(
            ground, frozenset((ground[i], ground[j]) for i, j in rel) | {(x, x) for x in ground}
        )


class Method(enum.Enum):
    FROM_RANDOM_POSET = "poset"
    CHAIN_CLOSURE = "chains"
    SUBDOT_OF_LARGER = "subdot"


@dataclass(frozen=True)
class GenSpec:
    n: int
    normalized: bool = True
    seed: int = 0
    method: Method = Method.CHAIN_CLOSURE
    max_n: int = 10


def _random_poset(n: int, rng: random.Random, normalized: bool) -> AutonomousSystem:
    ground = default_labels(n)
    perm = list(range(n))
    rng.shuffle(perm)
    density = rng.random()
    less = [
        (ground[perm[i]], ground[perm[j]])
        for i in range(n) for j in range(i + 1, n) if rng.random() < density
    ]
    return from_poset(PartialOrderRelation.from_pairs(ground, less))


def _chain_closure(n: int, rng: random.Random, normalized: bool) -> AutonomousSystem:
    ground = default_labels(n)
    gens = {0}
    for c in range(rng.randint(1, max(1, n))):
        perm = list(range(n))
        rng.shuffle(perm)
        length = n if (normalized and c == 0) else rng.randint(0, n)
        m = 0
        for i in perm[:length]:
            m |= 1 << i
            gens.add(m)
    return AutonomousSystem(ground, tuple(union_closure(gens)))


def _subdot_of_larger(n: int, rng: random.Random, normalized: bool) -> AutonomousSystem:
    Q = _chain_closure(n + 2, rng, normalized)
    for _ in range(2):
        i = rng.randrange(Q.n)
        lab = (Q.ground[i],)
        removable = (Q.full & ~(1 << i)) in Q
        if rng.random() < 0.5 and (removable or not normalized):
            Q = delete(Q, lab)
        else:
            Q = contract(Q, lab)
    # relabel onto e1..en keeping the relative order
    return AutonomousSystem(default_labels(n), Q.family)


_METHODS = {
    Method.FROM_RANDOM_POSET: _random_poset,
    Method.CHAIN_CLOSURE: _chain_closure,
    Method.SUBDOT_OF_LARGER: _subdot_of_larger,
}


def random_system(spec: GenSpec) -> AutonomousSystem:
    """Seeded heuristic sample (not uniform over all systems)."""
    if spec.n < 1:
        raise ValueError("n must be positive")
    if spec.n > spec.max_n:
        raise TooLarge(f"n={spec.n} exceeds bound {spec.max_n}")
    rng = random.Random(f"{spec.method.value}:{spec.n}:{int(spec.normalized)}:{spec.seed}")
    return _METHODS[Method(spec.method)](spec.n, rng, spec.normalized)
