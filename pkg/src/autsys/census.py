"""Exhaustive small-case checks of the theorems, run by ``autsys selftest``.

Each ``criterion_*`` function returns a :class:`CriterionResult`; failures
carry a short description of the offending system so they can be replayed.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

from .core import AutonomousSystem, bits, check, isomorphic, popcount
from .gen import (
    GenSpec,
    Method,
    all_partial_orders,
    enumerate_all,
    enumerate_naive,
    random_system,
)
from .minors import (
    extract_p3,
    extract_p4,
    find_bidirectional_pair,
    find_nonintersecting_pair,
    hex6,
    induced_minor,
    p_n,
    path_system,
    subdot_reachable,
    verify_witness,
)
from .ops import QUOTIENT, contract, delete
from .order import (
    PartialOrderRelation,
    canonical_order,
    from_poset,
    is_poset,
    min_aut_containing,
    to_poset,
)
from .quotient import Partition, join, quotient_by_map, quotient_by_partition, set_partitions, union_closure

CENSUS_MAX_N = 4


@dataclass
class CriterionResult:
    number: int
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f", {len(self.failures)} failure(s)" if self.failures else ""
        return f"[{tag}] {self.number:2d}. {self.name}: {self.checked} checked{extra} ({self.seconds:.1f}s)"


def census(max_n: int = CENSUS_MAX_N) -> list[AutonomousSystem]:
    """All normalized labelled systems on 0..max_n elements."""
    return [P for n in range(max_n + 1) for P in enumerate_all(n, normalized=True)]


def _timed(number: int, name: str):
    def wrap(fn: Callable[..., CriterionResult]):
        def run(*args, **kwargs) -> CriterionResult:
            res = CriterionResult(number, name)
            t0 = time.perf_counter()
            fn(res, *args, **kwargs)
            res.seconds = time.perf_counter() - t0
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


P3 = p_n(3)
P4 = path_system(["a", "x", "y", "b"])


@_timed(1, "poset characterization census")
def criterion_poset_characterization(res, systems=None):
    for P in systems if systems is not None else census():
        res.checked += 1
        poset = bool(is_poset(P))
        no_subdot = subdot_reachable(P, P3) is None
        no_minor = induced_minor(P, P3) is None
        if not poset == no_subdot == no_minor:
            res.failures.append(f"{P!r}: poset={poset} no_subdot={no_subdot} no_minor={no_minor}")


@_timed(2, "P3 extraction totality")
def criterion_p3_extraction(res, systems=None):
    for P in systems if systems is not None else census():
        if is_poset(P):
            continue
        res.checked += 1
        pair = find_nonintersecting_pair(P)
        if pair is None:
            res.failures.append(f"{P!r}: no nonintersecting pair")
            continue
        w = extract_p3(P, *pair)
        if w.has_quotient() or not verify_witness(w, P3):
            res.failures.append(f"{P!r}: bad witness")


def _p4_check(res, P):
    res.checked += 1
    pair = find_bidirectional_pair(P)
    minor = induced_minor(P, P4)
    if (pair is None) != (minor is None):
        res.failures.append(f"{P!r}: pair={pair} minor={'yes' if minor else 'no'}")
        return
    if minor is not None and not verify_witness(minor, P4):
        res.failures.append(f"{P!r}: search witness does not verify")
    if pair is not None and not verify_witness(extract_p4(P, pair), P4):
        res.failures.append(f"{P!r}: extract_p4 witness does not verify")


@_timed(3, "P4 theorem (census + seeded n=5 sample)")
def criterion_p4_theorem(res, systems=None, samples: int = 1000, seed: int = 0):
    for P in systems if systems is not None else census():
        _p4_check(res, P)
    methods = list(Method)
    for k in range(samples):
        spec = GenSpec(5, normalized=True, seed=seed + k, method=methods[k % len(methods)])
        _p4_check(res, random_system(spec))


@_timed(4, "HEX6 separation")
def criterion_hex6(res):
    H = hex6()
    res.checked = 1
    if check(H):
        res.failures.append("HEX6 is not a valid system")
    if subdot_reachable(H, P4) is not None:
        res.failures.append("HEX6 has a P4 subdot")
    pair = find_bidirectional_pair(H)
    if pair is None:
        res.failures.append("no bidirectional pair in HEX6")
        return
    w = extract_p4(H, pair)
    quotients = [s for s in w.steps if s.kind == QUOTIENT]
    expected = {("a1", "a2"), ("b1", "b2"), ("x",), ("y",)}
    if not verify_witness(w, P4):
        res.failures.append("extract_p4 witness does not verify")
    if len(quotients) != 1 or set(quotients[0].operand.cells) != expected:
        res.failures.append(f"unexpected quotient steps {quotients}")


def lemma_violations(P: AutonomousSystem) -> list[str]:
    """Canonical-order facts checked directly from the definition."""
    out = []
    orders = {A: canonical_order(P, A) for A in P.family}
    for A, o in orders.items():
        elems = list(bits(A))
        for x in elems:
            if not o.leq(x, x):
                out.append(f"not reflexive at {x} in {A:#b}")
            for y in elems:
                if x != y and o.leq(x, y) and o.leq(y, x):
                    out.append(f"not antisymmetric {x},{y} in {A:#b}")
                for z in elems:
                    if o.leq(x, y) and o.leq(y, z) and not o.leq(x, z):
                        out.append(f"not transitive {x},{y},{z} in {A:#b}")
        inside = P.subsets_of(A)
        # downward closure of autonomous subsets
        for B in inside:
            if not o.is_downward_closed(B):
                out.append(f"{B:#b} not downward closed in {A:#b}")
        # intersection characterization over every subset of A
        sub = A
        while True:
            meet = A
            for B in inside:
                if not sub & ~B:
                    meet &= B
            if o.is_downward_closed(sub) != (meet == sub):
                out.append(f"intersection characterization fails for {sub:#b} in {A:#b}")
            if sub == 0:
                break
            sub = (sub - 1) & A
        # minimal sets have their element on top
        for x in elems:
            B = min_aut_containing(P, A, x)
            ob = orders[B]
            if not all(ob.leq(z, x) for z in bits(B)):
                out.append(f"{x} not maximum of minimal set {B:#b}")
    # monotonicity between nested members
    for A in P.family:
        for B in P.family:
            if A == B or A & ~B:
                continue
            oa, ob = orders[A], orders[B]
            for x in bits(A):
                for y in bits(A):
                    if ob.lt(x, y) and not oa.lt(x, y):
                        out.append(f"monotonicity fails {x}<{y} in {B:#b} vs {A:#b}")
    return out


@_timed(5, "canonical-order lemma suite")
def criterion_lemmas(res, systems=None):
    for P in systems if systems is not None else census():
        res.checked += 1
        bad = lemma_violations(P)
        if bad:
            res.failures.append(f"{P!r}: {bad[:3]}")


def quotient_oracle(P: AutonomousSystem, cells: list[int], targets: list[tuple[int, ...]]) -> set[int]:
    """Union closure of every candidate family making the collapse a homomorphism."""
    acc = {0}
    for fam in targets:
        ok = True
        for T in fam:
            pre = 0
            for j in range(len(cells)):
                if T >> j & 1:
                    pre |= cells[j]
            if pre not in P.members:
                ok = False
                break
        if ok:
            acc.update(fam)
    return union_closure(acc)


@_timed(6, "quotient maximality oracle")
def criterion_quotient_oracle(res, systems=None, max_cells: int = 3):
    families = {k: [S.family for S in enumerate_all(k, normalized=False)] for k in range(1, max_cells + 1)}
    for P in systems if systems is not None else census():
        if P.n == 0:
            continue
        for blocks in set_partitions(P.ground, max_blocks=max_cells):
            res.checked += 1
            part = Partition.of(blocks)
            f = part.to_map(P.ground)
            Q = quotient_by_map(P, f)
            cells = [sum(1 << P.index(x) for x in c) for c in part.cells]
            # cells and names are sorted together, so target index j is cell j
            want = quotient_oracle(P, cells, families[len(blocks)])
            if set(Q.family) != want:
                res.failures.append(f"{P!r} / {blocks}")


@_timed(7, "join least upper bound")
def criterion_join(res, max_n: int = 3):
    for n in range(max_n + 1):
        systems = list(enumerate_all(n, normalized=False))
        for P, Q in itertools.product(systems, repeat=2):
            res.checked += 1
            J = join([P, Q])
            fam = set(J.family)
            if check(J) or not set(P.family) <= fam or not set(Q.family) <= fam:
                res.failures.append(f"join of {P!r} and {Q!r} is not an upper bound")
                continue
            for U in systems:
                up = set(U.family)
                if set(P.family) <= up and set(Q.family) <= up and not fam <= up:
                    res.failures.append(f"join of {P!r} and {Q!r} exceeds {U!r}")


@_timed(8, "poset round trip")
def criterion_round_trip(res, systems=None):
    for n in range(CENSUS_MAX_N + 1):
        for R in all_partial_orders(n):
            res.checked += 1
            if to_poset(from_poset(R)) != R:
                res.failures.append(f"to_poset(from_poset({R.strict_pairs()})) differs")
    for P in systems if systems is not None else census():
        if not is_poset(P):
            continue
        res.checked += 1
        if from_poset(to_poset(P)) != P:
            res.failures.append(f"from_poset(to_poset({P!r})) differs")


@_timed(9, "derived fixture checks")
def criterion_fixtures(res):
    chain3 = from_poset(PartialOrderRelation.from_pairs(["p", "q", "r"], [("p", "q"), ("q", "r")]))
    H = hex6()
    part = Partition.of([["a1", "a2"], ["x"], ["y"], ["b1", "b2"]])
    checks = {
        "contract(P4, {a}) ~ P3": isomorphic(contract(P4, ["a"]), P3) is not None,
        "delete(P4, {a}) ~ 3-chain": isomorphic(delete(P4, ["a"]), chain3) is not None,
        "HEX6 / 4 cells ~ P4": isomorphic(quotient_by_partition(H, part), P4) is not None,
    }
    for name, ok in checks.items():
        res.checked += 1
        if not ok:
            res.failures.append(name)


@_timed(10, "enumerator cross-validation")
def criterion_enumerators(res, max_n: int = 3):
    for n in range(max_n + 1):
        for normalized in (True, False):
            res.checked += 1
            a = list(enumerate_all(n, normalized))
            b = list(enumerate_naive(n, normalized))
            if len(a) != len(b) or set(a) != set(b) or len(set(a)) != len(a):
                res.failures.append(f"n={n} normalized={normalized}: {len(a)} vs {len(b)}")
            bad = [P for P in a if check(P)]
            if bad:
                res.failures.append(f"n={n}: enumerated invalid system {bad[0]!r}")


def run_all(samples: int = 1000, seed: int = 0, echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    systems = census()
    runs = [
        lambda: criterion_poset_characterization(systems),
        lambda: criterion_p3_extraction(systems),
        lambda: criterion_p4_theorem(systems, samples=samples, seed=seed),
        criterion_hex6,
        lambda: criterion_lemmas(systems),
        lambda: criterion_quotient_oracle(systems),
        criterion_join,
        lambda: criterion_round_trip(systems),
        criterion_fixtures,
        criterion_enumerators,
    ]
    results = []
    for run in runs:
        r = run()
        if echo:
            echo(r.line())
        results.append(r)
    return results
