"""Path systems, subdot / induced-minor search, and P3 / P4 extraction.

``extract_p3`` and ``extract_p4`` follow the constructive arguments step
by step and record every reduction in a :class:`WitnessSequence`, which
:func:`verify_witness` can replay independently. Every free choice (the
element picked from the nonautonomous part, the minimal sets, the elements
below x) resolves to the lowest index or least mask.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

from .core import (
    AutonomousSystem,
    AutsysError,
    autonomous_part,
    bits,
    canonical_form,
    isomorphic,
    permute,
)
from .ops import CONTRACT, DELETE, QUOTIENT, ReductionStep
from .order import canonical_order, min_aut_containing, nonintersecting_pairs
from .quotient import Partition, set_partitions, union_closure

log = logging.getLogger(__name__)

DEFAULT_BOUND = 6


class InvalidN(AutsysError):
    pass


class PreconditionFailed(AutsysError):
    pass


class SearchBoundExceeded(AutsysError):
    pass


def path_system(labels) -> AutonomousSystem:
    """Unions of an initial and a final segment of the path ``labels``."""
    labels = list(labels)
    n = len(labels)
    if n < 1:
        raise InvalidN("a path needs at least one vertex")
    if len(set(labels)) != n:
        raise InvalidN("path labels must be distinct")
    ground = tuple(sorted(labels))
    pos = [ground.index(x) for x in labels]
    family = set()
    for i in range(n + 1):
        for k in range(n + 1):
            family.add(sum(1 << pos[t] for t in range(n) if t < i or t >= k))
    return AutonomousSystem(ground, tuple(family))


def p_n(n: int) -> AutonomousSystem:
    if not isinstance(n, int) or n < 1:
        raise InvalidN(f"n must be a positive integer, got {n!r}")
    return path_system([f"v{i}" for i in range(1, n + 1)])


def hex6() -> AutonomousSystem:
    """Six points with a P4 induced minor but no P4 subdot."""
    gens = [
        {"a1"}, {"a2"}, {"b1"}, {"b2"},
        {"a1", "x"}, {"a2", "x"}, {"b1", "y"}, {"b2", "y"},
        {"a1", "a2", "x", "y"}, {"b1", "b2", "y", "x"},
    ]
    ground = ("a1", "a2", "b1", "b2", "x", "y")
    probe = AutonomousSystem(ground, ())
    return AutonomousSystem(ground, tuple(union_closure([0] + [probe.mask(g) for g in gens])))


@dataclass
class WitnessSequence:
    """Reduction steps from ``source`` with every intermediate system.

    ``final_iso`` maps the last intermediate's labels onto the target's.
    """

    source: AutonomousSystem
    steps: list[ReductionStep] = field(default_factory=list)
    intermediates: list[AutonomousSystem] = field(default_factory=list)
    final_iso: dict[str, str] = field(default_factory=dict)

    @property
    def final(self) -> AutonomousSystem:
        return self.intermediates[-1] if self.intermediates else self.source

    def push(self, step: ReductionStep) -> AutonomousSystem:
        nxt = step.apply(self.final)
        self.steps.append(step)
        self.intermediates.append(nxt)
        return nxt

    def has_quotient(self) -> bool:
        return any(s.kind == QUOTIENT for s in self.steps)

    def narrative(self) -> list[str]:
        lines = [f"start: {len(self.source.ground)} elements, {len(self.source.family)} autonomous sets"]
        for s, Q in zip(self.steps, self.intermediates):
            lines.append(f"{s.describe()} -> {len(Q.ground)} elements, {len(Q.family)} autonomous sets")
        pretty = ", ".join(f"{a}->{b}" for a, b in sorted(self.final_iso.items()))
        lines.append(f"isomorphism onto target: {pretty}")
        return lines


def verify_witness(w: WitnessSequence, target: AutonomousSystem) -> bool:
    """Replay the steps, compare intermediates, then check ``final_iso``."""
    if len(w.steps) != len(w.intermediates):
        return False
    cur = w.source
    try:
        for step, expected in zip(w.steps, w.intermediates):
            cur = step.apply(cur)
            if cur != expected:
                return False
    except AutsysError:
        return False
    iso = w.final_iso
    if sorted(iso) != list(cur.ground) or sorted(iso.values()) != list(target.ground):
        return False
    perm = [target.index(iso[x]) for x in cur.ground]
    return sorted(permute(m, perm) for m in cur.family) == list(target.family)


def _finish(w: WitnessSequence, target: AutonomousSystem) -> WitnessSequence:
    iso = isomorphic(w.final, target)
    if iso is None:
        raise AssertionError("extraction did not reach the target; the system is not valid")
    w.final_iso = iso
    return w


def find_nonintersecting_pair(P: AutonomousSystem) -> tuple[int, int] | None:
    return next(iter(nonintersecting_pairs(P)), None)


def _minimal_members_containing(P: AutonomousSystem, i: int) -> list[int]:
    cands = [m for m in P.family if m >> i & 1]
    return [m for m in cands if not any(c != m and not c & ~m for c in cands)]


def extract_p3(P: AutonomousSystem, A, B) -> WitnessSequence:
    """Subdot witness for P3 from two members whose intersection is not autonomous.

    Each round dots to A ∪ B, takes x from the nonautonomous part of A ∩ B,
    restricts to the symmetric difference plus x and dots to the minimal
    members A'', B'' holding x. If some other minimal member M containing x
    exists it straddles both sides, so (A'', M) is again a bad pair on a
    strictly smaller ground and the round repeats. Otherwise every member
    holding x contains A'' or B'', and restricting to x plus one element
    below it on each side leaves a copy of P3.
    """
    A, B = P.mask(A), P.mask(B)
    if A not in P or B not in P:
        raise PreconditionFailed("A and B must be autonomous")
    if A & B in P:
        raise PreconditionFailed("A ∩ B is autonomous")
    w = WitnessSequence(P)
    Al, Bl = P.labels(A), P.labels(B)
    while True:
        cur = w.final
        A, B = cur.mask(Al), cur.mask(Bl)
        # dot to A ∪ B
        P1 = w.push(ReductionStep(DELETE, cur.labels(cur.full & ~(A | B))))
        A1, B1 = P1.mask(Al), P1.mask(Bl)
        meet = A1 & B1
        bad = meet & ~autonomous_part(P1, meet)
        xl = P1.ground[next(bits(bad))]
        x1 = 1 << P1.index(xl)
        Ap, Bp = (A1 & ~B1) | x1, (B1 & ~A1) | x1
        # restrict to A' ∪ B'
        P2 = w.push(ReductionStep(CONTRACT, P1.labels(P1.full & ~(Ap | Bp))))
        Ap2, Bp2 = P2.mask(P1.labels(Ap)), P2.mask(P1.labels(Bp))
        assert Ap2 in P2 and Bp2 in P2
        assert (1 << P2.index(xl)) not in P2, "{x} became autonomous after restriction"
        App = min_aut_containing(P2, Ap2, xl)
        Bpp = min_aut_containing(P2, Bp2, xl)
        # dot to A'' ∪ B''
        P3 = w.push(ReductionStep(DELETE, P2.labels(P2.full & ~(App | Bpp))))
        App3, Bpp3 = P3.mask(P2.labels(App)), P3.mask(P2.labels(Bpp))
        x3 = 1 << P3.index(xl)
        assert App3 & Bpp3 == x3 and x3 not in P3
        straddling = [m for m in _minimal_members_containing(P3, P3.index(xl)) if m not in (App3, Bpp3)]
        if not straddling:
            break
        log.debug("extract_p3: restarting on a straddling minimal member")
        Al, Bl = P3.labels(App3), P3.labels(min(straddling))
    oa, ob = canonical_order(P3, App3), canonical_order(P3, Bpp3)
    assert all(oa.leq(z, xl) for z in bits(App3)), "x is not maximal in A''"
    assert all(ob.leq(z, xl) for z in bits(Bpp3)), "x is not maximal in B''"
    a = next(z for z in bits(App3) if oa.lt(z, xl))
    b = next(z for z in bits(Bpp3) if ob.lt(z, xl))
    keep = (1 << a) | (1 << b) | x3
    w.push(ReductionStep(CONTRACT, P3.labels(P3.full & ~keep)))
    return _finish(w, p_n(3))


@dataclass(frozen=True)
class BidirectionalPair:
    """``x <_A y`` and ``y <_B x`` (masks over the system's ground)."""

    x: str
    y: str
    A: int
    B: int


def find_bidirectional_pair(P: AutonomousSystem) -> BidirectionalPair | None:
    """First ordered pair (x, y) by index with x <_A y and y <_B x for some members.

    A and B are the least masks witnessing each direction.
    """
    first: dict[tuple[int, int], int] = {}
    for A in P.family:
        order = canonical_order(P, A)
        for j in bits(A):
            for i in bits(order.below[j] & ~(1 << j)):
                first.setdefault((i, j), A)
    for i in range(P.n):
        for j in range(P.n):
            if (i, j) in first and (j, i) in first:
                g = P.ground
                return BidirectionalPair(g[i], g[j], first[(i, j)], first[(j, i)])
    return None


def _is_bidirectional(P: AutonomousSystem, x: str, y: str, A: int, B: int) -> bool:
    try:
        return (
            A in P and B in P and x != y
            and canonical_order(P, A).lt(x, y)
            and canonical_order(P, B).lt(y, x)
        )
    except AutsysError:
        return False


def extract_p4(P: AutonomousSystem, pair: BidirectionalPair) -> WitnessSequence:
    """Induced-minor witness for P4 from a bidirectional pair.

    Each round dots to A ∪ B, restricts to the symmetric difference plus
    {x, y}, and dots to A'' (minimal in A' holding y) and B'' (minimal in B'
    holding x). With L = A'' - {x, y} and R = B'' - {x, y}, collapsing L and
    R to single points gives P4 exactly when L and R are autonomous. When L
    is not, take l in L outside its autonomous part: contracting l keeps the
    pair (x, y), unless some member N inside R ∪ {l, x} avoids y, in which
    case deleting y leaves the pair (x, l) with contexts L ∪ {x} and N. R is
    handled symmetrically. Either way the ground shrinks and the round
    repeats.
    """
    xl, yl = pair.x, pair.y
    A, B = P.mask(pair.A), P.mask(pair.B)
    if not _is_bidirectional(P, xl, yl, A, B):
        raise PreconditionFailed(f"need {xl} <_A {yl} and {yl} <_B {xl}")
    w = WitnessSequence(P)
    Al, Bl = P.labels(A), P.labels(B)
    while True:
        cur = w.final
        A, B = cur.mask(Al), cur.mask(Bl)
        P1 = w.push(ReductionStep(DELETE, cur.labels(cur.full & ~(A | B))))
        A1, B1 = P1.mask(Al), P1.mask(Bl)
        xy = P1.mask([xl, yl])
        Ap, Bp = (A1 & ~B1) | xy, (B1 & ~A1) | xy
        P2 = w.push(ReductionStep(CONTRACT, P1.labels(P1.full & ~(Ap | Bp))))
        Ap2, Bp2 = P2.mask(P1.labels(Ap)), P2.mask(P1.labels(Bp))
        assert _is_bidirectional(P2, xl, yl, Ap2, Bp2)
        App = min_aut_containing(P2, Ap2, yl)
        Bpp = min_aut_containing(P2, Bp2, xl)
        P3 = w.push(ReductionStep(DELETE, P2.labels(P2.full & ~(App | Bpp))))
        App3, Bpp3 = P3.mask(P2.labels(App)), P3.mask(P2.labels(Bpp))
        xy3 = P3.mask([xl, yl])
        assert App3 & Bpp3 == xy3, "A'' ∩ B'' must be {x, y}"
        assert _is_bidirectional(P3, xl, yl, App3, Bpp3)
        oa, ob = canonical_order(P3, App3), canonical_order(P3, Bpp3)
        assert all(oa.leq(z, yl) for z in bits(App3)), "y is not maximal in A''"
        assert all(ob.leq(z, xl) for z in bits(Bpp3)), "x is not maximal in B''"
        left, right = App3 & ~xy3, Bpp3 & ~xy3
        assert left and right, "x or y turned out to be an axiom"
        if left in P3 and right in P3:
            break
        log.debug("extract_p4: a side is not autonomous, shrinking")
        xl, yl, Al, Bl = _shrink_p4(w, P3, xl, yl, App3, Bpp3)
    part = Partition.of([P3.labels(left), P3.labels(right), (xl,), (yl,)])
    w.push(ReductionStep(QUOTIENT, part))
    return _finish(w, path_system(["a", "x", "y", "b"]))


def _shrink_p4(w: WitnessSequence, Q: AutonomousSystem, xl: str, yl: str, A: int, B: int):
    """One shrinking step; returns the new (x, y, A labels, B labels)."""
    x, y = Q.index(xl), Q.index(yl)
    xy = (1 << x) | (1 << y)
    L, R = A & ~xy, B & ~xy
    if L not in Q:
        # an element of L needing x, with the far side R and the near point x
        far, near, lone = R, x, y
        l = next(bits(L & ~autonomous_part(Q, L)))
        side = A
    else:
        far, near, lone = L, y, x
        l = next(bits(R & ~autonomous_part(Q, R)))
        side = B
    lab = Q.ground[l]
    allowed = far | (1 << l) | (1 << near)
    blockers = [m for m in Q.family if not m & ~allowed and m >> l & 1 and m >> near & 1]
    if not blockers:
        w.push(ReductionStep(CONTRACT, (lab,)))
        return xl, yl, Q.labels(A & ~(1 << l)), Q.labels(B & ~(1 << l))
    N = min(blockers)
    w.push(ReductionStep(DELETE, (Q.ground[lone],)))
    rest = Q.labels(side & ~(1 << lone))
    if side == A:
        # x <_{L ∪ {x}} l and l <_N x
        return xl, lab, rest, Q.labels(N)
    # y <_{R ∪ {y}} r and r <_N y
    return lab, yl, Q.labels(N), rest


def _neighbours(Q: AutonomousSystem, quotients: bool, min_n: int):
    for i in range(Q.n):
        lab = (Q.ground[i],)
        yield ReductionStep(DELETE, lab)
        yield ReductionStep(CONTRACT, lab)
    if not quotients:
        return
    for blocks in set_partitions(Q.ground, min_blocks=min_n, max_blocks=Q.n - 1):
        yield ReductionStep(QUOTIENT, Partition.of(blocks))


def _search(P, target, quotients, bound, require_induced=False):
    if P.n > bound:
        raise SearchBoundExceeded(f"ground of size {P.n} exceeds search bound {bound}")
    goal = canonical_form(target)
    need_n, need_f = target.n, len(target.family)
    start = canonical_form(P)
    parent = {start: None}
    queue = deque([(P, start)])
    while queue:
        Q, key = queue.popleft()
        if key == goal:
            path = []
            while parent[key] is not None:
                key, step, R = parent[key]
                path.append((step, R))
            w = WitnessSequence(P)
            for step, R in reversed(path):
                w.steps.append(step)
                w.intermediates.append(R)
            return _finish(w, target)
        if Q.n <= need_n:
            continue
        for step in _neighbours(Q, quotients, need_n):
            R = step.apply(Q)
            # no reduction raises the ground size or the family size
            if R.n < need_n or len(R.family) < need_f:
                continue
            if require_induced and step.kind == QUOTIENT and len(R.family) < 2:
                continue
            rkey = canonical_form(R)
            if rkey not in parent:
                parent[rkey] = (key, step, R)
                queue.append((R, rkey))
    log.debug("search exhausted %d isomorphism classes", len(parent))
    return None


def subdot_reachable(P: AutonomousSystem, target: AutonomousSystem, bound: int = DEFAULT_BOUND):
    """Shortest delete/contract witness reaching a copy of ``target``, or None."""
    return _search(P, target, quotients=False, bound=bound)


def induced_minor(
    P: AutonomousSystem,
    target: AutonomousSystem,
    bound: int = DEFAULT_BOUND,
    require_induced: bool = False,
):
    """As :func:`subdot_reachable`, also allowing quotients by set partitions.

    With ``require_induced`` only partitions whose quotient has a nonempty
    autonomous set are used.
    """
    return _search(P, target, quotients=True, bound=bound, require_induced=require_induced)
