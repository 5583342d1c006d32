import pytest
from hypothesis import given, strategies as st

from autsys import (
    AutonomousSystem,
    GroundMap,
    Partition,
    PartialOrderRelation,
    check,
    from_poset,
    is_homomorphism,
    is_homomorphism_induced,
    isomorphic,
    join,
    quotient_by_map,
    quotient_by_partition,
)
from autsys.census import quotient_oracle
from autsys.gen import enumerate_all
from autsys.quotient import EmptyInput, MalformedMap, MalformedPartition, NotSurjective, set_partitions
from strategies import systems

HEX6_CELLS = [["a1", "a2"], ["x"], ["y"], ["b1", "b2"]]


def _hex6_map():
    f = {"a1": "a", "a2": "a", "x": "x", "y": "y", "b1": "b", "b2": "b"}
    return GroundMap(tuple(f), ("a", "b", "x", "y"), f)


def test_identity_is_a_homomorphism(P4):
    f = GroundMap(P4.ground, P4.ground, {x: x for x in P4.ground})
    assert is_homomorphism(P4, P4, f)


def test_hex6_collapse_is_a_homomorphism_onto_p4(HEX6, P4):
    f = _hex6_map()
    assert is_homomorphism(HEX6, P4, f)
    Q = quotient_by_map(HEX6, f)
    assert Q == P4


def test_chain_collapse(CHAIN2):
    f = GroundMap(("p", "q"), ("z",), {"p": "z", "q": "z"})
    Z = AutonomousSystem.from_sets(["z"], [["z"]])
    assert is_homomorphism(CHAIN2, Z, f)
    assert quotient_by_map(CHAIN2, f) == Z


def test_quotient_by_partition_examples(HEX6, P4, P3):
    Q = quotient_by_partition(HEX6, Partition.of(HEX6_CELLS))
    assert Q.ground == ("a1+a2", "b1+b2", "x", "y")
    assert isomorphic(Q, P4) == {"a1+a2": "a", "b1+b2": "b", "x": "x", "y": "y"}
    assert quotient_by_partition(P4, Partition.discrete(P4.ground)) == P4
    Q = quotient_by_partition(P3, Partition.of([["v1", "v3"], ["v2"]]))
    assert Q.sets() == [(), ("v1+v3",), ("v1+v3", "v2")]


def test_is_homomorphism_induced_examples(HEX6, P3):
    assert is_homomorphism_induced(HEX6, Partition.of(HEX6_CELLS))
    assert is_homomorphism_induced(P3, Partition.of([["v1", "v3"], ["v2"]]))
    chain3 = from_poset(PartialOrderRelation.from_pairs("pqr", [("p", "q"), ("q", "r")]))
    part = Partition.of([["p", "r"], ["q"]])
    assert not is_homomorphism_induced(chain3, part)
    assert quotient_by_partition(chain3, part).family == (0,)


def test_partition_validation(P4):
    with pytest.raises(MalformedPartition):
        Partition.of([["a"], ["b"]], names=["z", "z"])
    with pytest.raises(MalformedPartition):
        Partition.of([["a", "x"], ["x", "y", "b"]]).check(P4.ground)
    with pytest.raises(MalformedPartition):
        quotient_by_partition(P4, Partition.of([["a", "x"], ["y"]]))
    with pytest.raises(MalformedPartition):
        Partition.of([[], ["a", "b", "x", "y"]]).check(P4.ground)
    named = Partition.of([["a", "x"], ["b", "y"]], names=["left", "right"])
    assert named.to_map(P4.ground).assignment["x"] == "left"


def test_map_validation(P4):
    with pytest.raises(MalformedMap):
        GroundMap(("p",), ("z",), {"q": "z"})
    with pytest.raises(MalformedMap):
        GroundMap(("p",), ("z",), {"p": "w"})
    with pytest.raises(NotSurjective):
        quotient_by_map(P4, GroundMap(P4.ground, ("u", "v"), {x: "u" for x in P4.ground}))


def test_join_examples():
    left = AutonomousSystem.from_sets("pq", [["p"], ["p", "q"]])
    right = AutonomousSystem.from_sets("pq", [["q"], ["p", "q"]])
    assert len(join([left, right]).family) == 4
    assert join([left, left]) == left
    other = AutonomousSystem.from_sets("rs", [["r"], ["r", "s"]])
    J = join([left, other])
    assert J.ground == ("p", "q", "r", "s")
    # unions of one down-set from each chain
    assert len(J.family) == 9
    with pytest.raises(EmptyInput):
        join([])


@pytest.mark.parametrize("n,bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203)])
def test_set_partition_counts(n, bell):
    parts = list(set_partitions(range(n)))
    assert len(parts) == bell
    assert len({tuple(map(tuple, p)) for p in parts}) == bell


def test_set_partition_block_bounds():
    sizes = [len(p) for p in set_partitions(range(5), min_blocks=2, max_blocks=3)]
    # Stirling numbers S(5,2) + S(5,3)
    assert len(sizes) == 15 + 25 and set(sizes) == {2, 3}


@st.composite
def system_and_partition(draw, max_n=5):
    P = draw(systems(min_n=1, max_n=max_n))
    blocks = draw(st.sampled_from(list(set_partitions(P.ground))))
    return P, Partition.of(blocks)


@given(system_and_partition())
def test_quotient_is_a_valid_homomorphic_image(Pp):
    P, part = Pp
    Q = quotient_by_partition(P, part)
    assert not check(Q)
    assert is_homomorphism(P, Q, part.to_map(P.ground))


@given(system_and_partition())
def test_quotient_matches_brute_force_oracle(Pp):
    P, part = Pp
    if len(part.cells) > 3:
        return
    families = [S.family for S in enumerate_all(len(part.cells), normalized=False)]
    cells = [P.mask(c) for c in part.cells]
    assert set(quotient_by_partition(P, part).family) == quotient_oracle(P, cells, families)


@given(systems(max_n=4), systems(max_n=4))
def test_join_is_an_upper_bound(P, Q):
    J = join([P, Q])
    assert not check(J)
    for S in (P, Q):
        lifted = {J.mask(S.labels(m)) for m in S.family}
        assert lifted <= set(J.family)


@given(systems(max_n=4), systems(max_n=4), systems(max_n=4))
def test_join_is_commutative_associative_idempotent(P, Q, R):
    assert join([P, Q]) == join([Q, P])
    assert join([join([P, Q]), R]) == join([P, join([Q, R])]) == join([P, Q, R])
    assert join([P, P]) == P
