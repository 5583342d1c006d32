import itertools

import pytest
from hypothesis import given

import oracles
from autsys import (
    AutonomousSystem,
    InvalidSystem,
    MalformedInput,
    NotAutonomous,
    autonomous_part,
    canonical_form,
    check,
    full_chain,
    is_axiom,
    isomorphic,
    normalize,
    validate,
)
from autsys.core import ElementOutside, bits, check_masks, compress, permute
from autsys.gen import enumerate_all, enumerate_naive
from strategies import systems

P3_SETS = [[], ["v1"], ["v3"], ["v1", "v3"], ["v1", "v2"], ["v2", "v3"], ["v1", "v2", "v3"]]


def test_validate_p3_family_is_clean():
    report = validate(["v1", "v2", "v3"], P3_SETS)
    assert not report
    assert report.summary() == "valid"


def test_validate_missing_singletons_is_an_accessibility_violation():
    report = validate(["p", "q"], [[], ["p", "q"]])
    assert report.accessibility_violations == (0b11,)
    assert report.union_violations == ()
    assert report.as_dict()["accessibility_violations"] == [["p", "q"]]


def test_validate_missing_union():
    report = validate(["p", "q"], [[], ["p"], ["q"]])
    assert report.union_violations == ((0b01, 0b10),)
    assert not report.accessibility_violations


def test_validate_missing_empty_set():
    report = validate(["p"], [["p"]])
    assert report.missing_empty
    assert "empty set" in report.summary()


def test_validate_rejects_unknown_and_duplicate_labels():
    with pytest.raises(MalformedInput):
        validate(["p"], [["q"]])
    with pytest.raises(MalformedInput):
        validate(["p", "p"], [])
    with pytest.raises(MalformedInput):
        validate(["p", "q"], ["pq"])


def test_from_sets_adds_empty_and_raises_on_bad_family():
    P = AutonomousSystem.from_sets(["p"], [["p"]])
    assert P.family == (0, 1)
    with pytest.raises(InvalidSystem) as info:
        AutonomousSystem.from_sets(["p", "q"], [["p"], ["q"]])
    assert info.value.report.union_violations


def test_ground_must_be_sorted():
    with pytest.raises(MalformedInput):
        AutonomousSystem(("b", "a"), (0,))
    with pytest.raises(MalformedInput):
        AutonomousSystem(("a",), (0, 2))


def test_masks_and_labels(P4):
    assert P4.ground == ("a", "b", "x", "y")
    m = P4.mask(["x", "a"])
    assert P4.labels(m) == ("a", "x")
    assert P4.mask(m) == m
    with pytest.raises(ElementOutside):
        P4.mask(["z"])
    with pytest.raises(ElementOutside):
        P4.mask(1 << 4)
    with pytest.raises(TypeError):
        P4.mask("ax")


def test_sets_are_sorted_by_size_then_lexicographically(P3):
    assert [list(s) for s in P3.sets()] == [
        [], ["v1"], ["v3"], ["v1", "v2"], ["v1", "v3"], ["v2", "v3"], ["v1", "v2", "v3"]
    ]


def test_bit_helpers():
    assert list(bits(0b10110)) == [1, 2, 4]
    assert compress(0b10100, 0b10110) == 0b110
    assert permute(0b011, [2, 0, 1]) == 0b101


def test_autonomous_part(P3):
    assert autonomous_part(P3, ["v2", "v3"]) == P3.mask(["v2", "v3"])
    assert autonomous_part(P3, ["v2"]) == 0
    assert autonomous_part(P3, []) == 0


def test_normalize_examples(P3):
    assert normalize(P3) is P3
    P = AutonomousSystem.from_sets(["p", "q", "r"], [["p"], ["p", "q"]])
    Q = normalize(P)
    assert Q.ground == ("p", "q")
    assert Q.sets() == [(), ("p",), ("p", "q")]
    E = normalize(AutonomousSystem.from_sets(["p"], []))
    assert E.ground == () and E.family == (0,)


def test_full_chain_examples(CHAIN2, P3):
    assert full_chain(CHAIN2, ["p", "q"]) == ["p", "q"]
    order = full_chain(P3, P3.full)
    fam = oracles.label_family(P3)
    assert all(frozenset(order[:k]) in fam for k in range(4))
    with pytest.raises(NotAutonomous):
        full_chain(P3, ["v2"])


def test_is_axiom(P4, CHAIN2):
    assert is_axiom(P4, "a")
    assert not is_axiom(P4, "x")
    assert is_axiom(CHAIN2, "p")
    assert not is_axiom(CHAIN2, "q")


def test_isomorphic_examples(P3, CHAIN2):
    rev = AutonomousSystem.from_sets(
        ["v1", "v2", "v3"], [[{"v1": "v3", "v2": "v2", "v3": "v1"}[x] for x in s] for s in P3_SETS]
    )
    assert rev == P3  # the path is symmetric, so relabelling gives the same family
    iso = isomorphic(P3, rev)
    assert iso is not None and iso["v2"] == "v2"
    chain3 = AutonomousSystem.from_sets(["p", "q", "r"], [["p"], ["p", "q"], ["p", "q", "r"]])
    assert isomorphic(P3, chain3) is None
    assert isomorphic(CHAIN2, CHAIN2) == {"p": "p", "q": "q"}


@given(systems(max_n=5))
def test_generated_systems_satisfy_axioms(P):
    assert not check(P)
    assert oracles.is_union_closed(P)
    assert oracles.has_order_property(P)


@given(systems(max_n=5))
def test_full_chain_prefixes_are_members(P):
    fam = oracles.label_family(P)
    for A in P.family:
        order = full_chain(P, A)
        assert sorted(order) == list(P.labels(A))
        assert all(frozenset(order[:k]) in fam for k in range(len(order) + 1))


@given(systems(max_n=5))
def test_autonomous_part_is_largest_member_inside(P):
    for X in range(P.full + 1):
        part = autonomous_part(P, X)
        assert part in P and not part & ~X
        assert all(m & ~part == 0 for m in P.family if not m & ~X)


@given(systems(max_n=5))
def test_normalize_makes_ground_autonomous(P):
    Q = normalize(P)
    assert Q.full in Q
    assert not check(Q)
    assert oracles.label_family(Q) == oracles.label_family(P)


@given(systems(max_n=4), systems(max_n=4))
def test_isomorphic_agrees_with_brute_force(P, Q):
    iso = isomorphic(P, Q)
    assert (iso is not None) == oracles.isomorphic(P, Q)
    assert (canonical_form(P) == canonical_form(Q)) == (iso is not None)
    if iso is not None:
        assert {frozenset(iso[x] for x in s) for s in P.sets()} == oracles.label_family(Q)


def test_check_masks_agrees_with_definition_on_all_small_families():
    # every family over 2 points, valid or not
    for pick in itertools.product((0, 1), repeat=4):
        fam = [m for m, t in zip(range(4), pick) if t]
        report = check_masks(("p", "q"), fam)
        P = AutonomousSystem(("p", "q"), tuple(fam))
        valid = 0 in fam and oracles.is_union_closed(P) and oracles.has_order_property(P)
        assert (not report) == valid


@pytest.mark.parametrize("n", range(4))
def test_enumerated_systems_satisfy_the_definition(n):
    for P in enumerate_naive(n, normalized=False):
        assert oracles.is_union_closed(P) and oracles.has_order_property(P)
    assert len(set(enumerate_all(n, normalized=False))) == len(list(enumerate_naive(n, normalized=False)))
