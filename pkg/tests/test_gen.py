import pytest
from hypothesis import given, strategies as st

from autsys import check, is_poset
from autsys.core import canonical_form
from autsys.gen import (
    GenSpec,
    Method,
    TooLarge,
    default_labels,
    enumerate_all,
    enumerate_naive,
    iso_classes,
    random_system,
)


def test_small_enumerations():
    assert [P.family for P in enumerate_all(1)] == [(0, 1)]
    two = {P.family for P in enumerate_all(2)}
    assert two == {(0, 1, 3), (0, 2, 3), (0, 1, 2, 3)}


@pytest.mark.parametrize("normalized,counts", [
    # labelled antimatroids, OEIS A224913
    (True, [1, 1, 3, 22, 485]),
    (False, [1, 2, 6, 35, 596]),
])
def test_labelled_counts(normalized, counts):
    assert [sum(1 for _ in enumerate_all(n, normalized)) for n in range(5)] == counts


@pytest.mark.parametrize("n", range(4))
@pytest.mark.parametrize("normalized", [True, False])
def test_backtracking_agrees_with_naive_filter(n, normalized):
    fast = list(enumerate_all(n, normalized))
    slow = list(enumerate_naive(n, normalized))
    assert len(fast) == len(set(fast)) == len(slow)
    assert set(fast) == set(slow)


def test_isomorphism_classes_of_normalized_systems():
    # unlabelled antimatroids, OEIS A119770
    assert [len(iso_classes(enumerate_all(n))) for n in range(5)] == [1, 1, 2, 6, 34]
    classes = iso_classes(enumerate_all(3))
    assert len({canonical_form(P) for P in classes}) == len(classes)


def test_exhaustive_size_guard():
    with pytest.raises(TooLarge):
        next(enumerate_all(5))
    with pytest.raises(ValueError):
        next(enumerate_all(-1))
    assert sum(1 for _ in enumerate_all(5, max_n=5)) == 59386


def test_default_labels_sort_in_index_order():
    assert default_labels(3) == ("e1", "e2", "e3")
    for n in (9, 10, 12):
        assert list(default_labels(n)) == sorted(default_labels(n))


@given(st.integers(1, 8), st.booleans(), st.integers(0, 10**6), st.sampled_from(list(Method)))
def test_random_systems_are_valid_and_deterministic(n, normalized, seed, method):
    spec = GenSpec(n, normalized=normalized, seed=seed, method=method)
    P = random_system(spec)
    assert P == random_system(spec)
    assert P.ground == default_labels(n)
    assert not check(P)
    if normalized:
        assert P.full in P
    if method is Method.FROM_RANDOM_POSET:
        assert is_poset(P)


def test_chain_closure_at_four_points_is_valid():
    for seed in range(200):
        assert not check(random_system(GenSpec(4, seed=seed, method=Method.CHAIN_CLOSURE)))


def test_random_size_guards():
    with pytest.raises(TooLarge):
        random_system(GenSpec(11))
    with pytest.raises(ValueError):
        random_system(GenSpec(0))


def test_random_methods_cover_non_posets():
    seen = {random_system(GenSpec(5, seed=s)).family for s in range(50)}
    assert len(seen) > 25
    assert any(not is_poset(random_system(GenSpec(5, seed=s))) for s in range(50))
