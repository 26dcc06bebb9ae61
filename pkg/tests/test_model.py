from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from randcrn.model import (
    EDGE_CLASSES,
    ZERO,
    Complex,
    EdgeClass,
    Reaction,
    ReactionNetwork,
    canonicalize_complex,
    classify_edge,
    edge_class_size,
    reaction_vector,
    total_complex_count,
)

from conftest import all_complexes


def enumerate_classes(n):
    """Brute-force partition of all unordered complex pairs by complex orders."""
    classes = {cls: set() for cls in EDGE_CLASSES}
    for a, b in combinations(all_complexes(n), 2):
        lo, hi = sorted((a, b), key=Complex.sort_key)
        classes[EdgeClass((lo.order, hi.order))].add((lo, hi))
    return classes


def test_canonicalize_sorts():
    assert canonicalize_complex([(2, 1), (1, 1)]) == Complex(((1, 1), (2, 1)))


def test_canonicalize_merges_duplicates():
    assert canonicalize_complex([(1, 1), (1, 1)]) == Complex(((1, 2),))


def test_canonicalize_empty_is_zero():
    assert canonicalize_complex([]) == ZERO
    assert canonicalize_complex([(3, 0)]) == ZERO


def test_canonicalize_rejects_negative():
    with pytest.raises(ValueError):
        canonicalize_complex([(1, -1)])


@given(st.lists(st.tuples(st.integers(1, 6), st.integers(0, 3)), max_size=8))
def test_canonical_form_is_order_independent(terms):
    c = canonicalize_complex(terms)
    assert c == canonicalize_complex(reversed(terms))
    assert c.order == sum(k for _, k in terms)
    species = [s for s, _ in c.terms]
    assert species == sorted(set(species))


def test_complex_rejects_unsorted_terms():
    with pytest.raises(ValueError):
        Complex(((2, 1), (1, 1)))


def test_reaction_rejects_identical_sides():
    with pytest.raises(ValueError):
        Reaction(Complex.of(1), Complex.of(1))


@pytest.mark.parametrize(
    "source, product, n, expected",
    [
        (Complex.of(1, 2), Complex.of(2, 2), 2, [-1, 1]),
        (Complex.of(1, 2), Complex.of(2), 2, [-1, 0]),
        (ZERO, Complex.of(1), 1, [1]),
    ],
)
def test_reaction_vector(source, product, n, expected):
    assert reaction_vector(Reaction(source, product), n) == expected


def test_reaction_vector_species_out_of_range():
    with pytest.raises(ValueError):
        reaction_vector(Reaction(ZERO, Complex.of(3)), 2)


@pytest.mark.parametrize("n, expected", [(2, 6), (0, 1), (10, 66)])
def test_total_complex_count(n, expected):
    assert total_complex_count(n) == expected


def test_total_complex_count_matches_listing():
    assert [str(c) for c in all_complexes(2)] == ["0", "S1", "S2", "2 S1", "S1 + S2", "2 S2"]
    for n in range(0, 12):
        assert total_complex_count(n) == len(all_complexes(n))


def test_edge_class_size_examples():
    assert edge_class_size(EdgeClass.E02, 4) == len(enumerate_classes(4)[EdgeClass.E02]) == 10
    assert edge_class_size(EdgeClass.E22, 2) == len(enumerate_classes(2)[EdgeClass.E22]) == 3
    assert edge_class_size(EdgeClass.E01, 7) == 7


@pytest.mark.parametrize("n", range(1, 31))
def test_edge_class_sizes_match_enumeration(n):
    if n > 12:
        # enumeration of E22 grows like n**4; count by orders instead
        by_order = {k: sum(1 for c in all_complexes(n) if c.order == k) for k in range(3)}
        counts = {
            EdgeClass.E01: by_order[0] * by_order[1],
            EdgeClass.E02: by_order[0] * by_order[2],
            EdgeClass.E11: by_order[1] * (by_order[1] - 1) // 2,
            EdgeClass.E12: by_order[1] * by_order[2],
            EdgeClass.E22: by_order[2] * (by_order[2] - 1) // 2,
        }
    else:
        counts = {cls: len(edges) for cls, edges in enumerate_classes(n).items()}
    for cls in EDGE_CLASSES:
        assert edge_class_size(cls, n) == counts[cls], (cls, n)


@pytest.mark.parametrize("n", range(1, 9))
def test_classes_partition_all_pairs(n):
    classes = enumerate_classes(n)
    total = sum(len(v) for v in classes.values())
    N = total_complex_count(n)
    assert total == N * (N - 1) // 2
    assert sum(edge_class_size(c, n) for c in EDGE_CLASSES) == total
    for cls, edges in classes.items():
        for lo, hi in edges:
            assert classify_edge(Reaction(lo, hi)) is cls
            assert classify_edge(Reaction(hi, lo)) is cls


@pytest.mark.parametrize(
    "a, b, cls",
    [
        (Complex.of(1), Complex.of(2, 3), EdgeClass.E12),
        (ZERO, Complex.of(1, 1), EdgeClass.E02),
        (Complex.of(1, 1), Complex.of(1, 2), EdgeClass.E22),
    ],
)
def test_classify_edge(a, b, cls):
    assert classify_edge(Reaction(a, b)) is cls


def test_classify_edge_rejects_ternary():
    with pytest.raises(ValueError):
        classify_edge(Reaction(Complex.of(1, 1, 1), ZERO))


def test_network_derives_complexes_and_species():
    g = ReactionNetwork.from_reactions([Reaction(ZERO, Complex.of(1, 3))])
    assert g.n_species == 3
    assert set(g.complexes) == {ZERO, Complex.of(1, 3)}
    assert g.species_used == {1, 3}


def test_empty_network():
    g = ReactionNetwork(0)
    assert g.is_empty() and g.complexes == () and g.species_used == frozenset()


def test_network_rejects_undeclared_species():
    with pytest.raises(ValueError):
        ReactionNetwork(1, frozenset([Reaction(ZERO, Complex.of(2))]))
