"""Permutation primitives against definitional oracles."""

import pytest
from hypothesis import given, strategies as st

from charkit import perms
from charkit.errors import InvalidPermutation


def perm_of(n):
    return st.permutations(list(range(n))).map(tuple)


same_degree_pairs = st.integers(2, 7).flatmap(
    lambda n: st.tuples(perm_of(n), perm_of(n))
)
same_degree_triples = st.integers(2, 7).flatmap(
    lambda n: st.tuples(perm_of(n), perm_of(n), perm_of(n))
)
single_perm = st.integers(1, 7).flatmap(perm_of)


def test_images_roundtrip():
    p = perms.from_images([2, 3, 1, 5, 4, 6], 6)
    assert p == (1, 2, 0, 4, 3, 5)
    assert perms.to_images(p) == [2, 3, 1, 5, 4, 6]


@pytest.mark.parametrize(
    "images,degree",
    [
        ([1, 1, 2], 3),
        ([1, 2], 3),
        ([0, 1, 2], 3),
        ([1, 2, 4], 3),
    ],
)
def test_bad_image_lists_rejected(images, degree):
    with pytest.raises(InvalidPermutation):
        perms.from_images(images, degree)


@given(same_degree_pairs)
def test_compose_applies_right_factor_first(pair):
    a, b = pair
    c = perms.compose(a, b)
    assert all(c[i] == a[b[i]] for i in range(len(a)))


@given(same_degree_triples)
def test_compose_associative(triple):
    a, b, c = triple
    left = perms.compose(perms.compose(a, b), c)
    right = perms.compose(a, perms.compose(b, c))
    assert left == right


@given(single_perm)
def test_inverse_and_identity_laws(p):
    e = perms.identity(len(p))
    assert perms.compose(p, perms.inverse(p)) == e
    assert perms.compose(perms.inverse(p), p) == e
    assert perms.compose(p, e) == p
    assert perms.compose(e, p) == p


@given(same_degree_pairs)
def test_conjugate_matches_definition(pair):
    g, x = pair
    expected = perms.compose(perms.compose(g, x), perms.inverse(g))
    assert perms.conjugate(g, x) == expected


@given(single_perm)
def test_order_matches_iterated_composition(p):
    e = perms.identity(len(p))
    q = p
    k = 1
    while q != e:
        q = perms.compose(q, p)
        k += 1
    assert perms.perm_order(p) == k


def test_cycle_notation_known_values():
    p = perms.from_images([2, 3, 1, 5, 4, 6], 6)
    assert perms.format_cycles(p) == "(1 2 3)(4 5)"
    assert perms.parse_cycles("(1 2 3)(4 5)", 6) == p
    assert perms.parse_cycles("(1,2,3)(4,5)", 6) == p
    assert perms.format_cycles(perms.identity(4)) == "()"
    assert perms.parse_cycles("()", 4) == perms.identity(4)
    assert perms.parse_cycles("e", 4) == perms.identity(4)


@given(single_perm)
def test_cycle_notation_roundtrip(p):
    assert perms.parse_cycles(perms.format_cycles(p), len(p)) == p


@pytest.mark.parametrize(
    "text,degree",
    [
        ("(1 2", 3),
        ("(1 2)(", 3),
        ("(1 4)", 3),
        ("(0 1)", 3),
        ("(1 1)", 3),
        ("(1 x)", 3),
        ("1 2 3", 3),
    ],
)
def test_malformed_cycles_rejected(text, degree):
    with pytest.raises(InvalidPermutation):
        perms.parse_cycles(text, degree)
