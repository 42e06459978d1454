from itertools import combinations

import pytest
from hypothesis import given, settings

from crosscut import fixtures
from crosscut.complexes import (
    SimplicialComplex,
    closed_star,
    crosscut_complex,
    enumerate_complexes,
    euler_characteristic,
    f_vector,
    face_poset,
    format_complex,
    order_complex,
    parse_complex,
    simplex,
)
from crosscut.errors import FormatError, NotASimplex, SizeGuard
from crosscut.poset import induced, maximal_chains, mnl, mxl
from crosscut.stars import is_astral, star_set
from crosscut.topology import homology
from helpers import chains_oracle, posets

EX1 = fixtures.poset("EX1")
EX1P = fixtures.poset("EX1prime")
EX3 = fixtures.poset("EX3")
CHAIN2 = fixtures.poset("CHAIN2")


def labelled(K):
    return sorted(tuple(f) for f in K.facet_labels())


def test_order_complex_examples():
    K = order_complex(EX3)
    assert K.n_vertices == 5
    assert labelled(K) == [("0", "2"), ("0", "3"), ("0", "4"), ("1", "3"), ("1", "4")]
    S = order_complex(fixtures.poset("SINGLE"))
    assert S.n_vertices == 1 and len(S.facets) == 1
    assert labelled(order_complex(CHAIN2)) == [("0", "1")]


@settings(max_examples=40, deadline=None)
@given(posets(max_n=6))
def test_order_complex_simplices_are_chains(P):
    K = order_complex(P)
    assert set(K.simplices()) == set(chains_oracle(P))


def test_face_poset_counts():
    assert face_poset(simplex("abc")).poset.n == 7
    assert face_poset(simplex("ab")).poset.n == 3
    assert face_poset(order_complex(EX3)).poset.n == 10
    assert fixtures.two_triangle_face_poset().n == 11


def test_face_poset_guard():
    with pytest.raises(SizeGuard):
        face_poset(simplex("abcdefgh"), guard=100)


@settings(max_examples=30, deadline=None)
@given(posets(max_n=6))
def test_face_poset_structure(P):
    K = order_complex(P)
    F = face_poset(K)
    X = F.poset
    assert {F.simplices[i] for i in mxl(X)} == set(K.facets)
    for a, b in X.covers:
        assert bin(F.simplices[b]).count("1") == bin(F.simplices[a]).count("1") + 1
    for c in maximal_chains(X):
        top = max(c, key=lambda i: bin(F.simplices[i]).count("1"))
        assert len(c) == bin(F.simplices[top]).count("1")


def test_crosscut_complex_examples():
    K = crosscut_complex(EX1, mxl(EX1))
    assert labelled(K) == [("5", "6", "7")]
    assert f_vector(K) == (3, 3, 1) and euler_characteristic(K) == 1
    assert labelled(crosscut_complex(EX3, mnl(EX3))) == [("0", "1")]
    assert labelled(crosscut_complex(CHAIN2, {0, 1})) == [("0", "1")]
    # removing 4 leaves the same complex
    assert K.same_as(crosscut_complex(EX1P, mxl(EX1P)))


@settings(max_examples=40, deadline=None)
@given(posets(max_n=7))
def test_crosscut_complex_is_astral_subsets(P):
    for X in (mxl(P), mnl(P), frozenset(range(P.n))):
        K = crosscut_complex(P, X)
        xs = sorted(X)
        assert K.vertices == tuple(P.labels[x] for x in xs)
        for k in range(1, min(len(xs), 6) + 1):
            for A in combinations(range(len(xs)), k):
                assert K.contains(A) == is_astral(P, {xs[i] for i in A})


def test_closed_star_examples():
    K = order_complex(EX3)
    f = K.facets[0]
    verts = [v for v in range(K.n_vertices) if f >> v & 1]
    assert closed_star(K, verts).canonical() == ((K.vertices[verts[0]], K.vertices[verts[1]]),)
    zero = EX3.id("0")
    assert closed_star(K, [zero]).same_as(
        order_complex(induced(EX3, star_set(EX3, {zero}))))
    E = simplex("ab")
    assert closed_star(E, [0]).same_as(E)
    with pytest.raises(NotASimplex):
        closed_star(K, [EX3.id("0"), EX3.id("1")])


@settings(max_examples=30, deadline=None)
@given(posets(max_n=6))
def test_closed_star_of_chain_is_order_complex_of_star(P):
    K = order_complex(P)
    for sigma in chains_oracle(P):
        left = closed_star(K, sigma)
        sub = induced(P, star_set(P, sigma))
        right = order_complex(sub)
        assert left.canonical() == right.canonical()


def test_f_vector_examples():
    assert f_vector(simplex("abc")) == (3, 3, 1)
    assert euler_characteristic(simplex("abc")) == 1
    K = order_complex(EX3)
    assert f_vector(K) == (5, 5) and euler_characteristic(K) == 0


@pytest.mark.parametrize("name", sorted(fixtures.COMPLEXES))
def test_euler_characteristic_matches_homology(name):
    K = fixtures.complex_(name)
    h = homology(K)
    assert euler_characteristic(K) == sum((-1) ** d * b for d, b in enumerate(h.betti))


def test_text_format():
    for name in fixtures.COMPLEXES:
        K = fixtures.complex_(name)
        assert parse_complex(format_complex(K)).canonical() == K.canonical()
    with pytest.raises(FormatError, match="line 2"):
        parse_complex("facet: a b\nedge: c d\n")
    K = parse_complex("facet: a b c\nfacet: a b\n")
    assert len(K.facets) == 1


def test_canonical_form_ignores_facet_order():
    A = SimplicialComplex.from_facets([["a", "b"], ["b", "c"]])
    B = SimplicialComplex.from_facets([["b", "c"], ["a", "b"]])
    assert A.same_as(B)


def test_enumeration_counts():
    # isomorphism classes of complexes using every one of n vertices
    assert [len(enumerate_complexes(n)) for n in range(1, 5)] == [1, 2, 5, 20]
