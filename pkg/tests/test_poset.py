import pytest
from hypothesis import given, settings

from crosscut import fixtures
from crosscut.errors import CycleDetected, DuplicateLabel, EmptySubset, FormatError, UnknownLabel
from crosscut.poset import (
    MonotoneMap,
    antichain,
    build_poset,
    chain,
    connected_components,
    format_poset,
    is_antichain,
    is_chain,
    is_bounded,
    is_isomorphic,
    join,
    linear_extension,
    maximal_chains,
    meet,
    mnl,
    mxl,
    opposite,
    parse_poset,
    permuted,
    relabel,
    to_dot,
)
from crosscut.stars import star_set
from helpers import (
    chains_oracle,
    components_oracle,
    join_oracle,
    leq_oracle,
    meet_oracle,
    posets,
)


def ids(P, *labels):
    return {P.id(str(x)) for x in labels}


EX1 = fixtures.poset("EX1")
EX3 = fixtures.poset("EX3")
Q3 = fixtures.poset("Q3")
CHAIN2 = fixtures.poset("CHAIN2")


def test_build_ex1_order():
    P = build_poset([str(i) for i in range(8)],
                    [(a, b) for a, b in EX1.cover_labels()])
    assert P == EX1
    assert P.leq(P.id("0"), P.id("6"))
    assert not P.comparable(P.id("5"), P.id("6"))


def test_build_singleton_and_errors():
    P = build_poset(["a"], [])
    assert P.n == 1 and P.leq(0, 0)
    with pytest.raises(CycleDetected):
        build_poset(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(DuplicateLabel):
        build_poset(["a", "a"], [])
    with pytest.raises(UnknownLabel):
        build_poset(["a"], [("a", "z")])


def test_generating_pairs_need_not_be_covers():
    P = build_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert P.cover_labels() == [("a", "b"), ("b", "c")]


@settings(max_examples=60, deadline=None)
@given(posets())
def test_closure_of_covers_is_the_order(P):
    labels = list(P.labels)
    closure = leq_oracle(labels, P.cover_labels())
    assert closure == {(labels[a], labels[b]) for a in range(P.n) for b in range(P.n)
                       if P.leq(a, b)}
    # covers: a < b with nothing strictly between
    for a in range(P.n):
        for b in range(P.n):
            between = any(P.lt(a, c) and P.lt(c, b) for c in range(P.n))
            is_cover = (labels[a], labels[b]) in P.cover_labels()
            assert is_cover == (P.lt(a, b) and not between)


@settings(max_examples=60, deadline=None)
@given(posets())
def test_opposite_is_an_involution(P):
    assert opposite(opposite(P)) == P
    Q = opposite(P)
    assert all(P.leq(a, b) == Q.leq(b, a) for a in range(P.n) for b in range(P.n))
    assert mxl(Q) == mnl(P)


def test_opposite_examples():
    assert opposite(CHAIN2).leq(1, 0)
    A = antichain(3)
    assert opposite(A) == A
    assert mxl(opposite(EX3)) == ids(EX3, 0, 1)


def test_extremal_elements():
    assert mxl(EX1) == ids(EX1, 5, 6, 7)
    assert mnl(EX3) == ids(EX3, 0, 1)
    S = fixtures.poset("SINGLE")
    assert mxl(S) == mnl(S) == {0}


def test_components_examples():
    blocks = connected_components(EX1, star_set(EX1, ids(EX1, 6, 7)))
    assert sorted(map(sorted, blocks)) == [sorted(ids(EX1, 0, 1, 2, 3)), sorted(ids(EX1, 4))]
    assert len(connected_components(chain(4))) == 1
    assert len(connected_components(antichain(2))) == 2


@settings(max_examples=60, deadline=None)
@given(posets())
def test_components_partition(P):
    S = set(range(0, P.n, 2)) | {P.n - 1}
    blocks = connected_components(P, S)
    assert set().union(*blocks) == S
    assert sum(len(b) for b in blocks) == len(S)
    assert sorted(map(sorted, blocks)) == sorted(map(sorted, components_oracle(P, S)))
    for i, b in enumerate(blocks):
        for c in blocks[i + 1:]:
            assert not any(P.comparable(x, y) for x in b for y in c)


def test_chains_and_antichains():
    assert is_chain(EX1, ids(EX1, 0, 2, 6))
    assert is_antichain(EX1, ids(EX1, 5, 6, 7))
    assert maximal_chains(CHAIN2) == [frozenset({0, 1})]


@settings(max_examples=40, deadline=None)
@given(posets())
def test_maximal_chains_against_brute_force(P):
    allc = chains_oracle(P)
    maximal = {c for c in allc if not any(c < d for d in allc)}
    found = maximal_chains(P)
    assert len(found) == len(set(found))
    assert set(found) == maximal


def test_bounds_examples():
    S = ids(EX1, 5, 6)
    assert is_bounded(EX1, S)
    assert meet(EX1, S) is None and join(EX1, S) is None
    for x in range(EX1.n):
        assert meet(EX1, {x}) == join(EX1, {x}) == x
    bc = ids(Q3, "b", "c")
    assert meet(Q3, bc) == Q3.id("a") and join(Q3, bc) is None
    with pytest.raises(EmptySubset):
        meet(EX1, set())


@settings(max_examples=60, deadline=None)
@given(posets())
def test_meet_join_by_full_scan(P):
    for S in ({0}, {0, P.n - 1}, set(range(P.n))):
        assert meet(P, S) == meet_oracle(P, S)
        assert join(P, S) == join_oracle(P, S)


def test_isomorphism_examples():
    assert is_isomorphic(CHAIN2, antichain(2)) is None
    Q = relabel(EX1, [f"x{i}" for i in range(EX1.n)])
    assert is_isomorphic(EX1, Q) is not None


@settings(max_examples=60, deadline=None)
@given(posets())
def test_isomorphism_with_permuted_copy(P):
    perm = list(reversed(range(P.n)))
    Q = permuted(P, perm)
    phi = is_isomorphic(P, Q)
    assert phi is not None
    assert sorted(phi) == list(range(P.n))
    for a in range(P.n):
        for b in range(P.n):
            assert P.leq(a, b) == Q.leq(phi[a], phi[b])


def test_linear_extension_examples():
    assert linear_extension(CHAIN2) == [0, 1]
    ext = linear_extension(EX3)
    assert set(ext[:2]) == ids(EX3, 0, 1)
    ext = linear_extension(EX1)
    for k in range(len(ext)):
        prefix = set(ext[:k])
        assert all(y in prefix for x in prefix for y in range(EX1.n) if EX1.leq(y, x))


@settings(max_examples=60, deadline=None)
@given(posets())
def test_linear_extension_refines_order(P):
    ext = linear_extension(P)
    pos = {x: i for i, x in enumerate(ext)}
    assert sorted(ext) == list(range(P.n))
    assert all(pos[a] <= pos[b] for a in range(P.n) for b in range(P.n) if P.leq(a, b))


def test_monotone_map_rejects_non_monotone():
    with pytest.raises(ValueError):
        MonotoneMap(CHAIN2, CHAIN2, (1, 0))
    f = MonotoneMap(CHAIN2, CHAIN2, (1, 1))
    assert f.fixed_points() == [1]


def test_text_round_trip_and_errors():
    for name in fixtures.POSETS:
        P = fixtures.poset(name)
        assert parse_poset(format_poset(P)) == P
    P = parse_poset("# comment\nelements: a b c\na < b < c  # chained\n")
    assert P.cover_labels() == [("a", "b"), ("b", "c")]
    with pytest.raises(FormatError, match="line 2"):
        parse_poset("elements: a b\na <\n")
    with pytest.raises(FormatError, match="line 3"):
        parse_poset("elements: a b\na < b\nb < a\n")


def test_dot_has_only_covers():
    text = to_dot(fixtures.poset("EX1"))
    edges = [l for l in text.splitlines() if "->" in l]
    assert len(edges) == 12
    assert '"0" -> "5"' not in text
