"""Stars, astral sets, index sets and the cutset family of predicates."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from ._bits import bits, iter_bits, mask_of, popcount
from .errors import EmptySubset, GuardExceeded, HypothesisViolated
from .poset import (
    FinitePoset,
    greatest_mask,
    is_antichain_mask,
    least_mask,
    lower_bounds_mask,
    maximal_chains_masks,
    upper_bounds_mask,
)

COHERENCE_GUARD = 20


def star_mask(P: FinitePoset, a: int) -> int:
    return P.down[a] | P.up[a]


def star_set_mask(P: FinitePoset, A: int) -> int:
    if not A:
        raise EmptySubset("the star of a set needs a non-empty set")
    acc = P.full
    for a in iter_bits(A):
        acc &= P.down[a] | P.up[a]
    return acc


def index_set_mask(P: FinitePoset, X: int, B: int) -> int:
    """Elements x of X with B inside st(x); all of X when B is empty."""
    return mask_of(x for x in iter_bits(X) if B & ~(P.down[x] | P.up[x]) == 0)


def star(P: FinitePoset, a: int) -> frozenset:
    """Elements comparable to ``a``, including ``a`` itself."""
    return bits(star_mask(P, a))


def star_set(P: FinitePoset, A: Iterable[int]) -> frozenset:
    return bits(star_set_mask(P, mask_of(A)))


def is_astral(P: FinitePoset, A: Iterable[int]) -> bool:
    return star_set_mask(P, mask_of(A)) != 0


def index_set(P: FinitePoset, X: Iterable[int], B: Iterable[int]) -> frozenset:
    return bits(index_set_mask(P, mask_of(X), mask_of(B)))


# --------------------------------------------------------------------------
# cutsets


def uncovered_chain(P: FinitePoset, X: Iterable[int]):
    """A maximal chain contained in no star of a member of X, or None.

    A chain inside st(a) has all its subchains inside st(a), so only maximal
    chains need checking. With P non-empty and X empty every chain is
    uncovered; the empty poset has only the empty chain, which then needs
    some element of X as well.
    """
    Xm = mask_of(X)
    if P.n == 0:
        return None if Xm else frozenset()
    stars = [star_mask(P, a) for a in iter_bits(Xm)]
    for c in maximal_chains_masks(P):
        if not any(c & ~s == 0 for s in stars):
            return bits(c)
    return None


def is_cutset(P: FinitePoset, X: Iterable[int]) -> bool:
    return uncovered_chain(P, X) is None


def bounded_subsets_masks(P: FinitePoset, X: int, guard: int = COHERENCE_GUARD):
    """Every non-empty bounded subset of X, each exactly once, ordered by size
    then by sorted ids."""
    if popcount(X) > guard:
        raise GuardExceeded(f"|X| = {popcount(X)} exceeds the coherence guard {guard}")
    # a bounded subset lies in X ∩ P_{>=y} or X ∩ P_{<=y} for some y
    pools = set()
    for y in range(P.n):
        pools.add(X & P.up[y])
        pools.add(X & P.down[y])
    pools.discard(0)
    pools = [p for p in pools if not any(p != q and p & ~q == 0 for q in pools)]
    found = set()
    for pool in pools:
        ids = list(iter_bits(pool))
        for k in range(1, len(ids) + 1):
            for combo in combinations(ids, k):
                found.add(mask_of(combo))
    return sorted(found, key=lambda m: (popcount(m), sorted(iter_bits(m))))


def incoherent_subset(P: FinitePoset, X: Iterable[int], guard: int = COHERENCE_GUARD):
    """First non-empty bounded subset of X with neither meet nor join, or None."""
    Xm = mask_of(X)
    for A in bounded_subsets_masks(P, Xm, guard):
        if popcount(A) == 1:
            continue
        if greatest_mask(P, lower_bounds_mask(P, A)) is None and \
                least_mask(P, upper_bounds_mask(P, A)) is None:
            return bits(A)
    return None


def is_coherent_cutset(P: FinitePoset, X: Iterable[int], guard: int = COHERENCE_GUARD) -> bool:
    X = mask_of(X)
    return is_cutset(P, bits(X)) and incoherent_subset(P, bits(X), guard) is None


def is_crosscut(P: FinitePoset, X: Iterable[int], guard: int = COHERENCE_GUARD) -> bool:
    X = mask_of(X)
    return is_antichain_mask(P, X) and is_coherent_cutset(P, bits(X), guard)


def astral_star_center(P: FinitePoset, X: Iterable[int], sigma: Iterable[int],
                       guard: int = COHERENCE_GUARD) -> int:
    """An element z of st(sigma) whose star contains st(sigma).

    Follows the constructive argument: take the least-id y in st(sigma), split
    sigma into the part below y and the part above y, and use the meet (else
    join) of the lower part when it is non-empty, otherwise of the upper part.
    The result is re-checked against a scan of every candidate.
    """
    Xm, S = mask_of(X), mask_of(sigma)
    if not S:
        raise EmptySubset("sigma must be non-empty")
    if S & ~Xm:
        raise HypothesisViolated("sigma is not a subset of X", bits(S & ~Xm))
    st = star_set_mask(P, S)
    if not st:
        raise HypothesisViolated("sigma is not astral", bits(S))
    if not is_cutset(P, bits(Xm)):
        raise HypothesisViolated("X is not a cutset", uncovered_chain(P, bits(Xm)))
    bad = incoherent_subset(P, bits(Xm), guard)
    if bad is not None:
        raise HypothesisViolated("X is not coherent", bad)

    y = (st & -st).bit_length() - 1
    part = S & P.down[y] or S & P.up[y]
    z = greatest_mask(P, lower_bounds_mask(P, part))
    if z is None:
        z = least_mask(P, upper_bounds_mask(P, part))
    if z is None:
        # unreachable for a coherent X: part is bounded by y
        raise HypothesisViolated("bounded subset without meet or join", bits(part))

    if not (st >> z & 1 and st & ~star_mask(P, z) == 0):
        raise AssertionError("constructed centre does not dominate st(sigma)")
    if not any(st & ~star_mask(P, w) == 0 for w in iter_bits(st)):
        raise AssertionError("no centre exists, contradicting the construction")
    return z
