"""The poset of connected components of star-sets of a cutset, and the
constructions built on it: minimum components, the star/index-set maps, the
retraction onto maxima of components, joins of minimal elements, and the poset
of facet intersections of a complex."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from ._bits import bits, iter_bits, mask_of, popcount
from .complexes import SimplicialComplex, crosscut_complex, simplex_label
from .errors import (
    EmptyGammaB,
    EmptySubset,
    GuardExceeded,
    HypothesisViolated,
    NoMaximum,
    NotConnected,
    SizeGuard,
)
from .poset import (
    FinitePoset,
    MonotoneMap,
    components_mask,
    greatest_mask,
    induced_mask,
    is_antichain_mask,
    is_connected_mask,
    least_mask,
    mnl_mask,
    mxl_mask,
    upper_bounds_mask,
)
from .stars import (
    COHERENCE_GUARD,
    incoherent_subset,
    index_set_mask,
    is_coherent_cutset,
    star_mask,
    star_set_mask,
    uncovered_chain,
)

CARRIER_GUARD = 100_000


@dataclass(frozen=True)
class CrosscutPoset:
    """Components ordered by inclusion.

    ``carriers[i]`` is the element set (mask over ``ambient``) of element i of
    ``poset``; ``generators[i]`` is a subset A of the cutset such that the
    carrier is a connected component of st(A).
    """

    ambient: FinitePoset
    cutset: int
    poset: FinitePoset
    carriers: tuple
    generators: tuple
    _where: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_where", {c: i for i, c in enumerate(self.carriers)})

    def __len__(self):
        return len(self.carriers)

    def carrier_sets(self) -> list:
        return [bits(c) for c in self.carriers]

    def index_of(self, carrier: Iterable[int] | int):
        """Element id of a carrier, or None when it is not in the poset."""
        m = carrier if isinstance(carrier, int) else mask_of(carrier)
        return self._where.get(m)

    def carrier_labels(self, i: int) -> list:
        return [self.ambient.labels[x] for x in iter_bits(self.carriers[i])]


def carrier_label(P: FinitePoset, mask: int) -> str:
    return "{" + ",".join(P.labels[x] for x in iter_bits(mask)) + "}"


def star_set_family(P: FinitePoset, X: int, guard: int = CARRIER_GUARD) -> dict:
    """All non-empty st(A), A a non-empty subset of X, mapped to the largest
    such A (which is the index set of the star-set).

    The family is the closure of the single stars under intersection, grown
    breadth-first without ever listing the subsets of X.
    """
    singles = [star_mask(P, x) for x in iter_bits(X)]
    family = {}
    frontier = []
    for s in singles:
        if s not in family:
            family[s] = None
            frontier.append(s)
    while frontier:
        nxt = []
        for S in frontier:
            for s in singles:
                T = S & s
                if T and T not in family:
                    family[T] = None
                    nxt.append(T)
                    if len(family) > guard:
                        raise SizeGuard(f"more than {guard} distinct star-sets")
        frontier = nxt
    return {S: index_set_mask(P, X, S) for S in family}


def crosscut_poset(P: FinitePoset, X: Iterable[int], guard: int = CARRIER_GUARD) -> CrosscutPoset:
    Xm = mask_of(X)
    if not Xm:
        raise EmptySubset("the cutset must be non-empty")
    family = star_set_family(P, Xm, guard)
    found = {}
    for S in sorted(family, key=lambda m: tuple(iter_bits(m))):
        for C in components_mask(P, S):
            found.setdefault(C, family[S])
            if len(found) > guard:
                raise SizeGuard(f"more than {guard} carriers")
    carriers = sorted(found, key=lambda m: tuple(iter_bits(m)))
    down = []
    for C in carriers:
        down.append(mask_of(j for j, D in enumerate(carriers) if D & ~C == 0))
    labels = [carrier_label(P, C) for C in carriers]
    base = FinitePoset.from_down_masks(labels, down)
    return CrosscutPoset(P, Xm, base, tuple(carriers), tuple(found[C] for C in carriers))


def crosscut_poset_bruteforce(P: FinitePoset, X: Iterable[int]) -> set:
    """Carrier masks by enumerating every non-empty subset of X (test oracle)."""
    xs = sorted(X)
    out = set()
    for k in range(1, len(xs) + 1):
        for A in combinations(xs, k):
            S = star_set_mask(P, mask_of(A))
            out.update(components_mask(P, S))
    return out


@dataclass
class Verdict:
    holds: bool
    witness: object = None


def check_mxl_characterization(P: FinitePoset, X: Iterable[int]) -> Verdict:
    """Compare the maximal carriers with the stars of members of X.

    X must be an antichain; otherwise HypothesisViolated is raised and its
    witness lists the stars of X that fail to be maximal carriers.
    """
    Xm = mask_of(X)
    gamma = crosscut_poset(P, bits(Xm))
    maximal = {gamma.carriers[i] for i in range(len(gamma)) if gamma.poset.upper_covers(i) == 0}
    stars = {star_mask(P, a) for a in iter_bits(Xm)}
    if not is_antichain_mask(P, Xm):
        not_max = sorted((bits(s) for s in stars - maximal), key=sorted)
        raise HypothesisViolated("X is not an antichain", {
            "stars_not_maximal": not_max,
            "maximal_carriers": sorted((bits(c) for c in maximal), key=sorted),
        })
    if maximal == stars:
        return Verdict(True)
    return Verdict(False, {"only_stars": [bits(s) for s in stars - maximal],
                           "only_maximal": [bits(c) for c in maximal - stars]})


def min_component_over(P: FinitePoset, X: Iterable[int], B: Iterable[int],
                       gamma: CrosscutPoset | None = None) -> frozenset:
    """The least carrier containing B: the component of st(I_X(B)) through B."""
    Xm, Bm = mask_of(X), mask_of(B)
    if not Bm:
        raise EmptySubset("B must be non-empty")
    if not is_connected_mask(P, Bm):
        raise NotConnected(f"{P.label_set(bits(Bm))} is not connected")
    idx = index_set_mask(P, Xm, Bm)
    if not idx:
        raise EmptyGammaB("no carrier contains B")
    C0 = next(C for C in components_mask(P, star_set_mask(P, idx)) if C & Bm)
    if gamma is None:
        gamma = crosscut_poset(P, bits(Xm))
    over = [C for C in gamma.carriers if Bm & ~C == 0]
    if C0 not in over or any(C0 & ~C for C in over):
        raise AssertionError("component through B is not the minimum carrier over B")
    return bits(C0)


def _require_coherent(P: FinitePoset, Xm: int, guard: int):
    chain_ = uncovered_chain(P, bits(Xm))
    if chain_ is not None:
        raise HypothesisViolated("X is not a cutset", chain_)
    bad = incoherent_subset(P, bits(Xm), guard)
    if bad is not None:
        raise HypothesisViolated("X is not coherent", bad)


def nu(P: FinitePoset, X: Iterable[int], sigma: Iterable[int],
       guard: int = COHERENCE_GUARD) -> frozenset:
    """st(sigma), for sigma a non-empty astral subset of a coherent cutset."""
    Xm, S = mask_of(X), mask_of(sigma)
    _require_coherent(P, Xm, guard)
    if not S or S & ~Xm:
        raise HypothesisViolated("sigma must be a non-empty subset of X", bits(S))
    st = star_set_mask(P, S)
    if not st:
        raise HypothesisViolated("sigma is not astral", bits(S))
    if not is_connected_mask(P, st):
        raise AssertionError("star of an astral subset of a coherent cutset is disconnected")
    return bits(st)


def iota(P: FinitePoset, X: Iterable[int], C: Iterable[int],
         gamma: CrosscutPoset | None = None) -> frozenset:
    """I_X(C) for a carrier C."""
    Xm, Cm = mask_of(X), mask_of(C)
    if gamma is None:
        gamma = crosscut_poset(P, bits(Xm))
    if gamma.index_of(Cm) is None:
        raise HypothesisViolated("C is not an element of the crosscut poset", bits(Cm))
    return bits(index_set_mask(P, Xm, Cm))


@dataclass
class RetractReport:
    carriers: int
    simplices: int
    nu_iota_identity: list = field(default_factory=list)
    iota_nu_extensive: list = field(default_factory=list)
    nu_monotone: list = field(default_factory=list)
    iota_monotone: list = field(default_factory=list)
    nu_lands_in_gamma: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.nu_iota_identity or self.iota_nu_extensive or self.nu_monotone
                    or self.iota_monotone or self.nu_lands_in_gamma)


def verify_retract(P: FinitePoset, X: Iterable[int], guard: int = COHERENCE_GUARD) -> RetractReport:
    """Check that C -> I_X(C) and sigma -> st(sigma) exhibit the opposite of the
    crosscut poset as a retract of the face poset of the crosscut complex, with
    iota(nu(sigma)) containing sigma."""
    Xm = mask_of(X)
    _require_coherent(P, Xm, guard)
    gamma = crosscut_poset(P, bits(Xm))
    K = crosscut_complex(P, bits(Xm))
    xs = list(iter_bits(Xm))
    # complex vertex v is ambient element xs[v]
    simplices = [mask_of(xs[v] for v in iter_bits(s)) for s in K.simplex_masks()]
    report = RetractReport(len(gamma), len(simplices))

    nu_of = {s: star_set_mask(P, s) for s in simplices}
    iota_of = {C: index_set_mask(P, Xm, C) for C in gamma.carriers}
    for s, st in nu_of.items():
        if gamma.index_of(st) is None:
            report.nu_lands_in_gamma.append(bits(s))
        elif iota_of[st] & s != s:
            report.iota_nu_extensive.append(bits(s))
    for C, idx in iota_of.items():
        if not idx or star_set_mask(P, idx) != C:
            report.nu_iota_identity.append(bits(C))
    for s in simplices:
        for t in simplices:
            if s != t and s & ~t == 0 and nu_of[t] & ~nu_of[s]:
                report.nu_monotone.append((bits(s), bits(t)))
    for C in gamma.carriers:
        for D in gamma.carriers:
            if C != D and C & ~D == 0 and iota_of[D] & ~iota_of[C]:
                report.iota_monotone.append((bits(C), bits(D)))
    return report


@dataclass(frozen=True)
class P0Retraction:
    """``elements`` lists the ids of P (ascending) forming P0; ``p0`` is the
    induced subposet; ``r`` maps P onto P0; ``iso[i]`` is the P0 id of the
    maximum of carrier i."""

    gamma: CrosscutPoset
    elements: tuple
    p0: FinitePoset
    r: MonotoneMap
    iso: tuple

    def inclusion(self) -> MonotoneMap:
        return MonotoneMap(self.p0, self.gamma.ambient, self.elements)

    def retraction_into_p(self) -> MonotoneMap:
        """r followed by the inclusion, as an endomap of P."""
        return self.inclusion().compose(self.r)


def p0_retraction(P: FinitePoset) -> P0Retraction:
    X = mxl_mask(P)
    gamma = crosscut_poset(P, bits(X))
    maxima = []
    for C in gamma.carriers:
        m = greatest_mask(P, C)
        if m is None:
            raise NoMaximum(f"carrier {carrier_label(P, C)} has no maximum", bits(C))
        maxima.append(m)
    elements = sorted(set(maxima))
    p0 = induced_mask(P, mask_of(elements))
    pos = {x: i for i, x in enumerate(elements)}

    values = []
    for x in range(P.n):
        idx = index_set_mask(P, X, 1 << x)
        Cx = next(C for C in components_mask(P, star_set_mask(P, idx)) if C >> x & 1)
        values.append(pos[greatest_mask(P, Cx)])
    r = MonotoneMap(P, p0, tuple(values))
    iso = tuple(pos[m] for m in maxima)
    result = P0Retraction(gamma, tuple(elements), p0, r, iso)

    ir = result.retraction_into_p()
    if any(r.values[x] != i for i, x in enumerate(elements)):
        raise AssertionError("r restricted to P0 is not the identity")
    if any(not P.leq(x, ir.values[x]) for x in range(P.n)):
        raise AssertionError("i r is not above the identity")
    if len(set(iso)) != len(iso):
        raise AssertionError("distinct carriers share a maximum")
    for a in range(len(gamma)):
        for b in range(len(gamma)):
            if gamma.poset.leq(a, b) != p0.leq(iso[a], iso[b]):
                raise AssertionError("carrier-to-maximum map is not an order isomorphism")
    return result


def joins_of_minimal(P: FinitePoset, guard: int = COHERENCE_GUARD) -> int:
    """Mask of elements that are joins of non-empty sets of minimal elements."""
    mins = list(iter_bits(mnl_mask(P)))
    if len(mins) > guard:
        raise GuardExceeded(f"{len(mins)} minimal elements exceed the guard {guard}")
    out = 0
    for k in range(1, len(mins) + 1):
        for A in combinations(mins, k):
            j = least_mask(P, upper_bounds_mask(P, mask_of(A)))
            if j is not None:
                out |= 1 << j
    return out


def p_m(P: FinitePoset, guard: int = COHERENCE_GUARD) -> FinitePoset:
    """Subposet of joins of non-empty sets of minimal elements.

    When the minimal elements form a coherent cutset the set is also read off
    as the minima of the crosscut poset for that cutset, and the two answers
    must agree.
    """
    joins = joins_of_minimal(P, guard)
    M = mnl_mask(P)
    if M and popcount(M) <= guard and is_coherent_cutset(P, bits(M), guard):
        gamma = crosscut_poset(P, bits(M))
        minima = 0
        for C in gamma.carriers:
            m = least_mask(P, C)
            if m is None:
                raise AssertionError("carrier without minimum under a coherent mnl cutset")
            minima |= 1 << m
        if minima != joins:
            raise AssertionError("joins of minimal elements differ from minima of carriers")
    return induced_mask(P, joins)


def l_k(K: SimplicialComplex) -> FinitePoset:
    """Non-empty intersections of facets, ordered by inclusion."""
    family = set(K.facets)
    frontier = list(family)
    while frontier:
        nxt = []
        for S in frontier:
            for f in K.facets:
                T = S & f
                if T and T not in family:
                    family.add(T)
                    nxt.append(T)
        frontier = nxt
    members = sorted(family, key=lambda s: (popcount(s), tuple(iter_bits(s))))
    down = [mask_of(j for j, t in enumerate(members) if t & ~s == 0) for s in members]
    return FinitePoset.from_down_masks([simplex_label(K.vertices, s) for s in members], down)
