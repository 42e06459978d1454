"""Fixed point property of finite posets and fixed simplex property of finite
complexes, with verifiers for the transfer results built on crosscut posets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ._bits import bits, iter_bits, mask_of, popcount
from .complexes import SimplicialComplex, face_poset
from .crosscut_poset import crosscut_poset, l_k, p0_retraction, p_m
from .errors import GuardExceeded, HypothesisViolated, Inconclusive
from .poset import FinitePoset, MonotoneMap, induced_mask, linear_extension, mnl
from .stars import COHERENCE_GUARD, incoherent_subset, uncovered_chain
from .topology import (
    Verdict,
    core_reduction,
    is_weakly_contractible,
    poset_homology,
)

FPP_GUARD = 12

HOMOLOGY_SUBSTITUTION = (
    "Weak and simple homotopy equivalences between spaces are not constructed. "
    "They are replaced by two checkable consequences: every carrier is certified "
    "weakly contractible (weak-point reduction to a point), and the reduced "
    "integer homology of both order complexes agrees in every degree."
)


def abian_brown_fixed_point(P: FinitePoset, f: MonotoneMap, a: int) -> int:
    """Iterate f from a point comparable to its image until it stabilizes."""
    if f.source != P or f.target != P:
        raise HypothesisViolated("f must be an endomap of P")
    fa = f(a)
    if P.leq(a, fa):
        step_ok = P.leq
    elif P.leq(fa, a):
        def step_ok(x, y):
            return P.leq(y, x)
    else:
        raise HypothesisViolated(
            f"{P.labels[a]} is incomparable to its image {P.labels[fa]}", a)
    x = a
    while f(x) != x:
        nxt = f(x)
        if not step_ok(x, nxt):
            raise AssertionError("iteration is not monotone; f is not order-preserving")
        x = nxt
    return x


# --------------------------------------------------------------------------
# exhaustive search for fixed-point-free monotone maps


def _search_fixed_point_free(P: FinitePoset):
    """Values of a fixed-point-free order-preserving endomap of P, or None.

    Constraint search: each element keeps a mask of admissible images (never
    itself). After each choice, domains are narrowed along Hasse covers until
    stable: images above x must lie over some admissible image of x, and
    dually. Branches on the smallest domain, ties broken by a linear
    extension.
    """
    n = P.n
    if n == 0:
        return ()
    up, down = P.up, P.down
    upper = [P.upper_covers(x) for x in range(n)]
    lower = [P.lower_covers(x) for x in range(n)]
    rank = {x: i for i, x in enumerate(linear_extension(P))}

    def up_closure(m):
        acc = 0
        for v in iter_bits(m):
            acc |= up[v]
        return acc

    def down_closure(m):
        acc = 0
        for v in iter_bits(m):
            acc |= down[v]
        return acc

    def propagate(dom, queue):
        while queue:
            x = queue.pop()
            d = dom[x]
            if upper[x]:
                uc = up_closure(d)
                for y in iter_bits(upper[x]):
                    nd = dom[y] & uc
                    if nd != dom[y]:
                        if not nd:
                            return False
                        dom[y] = nd
                        queue.append(y)
            if lower[x]:
                dc = down_closure(d)
                for w in iter_bits(lower[x]):
                    nd = dom[w] & dc
                    if nd != dom[w]:
                        if not nd:
                            return False
                        dom[w] = nd
                        queue.append(w)
        return True

    def solve(dom):
        var, size = None, 0
        for x in range(n):
            c = popcount(dom[x])
            if c > 1 and (var is None or (c, rank[x]) < (size, rank[var])):
                var, size = x, c
        if var is None:
            return dom
        for v in iter_bits(dom[var]):
            nd = list(dom)
            nd[var] = 1 << v
            if propagate(nd, [var]):
                found = solve(nd)
                if found is not None:
                    return found
        return None

    dom = [P.full & ~(1 << x) for x in range(n)]
    if any(d == 0 for d in dom) or not propagate(dom, list(range(n))):
        return None
    found = solve(dom)
    if found is None:
        return None
    return tuple(m.bit_length() - 1 for m in found)


@dataclass
class FppResult:
    has_fpp: bool
    witness: MonotoneMap | None = None
    searched_size: int = 0

    def __bool__(self):
        return self.has_fpp

    def as_dict(self) -> dict:
        out = {"has_fpp": self.has_fpp, "searched_size": self.searched_size}
        if self.witness is not None:
            out["witness"] = self.witness.as_labels()
        return out


def validate_fixed_point_free(P: FinitePoset, values) -> bool:
    """Independent re-check of a witness: total, order-preserving, no fixed point."""
    if len(values) != P.n or any(not 0 <= v < P.n for v in values):
        return False
    if any(v == x for x, v in enumerate(values)):
        return False
    return all(P.leq(values[x], values[y]) for x in range(P.n) for y in iter_bits(P.up[x]))


def has_fpp(P: FinitePoset, guard: int = FPP_GUARD, core_preprocess: bool = True) -> FppResult:
    """Decide the fixed point property by exhaustive search.

    With ``core_preprocess`` the search runs on the core of P; a fixed-point
    free map g of the core lifts to g∘r on P, where r is the retraction onto
    the core. The guard bounds the size of the poset actually searched.
    """
    if core_preprocess:
        red = core_reduction(P)
        Q = red.core()
    else:
        red, Q = None, P
    if Q.n > guard:
        raise GuardExceeded(f"fixed point search on {Q.n} elements exceeds the guard {guard}")
    g = _search_fixed_point_free(Q)
    if g is None:
        return FppResult(True, None, Q.n)
    if red is not None:
        kept = list(iter_bits(red.kept))
        r = red.retraction()
        values = tuple(kept[g[r(x)]] for x in range(P.n))
    else:
        values = g
    if not validate_fixed_point_free(P, values):
        raise AssertionError("search produced an invalid witness")
    return FppResult(False, MonotoneMap(P, P, values), Q.n)


def has_fsp(K: SimplicialComplex, guard: int = FPP_GUARD, core_preprocess: bool = True) -> FppResult:
    """Fixed simplex property of K, decided as the fixed point property of its
    face poset."""
    return has_fpp(face_poset(K).poset, guard, core_preprocess)


# --------------------------------------------------------------------------
# verifiers


@dataclass
class TransferReport:
    name: str
    left: FppResult
    right: FppResult
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.left.has_fpp == self.right.has_fpp

    def as_dict(self) -> dict:
        return {"check": self.name, "holds": self.holds, "left": self.left.as_dict(),
                "right": self.right.as_dict(), **self.details}


def verify_fpp_transfer(P: FinitePoset, guard: int = FPP_GUARD,
                        core_preprocess: bool = True) -> TransferReport:
    """P has the fixed point property iff its crosscut poset over the maximal
    elements does, provided every carrier has a maximum."""
    ret = p0_retraction(P)
    gamma = ret.gamma.poset
    report = TransferReport(
        "fpp-transfer",
        has_fpp(P, guard, core_preprocess),
        has_fpp(gamma, guard, core_preprocess),
        {"p_size": P.n, "gamma_size": gamma.n,
         "p0": [P.labels[x] for x in ret.elements]},
    )
    return report


def verify_fsp_equivalence(K: SimplicialComplex, guard: int = FPP_GUARD,
                           core_preprocess: bool = True) -> TransferReport:
    """K has the fixed simplex property iff its poset of facet intersections
    has the fixed point property."""
    X = face_poset(K).poset
    L = l_k(K)
    return TransferReport(
        "fsp-equivalence",
        has_fpp(X, guard, core_preprocess),
        has_fpp(L, guard, core_preprocess),
        {"face_poset_size": X.n, "l_k": list(L.labels)},
    )


@dataclass
class PmReport:
    pm: list
    pm_certificate: dict
    p_certificate: dict
    contradiction: bool

    @property
    def holds(self) -> bool:
        return not self.contradiction

    def as_dict(self) -> dict:
        return {"check": "pm-contractibility", "holds": self.holds, "pm": self.pm,
                "pm_certificate": self.pm_certificate, "p_certificate": self.p_certificate}


def verify_pm_contractibility(P: FinitePoset, guard: int = COHERENCE_GUARD) -> PmReport:
    """When the joins of minimal elements form a weakly contractible subposet,
    P must not be certified non-contractible."""
    M = mnl(P)
    if not M:
        raise HypothesisViolated("poset is empty")
    chain_ = uncovered_chain(P, M)
    if chain_ is not None:
        raise HypothesisViolated("minimal elements are not a cutset", chain_)
    bad = incoherent_subset(P, M, guard)
    if bad is not None:
        raise HypothesisViolated("minimal elements are not a coherent cutset", bad)
    pm = p_m(P, guard)
    c_pm = is_weakly_contractible(pm)
    c_p = is_weakly_contractible(P)
    contradiction = c_pm.verdict is Verdict.YES and c_p.verdict is Verdict.NO
    return PmReport(list(pm.labels), c_pm.as_dict(), c_p.as_dict(), contradiction)


@dataclass
class MainTheoremReport:
    cutset: list
    carriers: list
    homology_p: dict
    homology_gamma: dict
    holds: bool
    note: str = HOMOLOGY_SUBSTITUTION

    def as_dict(self) -> dict:
        return {"check": "main-theorem", "holds": self.holds, "cutset": self.cutset,
                "carriers": self.carriers, "homology_p": self.homology_p,
                "homology_gamma": self.homology_gamma, "note": self.note}


def verify_main_theorem(P: FinitePoset, X: Iterable[int]) -> MainTheoremReport:
    """Check, at the level of homology, that P and its crosscut poset over X
    have the same weak homotopy type when every carrier is weakly contractible.

    Raises HypothesisViolated when X is not a cutset or some carrier is
    certified not weakly contractible, and Inconclusive when a carrier's
    certificate is unknown.
    """
    Xm = mask_of(X)
    chain_ = uncovered_chain(P, bits(Xm))
    if chain_ is not None:
        raise HypothesisViolated("X is not a cutset", sorted(P.labels[x] for x in chain_))
    if not Xm:
        raise HypothesisViolated("X is empty")
    gamma = crosscut_poset(P, bits(Xm))
    carriers = []
    for C in gamma.carriers:
        cert = is_weakly_contractible(induced_mask(P, C))
        entry = {"carrier": [P.labels[x] for x in iter_bits(C)], **cert.as_dict()}
        carriers.append(entry)
        if cert.verdict is Verdict.NO:
            raise HypothesisViolated("a carrier is not weakly contractible", entry)
        if cert.verdict is Verdict.UNKNOWN:
            raise Inconclusive("a carrier could not be certified", entry)
    hp = poset_homology(P, reduced=True)
    hg = poset_homology(gamma.poset, reduced=True)
    return MainTheoremReport([P.labels[x] for x in iter_bits(Xm)], carriers,
                             hp.as_dict(), hg.as_dict(), hp.same_groups(hg))


__all__ = [
    "FppResult", "HOMOLOGY_SUBSTITUTION", "MainTheoremReport", "PmReport", "TransferReport",
    "abian_brown_fixed_point", "has_fpp", "has_fsp", "validate_fixed_point_free",
    "verify_fpp_transfer", "verify_fsp_equivalence", "verify_main_theorem",
    "verify_pm_contractibility",
]
