"""Integer homology via Smith normal form, and finite-space reductions
(beat points, cores, weak points) for contractibility decisions."""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from ._bits import iter_bits, popcount
from .complexes import SIMPLEX_GUARD, SimplicialComplex, order_complex
from .poset import FinitePoset, MonotoneMap, induced_mask

# --------------------------------------------------------------------------
# Smith normal form


def _normalize_diagonal(diag: Sequence[int]) -> list:
    """Turn a diagonal into a divisibility chain with the same cokernel."""
    d = sorted(abs(x) for x in diag if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            a, b = d[i], d[j]
            g = gcd(a, b)
            d[i], d[j] = g, a // g * b
    return d


def _snf_rows(rows: dict) -> list:
    """Diagonalize a sparse integer matrix given as {row: {col: value}}.

    Rows are consumed. Pivots are chosen by least absolute value, and a pivot
    is retired once its row and column are otherwise zero.
    """
    cols = defaultdict(set)
    for i, r in rows.items():
        for j in r:
            cols[j].add(i)

    def sub_row(k, i, q):
        # row k -= q * row i
        rk = rows[k]
        for c, v in rows[i].items():
            nv = rk.get(c, 0) - q * v
            if nv:
                if c not in rk:
                    cols[c].add(k)
                rk[c] = nv
            elif c in rk:
                del rk[c]
                cols[c].discard(k)
        if not rk:
            del rows[k]

    def drop_row(i):
        for c in rows[i]:
            cols[c].discard(i)
        del rows[i]

    diag = []
    while rows:
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                if best is None or abs(v) < best[2]:
                    best = (i, j, abs(v))
                    if best[2] == 1:
                        break
            if best[2] == 1:
                break
        i, j, _ = best
        while True:
            v = rows[i][j]
            new = None
            for k in sorted(cols[j] - {i}):
                q = rows[k][j] // v
                sub_row(k, i, q)
                rem = rows[k].get(j, 0) if k in rows else 0
                if rem and (new is None or abs(rem) < abs(rows[new[0]][new[1]])):
                    new = (k, j)
            if new is not None:
                i, j = new
                continue
            ri = rows[i]
            for c in sorted(set(ri) - {j}):
                # column c -= q * column j; column j is zero outside row i
                q = ri[c] // v
                nv = ri[c] - q * v
                if nv:
                    ri[c] = nv
                    if new is None or abs(nv) < abs(ri[new[1]]):
                        new = (i, c)
                else:
                    del ri[c]
                    cols[c].discard(i)
            if new is not None:
                i, j = new
                continue
            break
        diag.append(abs(v))
        drop_row(i)
    return diag


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple:
    """Invariant factors ``(d1, ..., dr)`` with d1 | d2 | ... and the rank r.

    Works on Python integers, so there is no overflow.
    """
    rows = {}
    for i, r in enumerate(M):
        d = {j: int(v) for j, v in enumerate(r) if v}
        if d:
            rows[i] = d
    factors = _normalize_diagonal(_snf_rows(rows))
    return tuple(factors), len(factors)


# --------------------------------------------------------------------------
# simplicial homology


def _simplices_by_dim(K: SimplicialComplex, guard: int) -> list:
    by_dim = [[] for _ in range(K.dim + 1)]
    for s in K.simplex_masks(guard):
        by_dim[popcount(s) - 1].append(s)
    return by_dim


def _faces_with_signs(s: int):
    for i, v in enumerate(iter_bits(s)):
        yield s & ~(1 << v), -1 if i % 2 else 1


def _boundary_rows(by_dim: list, d: int) -> dict:
    """Transpose of the d-th boundary matrix: one sparse row per d-simplex."""
    index = {s: i for i, s in enumerate(by_dim[d - 1])}
    return {c: {index[f]: sign for f, sign in _faces_with_signs(s)}
            for c, s in enumerate(by_dim[d])}


def boundary_matrices(K: SimplicialComplex, guard: int = SIMPLEX_GUARD) -> list:
    """Dense boundary matrices; entry ``d - 1`` of the list maps d-chains to
    (d-1)-chains, rows indexed by (d-1)-simplices in ``simplex_masks`` order."""
    by_dim = _simplices_by_dim(K, guard)
    out = []
    for d in range(1, len(by_dim)):
        M = [[0] * len(by_dim[d]) for _ in by_dim[d - 1]]
        for c, row in _boundary_rows(by_dim, d).items():
            for r, v in row.items():
                M[r][c] = v
        out.append(M)
    return out


@dataclass(frozen=True)
class HomologySummary:
    """``betti[d]`` and ``torsion[d]`` describe H_d for d = 0..dim.

    For reduced homology of the empty complex the only non-trivial group
    sits in degree -1, recorded as ``minus_one``.
    """

    betti: tuple
    torsion: tuple
    reduced: bool
    minus_one: int = 0

    def trimmed(self) -> tuple:
        b, t = list(self.betti), list(self.torsion)
        while b and b[-1] == 0 and not t[-1]:
            b.pop()
            t.pop()
        return self.minus_one, tuple(b), tuple(t)

    def same_groups(self, other: "HomologySummary") -> bool:
        return self.trimmed() == other.trimmed()

    @property
    def trivial(self) -> bool:
        return self.minus_one == 0 and not any(self.betti) and not any(self.torsion)

    def obstruction(self):
        """Lowest degree with a non-trivial group, described as text, or None."""
        if self.minus_one:
            return "H_-1 = Z (empty space)"
        for d, (b, t) in enumerate(zip(self.betti, self.torsion)):
            if b or t:
                parts = [f"Z^{b}"] if b else []
                parts += [f"Z/{x}" for x in t]
                return f"{'reduced ' if self.reduced else ''}H_{d} = " + " + ".join(parts)
        return None

    def as_dict(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion],
                "reduced": self.reduced, "minus_one": self.minus_one}


def homology(K: SimplicialComplex, reduced: bool = False,
             guard: int = SIMPLEX_GUARD) -> HomologySummary:
    by_dim = _simplices_by_dim(K, guard)
    top = len(by_dim) - 1
    if top < 0:
        return HomologySummary((), (), reduced, 1 if reduced else 0)
    ranks = [0] * (top + 2)
    factors = [()] * (top + 2)
    for d in range(1, top + 1):
        f = _normalize_diagonal(_snf_rows(_boundary_rows(by_dim, d)))
        ranks[d] = len(f)
        factors[d] = tuple(x for x in f if x > 1)
    if reduced:
        ranks[0] = 1
    betti = tuple(len(by_dim[d]) - ranks[d] - ranks[d + 1] for d in range(top + 1))
    torsion = tuple(factors[d + 1] for d in range(top + 1))
    return HomologySummary(betti, torsion, reduced)


def poset_homology(P: FinitePoset, reduced: bool = True,
                   guard: int = SIMPLEX_GUARD) -> HomologySummary:
    return homology(order_complex(P), reduced, guard)


# --------------------------------------------------------------------------
# finite-space reductions


def _beat_target(P: FinitePoset, S: int, x: int):
    """For x in the subposet S: the unique cover of x inside S making x a beat
    point, as (kind, target), or None."""
    above = P.up[x] & S & ~(1 << x)
    if above:
        covers = above
        for z in iter_bits(above):
            covers &= ~(P.up[z] & ~(1 << z))
        if popcount(covers) == 1:
            return "up", covers.bit_length() - 1
    below = P.down[x] & S & ~(1 << x)
    if below:
        covers = below
        for z in iter_bits(below):
            covers &= ~(P.down[z] & ~(1 << z))
        if popcount(covers) == 1:
            return "down", covers.bit_length() - 1
    return None


def beat_points(P: FinitePoset) -> frozenset:
    """Elements x where P_{>x} has a minimum or P_{<x} has a maximum."""
    return frozenset(x for x in range(P.n) if _beat_target(P, P.full, x) is not None)


@dataclass(frozen=True)
class CoreReduction:
    """``kept`` is the core as a mask over P; ``steps`` lists removals as
    (element, 'up'|'down', the cover it collapses onto)."""

    poset: FinitePoset
    kept: int
    steps: tuple

    def core(self) -> FinitePoset:
        return induced_mask(self.poset, self.kept)

    def retraction(self) -> MonotoneMap:
        """Order-preserving retraction of P onto its core."""
        target = {x: t for x, _, t in self.steps}
        ids = list(iter_bits(self.kept))
        pos = {x: i for i, x in enumerate(ids)}
        values = []
        for x in range(self.poset.n):
            while x in target:
                x = target[x]
            values.append(pos[x])
        return MonotoneMap(self.poset, self.core(), tuple(values))


def core_reduction(P: FinitePoset, descending: bool = False) -> CoreReduction:
    """Remove beat points one at a time, rescanning from the start after each."""
    S = P.full
    steps = []
    while True:
        order = sorted(iter_bits(S), reverse=descending)
        for x in order:
            hit = _beat_target(P, S, x)
            if hit is not None and popcount(S) > 1:
                steps.append((x, hit[0], hit[1]))
                S &= ~(1 << x)
                break
        else:
            return CoreReduction(P, S, tuple(steps))


def core(P: FinitePoset, descending: bool = False) -> FinitePoset:
    return core_reduction(P, descending).core()


def is_contractible(P: FinitePoset) -> bool:
    """A finite space is contractible exactly when its core is a point."""
    return P.n > 0 and popcount(core_reduction(P).kept) == 1


def _contractible_mask(P: FinitePoset, S: int) -> bool:
    return S != 0 and is_contractible(induced_mask(P, S))


def is_weak_point(P: FinitePoset, S: int, x: int) -> bool:
    """x is weak in the subposet S when S_{<x} or S_{>x} is contractible."""
    below = P.down[x] & S & ~(1 << x)
    above = P.up[x] & S & ~(1 << x)
    return _contractible_mask(P, below) or _contractible_mask(P, above)


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class Certificate:
    verdict: Verdict
    trail: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"verdict": self.verdict.value, "trail": list(self.trail)}


def weak_point_reduction(P: FinitePoset) -> tuple:
    """Iterated weak-point removal in ascending id order, restarting after each
    removal. Returns the surviving mask and the removed ids in order."""
    S = P.full
    removed = []
    while popcount(S) > 1:
        for x in iter_bits(S):
            if is_weak_point(P, S, x):
                S &= ~(1 << x)
                removed.append(x)
                break
        else:
            break
    return S, removed


def is_weakly_contractible(P: FinitePoset, guard: int = SIMPLEX_GUARD) -> Certificate:
    """Three-valued certificate.

    YES when weak-point removal reaches a single point; NO when the order
    complex has a non-trivial reduced homology group; UNKNOWN otherwise.
    """
    if P.n == 0:
        return Certificate(Verdict.NO, ["empty poset: H_-1 = Z"])
    S, removed = weak_point_reduction(P)
    if popcount(S) == 1:
        last = S.bit_length() - 1
        return Certificate(Verdict.YES, [f"remove weak point {P.labels[x]}" for x in removed]
                           + [f"point {P.labels[last]} remains"])
    h = homology(order_complex(P), reduced=True, guard=guard)
    if not h.trivial:
        return Certificate(Verdict.NO, [h.obstruction()])
    survivors = [P.labels[x] for x in iter_bits(S)]
    return Certificate(Verdict.UNKNOWN, [f"weak-point reduction stuck at {survivors}",
                                         "reduced homology is trivial"])


def power_set_poset(labels: Sequence[str]) -> FinitePoset:
    """Non-empty subsets of a finite set ordered by inclusion."""
    n = len(labels)
    subsets = sorted(range(1, 1 << n), key=lambda s: (popcount(s), s))
    pos = {s: i for i, s in enumerate(subsets)}
    down = []
    for s in subsets:
        m = 0
        t = s
        while t:
            m |= 1 << pos[t]
            t = (t - 1) & s
        down.append(m)
    names = ["{" + ",".join(labels[i] for i in iter_bits(s)) + "}" for s in subsets]
    return FinitePoset.from_down_masks(names, down)


__all__ = [
    "Certificate", "CoreReduction", "HomologySummary", "Verdict", "beat_points",
    "boundary_matrices", "core", "core_reduction", "homology", "is_contractible",
    "is_weakly_contractible", "poset_homology", "power_set_poset",
    "smith_normal_form", "weak_point_reduction",
]
