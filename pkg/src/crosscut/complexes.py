"""Abstract simplicial complexes stored by facets, and the complexes attached
to a poset: order complex, crosscut complex, face poset, closed stars."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ._bits import iter_bits, mask_of, popcount, submasks
from .errors import FormatError, NotASimplex, SizeGuard
from .poset import FinitePoset, maximal_chains_masks
from .stars import star_mask

SIMPLEX_GUARD = 1 << 20


def _maximize(masks: Iterable[int]) -> list:
    """Inclusion-maximal members of a family of masks (duplicates dropped)."""
    uniq = sorted(set(m for m in masks if m), key=popcount, reverse=True)
    kept = []
    for m in uniq:
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return kept


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite abstract simplicial complex.

    ``vertices`` holds vertex labels; ``facets`` holds masks over vertex ids.
    Construction maximizes the facet family and drops unused vertices, so the
    invariants (no facet inside another, every vertex used) always hold.
    """

    vertices: tuple
    facets: tuple

    @classmethod
    def from_masks(cls, vertices: Sequence[str], facet_masks: Iterable[int]) -> "SimplicialComplex":
        facets = _maximize(facet_masks)
        used = 0
        for f in facets:
            used |= f
        keep = list(iter_bits(used))
        if len(keep) != len(vertices):
            pos = {v: i for i, v in enumerate(keep)}
            facets = [mask_of(pos[v] for v in iter_bits(f)) for f in facets]
            vertices = [vertices[v] for v in keep]
        facets.sort(key=lambda f: tuple(iter_bits(f)))
        return cls(tuple(vertices), tuple(facets))

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[str]], vertices: Sequence[str] | None = None):
        facets = [list(f) for f in facets]
        if vertices is None:
            vertices = []
            for f in facets:
                for v in f:
                    if v not in vertices:
                        vertices.append(v)
        index = {v: i for i, v in enumerate(vertices)}
        return cls.from_masks(vertices, [mask_of(index[v] for v in f) for f in facets])

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def dim(self) -> int:
        return max((popcount(f) - 1 for f in self.facets), default=-1)

    def facet_sets(self) -> list:
        return [frozenset(iter_bits(f)) for f in self.facets]

    def facet_labels(self) -> list:
        return [[self.vertices[v] for v in iter_bits(f)] for f in self.facets]

    def canonical(self) -> tuple:
        """Facets as sorted label tuples; equal complexes have equal forms."""
        return tuple(sorted(tuple(sorted(self.vertices[v] for v in iter_bits(f))) for f in self.facets))

    def same_as(self, other: "SimplicialComplex") -> bool:
        return self.canonical() == other.canonical()

    def contains(self, simplex: Iterable[int]) -> bool:
        s = mask_of(simplex)
        return s != 0 and any(s & ~f == 0 for f in self.facets)

    def simplex_masks(self, guard: int = SIMPLEX_GUARD) -> list:
        """Every non-empty simplex, sorted by dimension then vertex ids."""
        seen = set()
        for f in self.facets:
            for s in submasks(f):
                seen.add(s)
                if len(seen) > guard:
                    raise SizeGuard(f"more than {guard} simplices")
        return sorted(seen, key=lambda s: (popcount(s), tuple(iter_bits(s))))

    def simplices(self, guard: int = SIMPLEX_GUARD) -> list:
        return [frozenset(iter_bits(s)) for s in self.simplex_masks(guard)]


@dataclass(frozen=True)
class FacePoset:
    """Simplices of a complex ordered by inclusion; ``simplices[i]`` is the
    vertex mask of poset element i."""

    poset: FinitePoset
    simplices: tuple
    complex: SimplicialComplex

    def element_of(self, simplex: Iterable[int]) -> int:
        return self.simplices.index(mask_of(simplex))


def simplex_label(vertices: Sequence[str], mask: int) -> str:
    names = [vertices[v] for v in iter_bits(mask)]
    if all(len(n) == 1 for n in vertices):
        return "".join(names)
    return "{" + ",".join(names) + "}"


def order_complex(P: FinitePoset) -> SimplicialComplex:
    """Complex of non-empty chains; its facets are the maximal chains."""
    return SimplicialComplex.from_masks(P.labels, maximal_chains_masks(P))


def face_poset(K: SimplicialComplex, guard: int = SIMPLEX_GUARD) -> FacePoset:
    simplices = K.simplex_masks(guard)
    pos = {s: i for i, s in enumerate(simplices)}
    down = [mask_of(pos[t] for t in submasks(s)) for s in simplices]
    labels = [simplex_label(K.vertices, s) for s in simplices]
    return FacePoset(FinitePoset.from_down_masks(labels, down), tuple(simplices), K)


def crosscut_complex(P: FinitePoset, X: Iterable[int]) -> SimplicialComplex:
    """Complex on X whose simplices are the astral subsets of X.

    A subset of X is astral exactly when it sits inside X ∩ st(z) for some z,
    so the facets are the maximal members of that family.
    """
    Xm = mask_of(X)
    if not Xm:
        raise ValueError("the cutset must be non-empty")
    xs = list(iter_bits(Xm))
    pos = {x: i for i, x in enumerate(xs)}
    family = [mask_of(pos[x] for x in iter_bits(Xm & star_mask(P, z))) for z in range(P.n)]
    return SimplicialComplex.from_masks([P.labels[x] for x in xs], family)


def closed_star(K: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    """Subcomplex of simplices whose union with sigma is a simplex: the complex
    generated by the facets containing sigma."""
    s = mask_of(sigma)
    if not K.contains(iter_bits(s)):
        raise NotASimplex(f"{sorted(iter_bits(s))} is not a simplex")
    return SimplicialComplex.from_masks(K.vertices, [f for f in K.facets if s & ~f == 0])


def subcomplex_on(K: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    """Full subcomplex induced on a vertex subset."""
    m = mask_of(vertices)
    return SimplicialComplex.from_masks(K.vertices, [f & m for f in K.facets])


def f_vector(K: SimplicialComplex, guard: int = SIMPLEX_GUARD) -> tuple:
    counts = [0] * (K.dim + 1)
    for s in K.simplex_masks(guard):
        counts[popcount(s) - 1] += 1
    return tuple(counts)


def euler_characteristic(K: SimplicialComplex, guard: int = SIMPLEX_GUARD) -> int:
    return sum((-1) ** d * c for d, c in enumerate(f_vector(K, guard)))


def simplex(labels: Sequence[str]) -> SimplicialComplex:
    return SimplicialComplex.from_facets([list(labels)])


# --------------------------------------------------------------------------
# text format


def parse_complex(text: str) -> SimplicialComplex:
    """One ``facet: v1 v2 ...`` line per facet; ``#`` comments."""
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("facet:"):
            raise FormatError(f"expected 'facet: v1 v2 ...', got {raw.strip()!r}", lineno)
        verts = line[len("facet:"):].split()
        if not verts:
            raise FormatError("empty facet", lineno)
        if len(set(verts)) != len(verts):
            raise FormatError("repeated vertex in facet", lineno)
        facets.append(verts)
    return SimplicialComplex.from_facets(facets)


def format_complex(K: SimplicialComplex) -> str:
    return "".join("facet: " + " ".join(f) + "\n" for f in K.facet_labels())


def enumerate_complexes(n: int) -> list:
    """One representative of each isomorphism class of complexes whose vertex
    set is exactly n labelled points ``a, b, ...`` (n <= 6 is practical)."""
    from itertools import permutations

    subsets = sorted(range(1, 1 << n), key=lambda s: (-popcount(s), s))
    perm_tables = []
    for p in permutations(range(n)):
        table = [0] * (1 << n)
        for s in range(1, 1 << n):
            table[s] = mask_of(p[v] for v in iter_bits(s))
        perm_tables.append(table)
    full = (1 << n) - 1
    seen = set()
    out = []
    chosen = []

    def visit(i, used):
        if i == len(subsets):
            if used == full:
                canon = min(tuple(sorted(t[f] for f in chosen)) for t in perm_tables)
                if canon not in seen:
                    seen.add(canon)
                    out.append(canon)
            return
        visit(i + 1, used)
        s = subsets[i]
        if not any(s & ~c == 0 for c in chosen):
            chosen.append(s)
            visit(i + 1, used | s)
            chosen.pop()

    visit(0, 0)
    names = [chr(ord("a") + i) for i in range(n)]
    return [SimplicialComplex.from_masks(names, facets) for facets in sorted(out)]
