"""Finite posets on dense integer ids, with bitmask order relations.

Every poset stores, for each element ``i``, the mask ``down[i]`` of elements
``<= i`` and the mask ``up[i]`` of elements ``>= i``. Public functions take and
return element sets as ``frozenset`` of ids; the ``*_mask`` variants are the
internal working form.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ._bits import bits, iter_bits, mask_of, popcount
from .errors import (
    CycleDetected,
    DuplicateLabel,
    EmptySubset,
    FormatError,
    GuardExceeded,
    UnknownLabel,
)

ElementSet = frozenset

ISOMORPHISM_LIMIT = 64


@dataclass(frozen=True, eq=False)
class FinitePoset:
    labels: tuple
    down: tuple
    up: tuple
    _index: dict = field(init=False, repr=False, compare=False)
    _lower: tuple = field(init=False, repr=False, compare=False)
    _upper: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})
        lower = []
        for y in range(len(self.labels)):
            below = self.down[y] & ~(1 << y)
            deeper = 0
            for z in iter_bits(below):
                deeper |= self.down[z] & ~(1 << z)
            lower.append(below & ~deeper)
        upper = [0] * len(lower)
        for y, m in enumerate(lower):
            for x in iter_bits(m):
                upper[x] |= 1 << y
        object.__setattr__(self, "_lower", tuple(lower))
        object.__setattr__(self, "_upper", tuple(upper))

    @classmethod
    def from_down_masks(cls, labels: Sequence[str], down: Sequence[int]) -> "FinitePoset":
        """Build from already transitively closed down-sets (trusted input)."""
        n = len(labels)
        up = [0] * n
        for y in range(n):
            for x in iter_bits(down[y]):
                up[x] |= 1 << y
        return cls(tuple(labels), tuple(down), tuple(up))

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"FinitePoset(n={self.n}, covers={self.cover_labels()})"

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.labels == other.labels and self.down == other.down

    def __hash__(self):
        return hash((self.labels, self.down))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def id(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown element {label!r}") from None

    def ids(self, labels: Iterable[str]) -> frozenset:
        return frozenset(self.id(lab) for lab in labels)

    def label_set(self, ids: Iterable[int]) -> list:
        return [self.labels[i] for i in sorted(ids)]

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down[y] >> x & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    @property
    def relation(self) -> tuple:
        """The full n x n boolean matrix, ``relation[x][y]`` iff x <= y."""
        return tuple(tuple(self.leq(x, y) for y in range(self.n)) for x in range(self.n))

    def strict_down(self, x: int) -> int:
        return self.down[x] & ~(1 << x)

    def strict_up(self, x: int) -> int:
        return self.up[x] & ~(1 << x)

    def lower_covers(self, y: int) -> int:
        return self._lower[y]

    def upper_covers(self, x: int) -> int:
        return self._upper[x]

    @property
    def covers(self) -> tuple:
        """Hasse edges ``(x, y)`` with x covered by y, sorted by (x, y)."""
        pairs = [(x, y) for y in range(self.n) for x in iter_bits(self.lower_covers(y))]
        return tuple(sorted(pairs))

    def cover_labels(self) -> list:
        return [(self.labels[x], self.labels[y]) for x, y in self.covers]


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving map; ``values[x]`` is the image of source id x."""

    source: FinitePoset
    target: FinitePoset
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.source.n:
            raise ValueError("map must be total on the source")
        bad = monotonicity_violation(self.source, self.target, self.values)
        if bad is not None:
            x, y = bad
            raise ValueError(
                f"map is not order-preserving: {self.source.labels[x]} <= "
                f"{self.source.labels[y]} but images are not ordered"
            )

    def __call__(self, x: int) -> int:
        return self.values[x]

    def fixed_points(self) -> list:
        if self.source is not self.target and self.source != self.target:
            raise ValueError("fixed points only make sense for endomaps")
        return [x for x, v in enumerate(self.values) if v == x]

    def compose(self, other: "MonotoneMap") -> "MonotoneMap":
        """``self`` after ``other``."""
        return MonotoneMap(other.source, self.target, tuple(self.values[v] for v in other.values))

    def as_labels(self) -> dict:
        return {self.source.labels[x]: self.target.labels[v] for x, v in enumerate(self.values)}


def monotonicity_violation(source: FinitePoset, target: FinitePoset, values: Sequence[int]):
    """First cover pair (x, y) of ``source`` with f(x) not <= f(y), or None."""
    for x, y in source.covers:
        if not target.leq(values[x], values[y]):
            return (x, y)
    return None


def identity_map(P: FinitePoset) -> MonotoneMap:
    return MonotoneMap(P, P, tuple(range(P.n)))


# --------------------------------------------------------------------------
# construction


def build_poset(labels: Sequence[str], relations: Iterable[tuple]) -> FinitePoset:
    """Poset on ``labels`` generated by the pairs ``(a, b)`` meaning a <= b."""
    labels = [str(lab) for lab in labels]
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise DuplicateLabel(f"duplicate element {lab!r}")
        index[lab] = i
    n = len(labels)
    down = [1 << i for i in range(n)]
    for a, b in relations:
        a, b = str(a), str(b)
        for lab in (a, b):
            if lab not in index:
                raise UnknownLabel(f"unknown element {lab!r}")
        down[index[b]] |= 1 << index[a]
    # Warshall on masks: if k <= j then everything below k is below j.
    for k in range(n):
        bit = 1 << k
        dk = down[k]
        for j in range(n):
            if down[j] & bit:
                down[j] |= dk
    for j in range(n):
        for i in iter_bits(down[j] & ~(1 << j)):
            if down[i] >> j & 1:
                raise CycleDetected(f"{labels[i]} and {labels[j]} lie on a cycle")
    return FinitePoset.from_down_masks(labels, down)


def chain(n: int) -> FinitePoset:
    return build_poset([str(i) for i in range(n)], [(str(i), str(i + 1)) for i in range(n - 1)])


def antichain(n: int) -> FinitePoset:
    return build_poset([str(i) for i in range(n)], [])


def opposite(P: FinitePoset) -> FinitePoset:
    return FinitePoset(P.labels, P.up, P.down)


def induced_mask(P: FinitePoset, mask: int) -> FinitePoset:
    """Induced subposet on ``mask``; ids renumbered in ascending order, labels kept."""
    old = list(iter_bits(mask))
    pos = {x: i for i, x in enumerate(old)}
    down = []
    for x in old:
        down.append(mask_of(pos[z] for z in iter_bits(P.down[x] & mask)))
    return FinitePoset.from_down_masks([P.labels[x] for x in old], down)


def induced(P: FinitePoset, S: Iterable[int]) -> FinitePoset:
    return induced_mask(P, mask_of(S))


def relabel(P: FinitePoset, labels: Sequence[str]) -> FinitePoset:
    if len(set(labels)) != len(labels) or len(labels) != P.n:
        raise DuplicateLabel("relabelling must be a bijection onto distinct labels")
    return FinitePoset(tuple(labels), P.down, P.up)


def permuted(P: FinitePoset, perm: Sequence[int]) -> FinitePoset:
    """Copy of P in which old id ``x`` becomes new id ``perm[x]``."""
    n = P.n
    inv = [0] * n
    for x, px in enumerate(perm):
        inv[px] = x
    labels = [P.labels[inv[i]] for i in range(n)]
    down = [mask_of(perm[z] for z in iter_bits(P.down[inv[i]])) for i in range(n)]
    return FinitePoset.from_down_masks(labels, down)


# --------------------------------------------------------------------------
# elementary queries


def mxl_mask(P: FinitePoset) -> int:
    return mask_of(x for x in range(P.n) if P.up[x] == 1 << x)


def mnl_mask(P: FinitePoset) -> int:
    return mask_of(x for x in range(P.n) if P.down[x] == 1 << x)


def mxl(P: FinitePoset) -> frozenset:
    return bits(mxl_mask(P))


def mnl(P: FinitePoset) -> frozenset:
    return bits(mnl_mask(P))


def components_mask(P: FinitePoset, S: int) -> list:
    """Connected components of the comparability graph restricted to ``S``.

    Blocks are returned as masks ordered by their least element.
    """
    blocks = []
    rest = S
    while rest:
        seed = rest & -rest
        block = seed
        frontier = seed
        while frontier:
            grow = 0
            for x in iter_bits(frontier):
                grow |= (P.down[x] | P.up[x]) & S
            frontier = grow & ~block
            block |= grow
        blocks.append(block)
        rest &= ~block
    return blocks


def connected_components(P: FinitePoset, S: Iterable[int] | None = None) -> list:
    S = P.full if S is None else mask_of(S)
    return [bits(b) for b in components_mask(P, S)]


def is_connected_mask(P: FinitePoset, S: int) -> bool:
    return S != 0 and len(components_mask(P, S)) == 1


def is_chain_mask(P: FinitePoset, S: int) -> bool:
    return all(S & ~(P.down[x] | P.up[x]) == 0 for x in iter_bits(S))


def is_antichain_mask(P: FinitePoset, S: int) -> bool:
    return all((P.down[x] | P.up[x]) & S == 1 << x for x in iter_bits(S))


def is_chain(P: FinitePoset, S: Iterable[int]) -> bool:
    return is_chain_mask(P, mask_of(S))


def is_antichain(P: FinitePoset, S: Iterable[int]) -> bool:
    return is_antichain_mask(P, mask_of(S))


def maximal_chains_masks(P: FinitePoset) -> list:
    """All maximal chains, as masks; they are the Hasse paths from a minimal
    to a maximal element."""
    upper = [P.upper_covers(x) for x in range(P.n)]
    out = []

    def walk(x, acc):
        nxt = upper[x]
        if not nxt:
            out.append(acc)
            return
        for y in iter_bits(nxt):
            walk(y, acc | 1 << y)

    for m in iter_bits(mnl_mask(P)):
        walk(m, 1 << m)
    return out


def maximal_chains(P: FinitePoset) -> list:
    return [bits(c) for c in maximal_chains_masks(P)]


def lower_bounds_mask(P: FinitePoset, S: int) -> int:
    acc = P.full
    for s in iter_bits(S):
        acc &= P.down[s]
    return acc


def upper_bounds_mask(P: FinitePoset, S: int) -> int:
    acc = P.full
    for s in iter_bits(S):
        acc &= P.up[s]
    return acc


def greatest_mask(P: FinitePoset, S: int):
    """The maximum of the subset ``S``, or None."""
    for x in iter_bits(S):
        if S & ~P.down[x] == 0:
            return x
    return None


def least_mask(P: FinitePoset, S: int):
    for x in iter_bits(S):
        if S & ~P.up[x] == 0:
            return x
    return None


def _nonempty(S) -> int:
    m = mask_of(S)
    if not m:
        raise EmptySubset("subset must be non-empty")
    return m


def meet(P: FinitePoset, S: Iterable[int]):
    """Greatest lower bound of a non-empty subset, or None when absent."""
    return greatest_mask(P, lower_bounds_mask(P, _nonempty(S)))


def join(P: FinitePoset, S: Iterable[int]):
    return least_mask(P, upper_bounds_mask(P, _nonempty(S)))


def is_bounded(P: FinitePoset, S: Iterable[int]) -> bool:
    m = _nonempty(S)
    return bool(lower_bounds_mask(P, m) or upper_bounds_mask(P, m))


def linear_extension(P: FinitePoset) -> list:
    """Kahn's algorithm, always taking the least available id."""
    indeg = [popcount(P.lower_covers(y)) for y in range(P.n)]
    heap = [x for x in range(P.n) if indeg[x] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        x = heapq.heappop(heap)
        out.append(x)
        for y in iter_bits(P.upper_covers(x)):
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, y)
    return out


def height_profile(P: FinitePoset) -> tuple:
    """Per element: (length of longest chain below, length of longest chain above)."""
    order = linear_extension(P)
    below = [0] * P.n
    for y in order:
        for x in iter_bits(P.lower_covers(y)):
            below[y] = max(below[y], below[x] + 1)
    above = [0] * P.n
    for x in reversed(order):
        for y in iter_bits(P.upper_covers(x)):
            above[x] = max(above[x], above[y] + 1)
    return tuple(zip(below, above))


def is_isomorphic(P: FinitePoset, Q: FinitePoset):
    """An order isomorphism P -> Q as a tuple (``phi[x]`` in Q), or None."""
    if P.n != Q.n:
        return None
    if P.n > ISOMORPHISM_LIMIT:
        raise GuardExceeded(f"isomorphism search is capped at {ISOMORPHISM_LIMIT} elements")
    hp, hq = height_profile(P), height_profile(Q)

    def signature(R, h, x):
        return (popcount(R.down[x]), popcount(R.up[x]), h[x],
                popcount(R.lower_covers(x)), popcount(R.upper_covers(x)))

    sig_p = [signature(P, hp, x) for x in range(P.n)]
    sig_q = [signature(Q, hq, y) for y in range(Q.n)]
    if sorted(sig_p) != sorted(sig_q):
        return None
    candidates = [mask_of(y for y in range(Q.n) if sig_q[y] == sig_p[x]) for x in range(P.n)]
    order = linear_extension(P)
    phi = [-1] * P.n
    used = 0

    def extend(k):
        nonlocal used
        if k == len(order):
            return True
        x = order[k]
        for y in iter_bits(candidates[x] & ~used):
            ok = True
            for j in range(k):
                w = order[j]
                if P.leq(w, x) != Q.leq(phi[w], y) or P.leq(x, w) != Q.leq(y, phi[w]):
                    ok = False
                    break
            if ok:
                phi[x] = y
                used |= 1 << y
                if extend(k + 1):
                    return True
                used &= ~(1 << y)
                phi[x] = -1
        return False

    return tuple(phi) if extend(0) else None


# --------------------------------------------------------------------------
# text format


def parse_poset(text: str) -> FinitePoset:
    """Parse the line-based poset format.

    ``elements: a b c`` declares elements (and their id order); every other
    non-blank line is a relation ``a < b``. ``#`` starts a comment. Elements
    first seen in relations are appended in order of appearance.
    """
    labels = []
    seen = set()
    relations = []

    def add(lab):
        if lab not in seen:
            seen.add(lab)
            labels.append(lab)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("elements:"):
            for lab in line[len("elements:"):].split():
                if lab in seen:
                    raise FormatError(f"element {lab!r} declared twice", lineno)
                add(lab)
            continue
        parts = [p.strip() for p in line.split("<")]
        if len(parts) < 2 or any(not p or len(p.split()) != 1 for p in parts):
            raise FormatError(f"expected 'a < b', got {raw.strip()!r}", lineno)
        for p in parts:
            add(p)
        relations.extend((a, b, lineno) for a, b in zip(parts, parts[1:]))
    try:
        return build_poset(labels, [(a, b) for a, b, _ in relations])
    except CycleDetected as exc:
        # report the first line whose relations close a cycle
        for k in range(1, len(relations) + 1):
            try:
                build_poset(labels, [(a, b) for a, b, _ in relations[:k]])
            except CycleDetected as first:
                raise FormatError(str(first), relations[k - 1][2]) from exc
        raise FormatError(str(exc)) from exc


def format_poset(P: FinitePoset, comments: Mapping[int, str] | None = None) -> str:
    lines = ["elements: " + " ".join(P.labels)] if P.n else ["elements:"]
    for x, y in P.covers:
        lines.append(f"{P.labels[x]} < {P.labels[y]}")
    if comments:
        for x in sorted(comments):
            lines.append(f"# {P.labels[x]}: {comments[x]}")
    return "\n".join(lines) + "\n"


def to_dot(P: FinitePoset, name: str = "P", notes: Mapping[int, str] | None = None) -> str:
    """Graphviz source drawing exactly the Hasse covers, bottom to top."""
    out = [f"digraph {_dot_id(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
    for x, lab in enumerate(P.labels):
        text = lab if not notes or x not in notes else notes[x]
        out.append(f"  n{x} [label={_dot_str(text)}];")
    for x, y in P.covers:
        out.append(f"  n{x} -> n{y} [arrowhead=none];")
    out.append("}")
    return "\n".join(out) + "\n"


def _dot_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_id(s: str) -> str:
    return s if s.isidentifier() else _dot_str(s)


__all__ = [
    "ElementSet", "FinitePoset", "MonotoneMap", "antichain", "build_poset", "chain",
    "connected_components", "format_poset", "identity_map", "induced", "is_antichain",
    "is_bounded", "is_chain", "is_isomorphic", "join", "linear_extension", "maximal_chains",
    "meet", "mnl", "mxl", "opposite", "parse_poset", "permuted", "relabel", "to_dot",
]
