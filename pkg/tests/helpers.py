"""Shared generators and brute-force oracles for the test-suite.

The oracles here deliberately avoid the bitmask machinery of the package:
they work with plain Python sets and nested loops.
"""

import random
from itertools import combinations
from math import gcd

from hypothesis import strategies as st

from crosscut.poset import FinitePoset, build_poset


def random_poset(rng: random.Random, n: int, p: float = 0.35) -> FinitePoset:
    """Random poset on n elements; labels are shuffled so that id order is not
    automatically a linear extension."""
    order = list(range(n))
    rng.shuffle(order)
    rels = [(f"e{order[i]}", f"e{order[j]}") for i in range(n) for j in range(i + 1, n)
            if rng.random() < p]
    return build_poset([f"e{k}" for k in range(n)], rels)


def random_posets(seed: int, count: int, max_n: int, min_n: int = 1):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        out.append(random_poset(rng, n, rng.choice((0.2, 0.3, 0.45, 0.6))))
    return out


@st.composite
def posets(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(n)))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    rels = [(f"v{order[i]}", f"v{order[j]}") for (i, j), k in zip(pairs, keep) if k]
    return build_poset([f"v{k}" for k in range(n)], rels)


# ---------------------------------------------------------------- order oracles


def leq_oracle(labels, relations):
    """Reflexive-transitive closure by depth-first search over the raw pairs."""
    succ = {a: set() for a in labels}
    for a, b in relations:
        succ[a].add(b)
    out = set()
    for a in labels:
        stack, seen = [a], {a}
        while stack:
            x = stack.pop()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out |= {(a, b) for b in seen}
    return out


def star_oracle(P, a):
    return {x for x in range(P.n) if P.leq(x, a) or P.leq(a, x)}


def star_set_oracle(P, A):
    out = set(range(P.n))
    for a in A:
        out &= star_oracle(P, a)
    return out


def components_oracle(P, S):
    S = set(S)
    blocks = []
    while S:
        x = S.pop()
        block, stack = {x}, [x]
        while stack:
            y = stack.pop()
            for z in list(S):
                if P.leq(y, z) or P.leq(z, y):
                    S.discard(z)
                    block.add(z)
                    stack.append(z)
        blocks.append(frozenset(block))
    return blocks


def meet_oracle(P, S):
    lows = [z for z in range(P.n) if all(P.leq(z, s) for s in S)]
    best = [z for z in lows if all(P.leq(w, z) for w in lows)]
    return best[0] if best else None


def join_oracle(P, S):
    ups = [z for z in range(P.n) if all(P.leq(s, z) for s in S)]
    best = [z for z in ups if all(P.leq(z, w) for w in ups)]
    return best[0] if best else None


def chains_oracle(P):
    """All non-empty chains, by brute force over subsets."""
    out = []
    for k in range(1, P.n + 1):
        for S in combinations(range(P.n), k):
            if all(P.leq(a, b) or P.leq(b, a) for a, b in combinations(S, 2)):
                out.append(frozenset(S))
    return out


def coherent_oracle(P, X):
    """Every non-empty subset of X with a common lower or upper bound has a
    meet or a join."""
    X = sorted(X)
    for k in range(1, len(X) + 1):
        for A in combinations(X, k):
            lower = any(all(P.leq(z, a) for a in A) for z in range(P.n))
            upper = any(all(P.leq(a, z) for a in A) for z in range(P.n))
            if (lower or upper) and meet_oracle(P, A) is None and join_oracle(P, A) is None:
                return False
    return True


def cutset_oracle(P, X):
    X = set(X)
    for c in chains_oracle(P) + [frozenset()]:
        if not any(all(P.leq(a, x) or P.leq(x, a) for a in c) for x in X):
            if c or P.n:
                return False
    return True


# ---------------------------------------------------------------- linear algebra


def naive_snf(M):
    """Textbook Smith normal form by elementary row and column operations.

    Pivot on the first non-zero entry of the remaining block, clear its row and
    column by repeated division, and fix divisibility by adding a row.
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        pos = next(((i, j) for i in range(t, m) for j in range(t, n) if A[i][j]), None)
        if pos is None:
            break
        i, j = pos
        A[t], A[i] = A[i], A[t]
        for r in A:
            r[t], r[j] = r[j], r[t]
        while True:
            changed = False
            for i in range(t + 1, m):
                while A[i][t]:
                    q = A[i][t] // A[t][t]
                    for k in range(t, n):
                        A[i][k] -= q * A[t][k]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                    changed = True
            for j in range(t + 1, n):
                while A[t][j]:
                    q = A[t][j] // A[t][t]
                    for r in range(t, m):
                        A[r][j] -= q * A[r][t]
                    if A[t][j]:
                        for r in A:
                            r[t], r[j] = r[j], r[t]
                    changed = True
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is not None:
                for k in range(t, n):
                    A[t][k] += A[bad[0]][k]
                continue
            if not changed:
                break
        diag.append(abs(A[t][t]))
        t += 1
    return tuple(diag)


def _det(M):
    if not M:
        return 1
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1:] for r in M[1:]])
               for j in range(len(M)) if M[0][j])


def determinantal_factors(M):
    """Invariant factors as ratios of gcds of k-by-k minors."""
    m = len(M)
    n = len(M[0]) if m else 0
    ds = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, _det([[M[r][c] for c in cols] for r in rows]))
        if g == 0:
            break
        ds.append(g)
    return tuple(ds[k] // ds[k - 1] for k in range(1, len(ds)))


def rank_mod_p(M, p):
    A = [[x % p for x in r] for r in M]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def rank_rational(M):
    from fractions import Fraction
    A = [[Fraction(x) for x in r] for r in M]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c] / A[rank][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def random_matrix(rng, max_dim=8, lo=-5, hi=5):
    m, n = rng.randint(1, max_dim), rng.randint(1, max_dim)
    density = rng.choice((0.3, 0.6, 1.0))
    return [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(n)]
            for _ in range(m)]
