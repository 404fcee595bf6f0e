"""Brute-force reference implementations used only by the tests.

These share no code with the package beyond field arithmetic and subspace
dimensions: permutations are plain tuples, lengths come from breadth-first
search in the Cayley graph, cosets from explicit products.
"""
from __future__ import annotations

import itertools
from collections import deque
from functools import lru_cache


# ---------------------------------------------------------------- polynomials

def poly_mulmod(a, b, modulus, p):
    """Naive product of coefficient lists (constant term first) modulo a monic modulus."""
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    k = len(modulus) - 1
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            for i in range(k + 1):
                out[d - k + i] = (out[d - k + i] - c * modulus[i]) % p
    out = out[:k] + [0] * (k - len(out[:k]))
    return out


def is_irreducible_brute(poly, p):
    """No monic factor of degree 1..deg/2, by trial division over all candidates."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            f = list(low) + [1]
            r = list(poly)
            for i in range(len(r) - 1, d - 1, -1):
                c = r[i]
                if c:
                    for j in range(d + 1):
                        r[i - d + j] = (r[i - d + j] - c * f[j]) % p
            if not any(r[:d]):
                return False
    return True


# ---------------------------------------------------------------- permutations

def compose(v, w):
    """(v w)(i) = v(w(i)) on signed windows."""
    def ev(x, a):
        return x[a - 1] if a > 0 else -x[-a - 1]
    return tuple(ev(v, ev(w, i + 1)) for i in range(len(w)))


def inverse(w):
    out = [0] * len(w)
    for i, a in enumerate(w, 1):
        if a > 0:
            out[a - 1] = i
        else:
            out[-a - 1] = -i
    return tuple(out)


def generators(kind, rank):
    gens = []
    idn = list(range(1, rank + 1))
    for i in range(1, rank):
        s = list(idn)
        s[i - 1], s[i] = s[i], s[i - 1]
        gens.append(tuple(s))
    if kind == "BC":
        s = list(idn)
        s[-1] = -s[-1]
        gens.append(tuple(s))
    return gens


@lru_cache(maxsize=None)
def bfs_lengths(kind, rank):
    """Word length of every element, by breadth-first search from the identity."""
    start = tuple(range(1, rank + 1))
    dist = {start: 0}
    todo = deque([start])
    gens = generators(kind, rank)
    while todo:
        w = todo.popleft()
        for s in gens:
            v = compose(w, s)
            if v not in dist:
                dist[v] = dist[w] + 1
                todo.append(v)
    return dist


def simple(kind, rank, i):
    return generators(kind, rank)[i - 1]


def parabolic(kind, rank, J):
    """All elements of W_J, by closure under the chosen generators."""
    start = tuple(range(1, rank + 1))
    seen = {start}
    todo = [start]
    gens = [simple(kind, rank, i) for i in J]
    while todo:
        w = todo.pop()
        for s in gens:
            v = compose(w, s)
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return seen


def left_coset_min_reps(kind, rank, J):
    """Minimal-length elements of each coset W_J w."""
    lengths = bfs_lengths(kind, rank)
    WJ = parabolic(kind, rank, J)
    reps, seen = set(), set()
    for w in lengths:
        if w in seen:
            continue
        coset = {compose(a, w) for a in WJ}
        seen |= coset
        reps.add(min(coset, key=lambda v: (lengths[v], v)))
    return reps


def double_coset_min_reps(kind, rank, J, K):
    lengths = bfs_lengths(kind, rank)
    WJ, WK = parabolic(kind, rank, J), parabolic(kind, rank, K)
    out, seen = {}, set()
    for w in lengths:
        if w in seen:
            continue
        coset = {compose(compose(a, w), b) for a in WJ for b in WK}
        seen |= coset
        rep = min(coset, key=lambda v: (lengths[v], v))
        for v in coset:
            out[v] = rep
    return out


def conjugate_in_simple(kind, rank, w, K):
    """{s simple : w^-1 s w in W_K simple set}, i.e. simple reflections of the form w t w^-1, t in K."""
    gens = dict(enumerate(generators(kind, rank), 1))
    inv = {v: k for k, v in gens.items()}
    out = set()
    for t in K:
        c = compose(compose(w, gens[t]), inverse(w))
        if c in inv:
            out.add(inv[c])
    return frozenset(out)


def reflections(kind, rank):
    """All reflections: conjugates of simple reflections."""
    lengths = bfs_lengths(kind, rank)
    out = set()
    for w in lengths:
        for s in generators(kind, rank):
            out.add(compose(compose(w, s), inverse(w)))
    return out


@lru_cache(maxsize=None)
def bruhat_relation(kind, rank):
    """Set of pairs (v, w) with v <= w, as the transitive closure of w -> w t with l(wt) > l(w)."""
    lengths = bfs_lengths(kind, rank)
    refl = reflections(kind, rank)
    up = {w: [compose(w, t) for t in refl if lengths[compose(w, t)] > lengths[w]] for w in lengths}
    rel = set()
    for v in lengths:
        todo, seen = [v], {v}
        while todo:
            a = todo.pop()
            for b in up[a]:
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        rel |= {(v, b) for b in seen}
    return frozenset(rel)


# ---------------------------------------------------------------- T(J) sequences

def composition_subset(comp):
    """Simple reflections not at partial sums of the composition."""
    n = sum(comp)
    cuts = set(itertools.accumulate(comp))
    return frozenset(a for a in range(1, n) if a not in cuts)


def all_sequences(n, J, x):
    """Every stabilizing sequence of T(J), by depth-first search over all of S_n."""
    dreps_cache = {}

    def dreps(A, B):
        key = (A, B)
        if key not in dreps_cache:
            dreps_cache[key] = double_coset_min_reps("A", n, A, B)
        return dreps_cache[key]

    w_all = list(bfs_lengths("A", n))
    out = []

    def rec(prefix, Jn, prev):
        Kn = conjugate_in_simple("A", n, x, Jn)
        table = dreps(Jn, Kn)
        for u in w_all:
            if table[u] != u:
                continue
            if prev is not None:
                pu, pJ, pK = prev
                WJ, WK = parabolic("A", n, Jn), parabolic("A", n, pK)
                if u not in {compose(compose(a, pu), b) for a in WJ for b in WK}:
                    continue
            Jnext = Jn & conjugate_in_simple("A", n, compose(u, x), Jn)
            seq = prefix + [u]
            if Jnext == Jn:
                out.append(seq)
            else:
                rec(seq, Jnext, (u, Jn, Kn))

    rec([], frozenset(J), None)
    return out


# ---------------------------------------------------------------- relative position

def model_intersections(w, a_dims, b_dims):
    """|{1..a} cap w({1..b})| for all member dims, the profile of (E, wE)."""
    return {(a, b): len(set(range(1, a + 1)) & {w[i] for i in range(b)}) for a in a_dims for b in b_dims}


def brute_relpos(gamma_chain, delta_chain, n):
    """Minimal permutation whose model pair has the same intersection profile."""
    lengths = bfs_lengths("A", n)
    a_dims = [s.dim for s in gamma_chain]
    b_dims = [s.dim for s in delta_chain]
    target = {(g.dim, d.dim): (g & d).dim for g in gamma_chain for d in delta_chain}
    hits = [w for w in lengths if model_intersections(w, a_dims, b_dims) == target]
    return min(hits, key=lambda w: (lengths[w], w))


# ---------------------------------------------------------------- positive roots of B_m

def bc_levi_positive_roots(rank, J):
    """Positive roots of B_m whose simple-root support lies in J."""
    count = 0
    for i in range(1, rank + 1):
        if set(range(i, rank + 1)) <= set(J):  # e_i
            count += 1
        for j in range(i + 1, rank + 1):
            if set(range(i, j)) <= set(J):  # e_i - e_j
                count += 1
            if set(range(i, rank + 1)) <= set(J):  # e_i + e_j
                count += 1
    return count
