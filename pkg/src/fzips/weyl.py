"""Weyl groups of type A (permutations) and B/C (signed permutations).

Type A of rank n means S_n with simple reflections t_a = (a a+1),
a = 1..n-1.  Type BC of rank m means signed permutations of {1..m} with
s_i swapping coordinates i, i+1 (i < m) and s_m changing the sign of the
last coordinate.  Products compose right to left: (v*w)(i) = v(w(i)).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

__all__ = [
    "WeylElement",
    "SimpleSubset",
    "identity",
    "simple_reflection",
    "length",
    "longest_element",
    "is_min_left",
    "is_min_right",
    "min_coset_reps",
    "min_double_coset_rep",
    "double_coset_x",
    "conjugate_subset",
    "intersect_conjugate",
    "bruhat_leq",
    "dim_par",
    "iota_embed",
    "composition_of_type",
    "subset_of_composition",
    "composition_of_subset",
    "all_elements",
    "group_order",
]

A = "A"
BC = "BC"


@dataclass(frozen=True)
class WeylElement:
    kind: str
    window: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in (A, BC):
            raise ValueError(f"unknown Weyl group kind {self.kind!r}")
        w = self.window
        if self.kind == A:
            if sorted(w) != list(range(1, len(w) + 1)):
                raise ValueError(f"{list(w)} is not a permutation")
        elif sorted(abs(x) for x in w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{list(w)} is not a signed permutation")

    @property
    def rank(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        if i < 0:
            return -self.window[-i - 1]
        return self.window[i - 1]

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if other.kind != self.kind or other.rank != self.rank:
            raise ValueError("cannot multiply elements of different Weyl groups")
        return WeylElement(self.kind, tuple(self(x) for x in other.window))

    def inverse(self) -> "WeylElement":
        out = [0] * self.rank
        for i, x in enumerate(self.window, start=1):
            if x > 0:
                out[x - 1] = i
            else:
                out[-x - 1] = -i
        return WeylElement(self.kind, tuple(out))

    def length(self) -> int:
        return length(self)

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.rank + 1))

    def to_json(self) -> dict:
        return {"kind": self.kind, "window": list(self.window)}

    @staticmethod
    def from_json(obj) -> "WeylElement":
        if isinstance(obj, list):
            return WeylElement(A, tuple(obj))
        return WeylElement(obj.get("kind", A), tuple(obj["window"]))

    def __repr__(self) -> str:
        return f"{self.kind}{list(self.window)}"


@dataclass(frozen=True)
class SimpleSubset:
    kind: str
    rank: int
    included: frozenset

    def __post_init__(self):
        top = self.max_index(self.kind, self.rank)
        for i in self.included:
            if not 1 <= i <= top:
                raise ValueError(f"simple reflection index {i} out of range for {self.kind}{self.rank}")

    @staticmethod
    def max_index(kind: str, rank: int) -> int:
        return rank - 1 if kind == A else rank

    @staticmethod
    def of(kind: str, rank: int, indices: Iterable[int]) -> "SimpleSubset":
        return SimpleSubset(kind, rank, frozenset(indices))

    @staticmethod
    def full(kind: str, rank: int) -> "SimpleSubset":
        return SimpleSubset(kind, rank, frozenset(range(1, SimpleSubset.max_index(kind, rank) + 1)))

    @staticmethod
    def empty(kind: str, rank: int) -> "SimpleSubset":
        return SimpleSubset(kind, rank, frozenset())

    def indices(self) -> list[int]:
        return sorted(self.included)

    def complement(self) -> "SimpleSubset":
        return SimpleSubset(self.kind, self.rank,
                            frozenset(range(1, self.max_index(self.kind, self.rank) + 1)) - self.included)

    def __and__(self, other: "SimpleSubset") -> "SimpleSubset":
        return SimpleSubset(self.kind, self.rank, self.included & other.included)

    def __le__(self, other: "SimpleSubset") -> bool:
        return self.included <= other.included

    def __len__(self) -> int:
        return len(self.included)

    def __iter__(self):
        return iter(self.indices())

    def __contains__(self, i: int) -> bool:
        return i in self.included

    def to_json(self) -> list:
        return self.indices()

    def __repr__(self) -> str:
        return f"{self.kind}{self.rank}{self.indices()}"


def identity(kind: str, rank: int) -> WeylElement:
    return WeylElement(kind, tuple(range(1, rank + 1)))


@lru_cache(maxsize=None)
def simple_reflection(kind: str, rank: int, i: int) -> WeylElement:
    w = list(range(1, rank + 1))
    if kind == BC and i == rank:
        w[-1] = -w[-1]
    else:
        if not 1 <= i < rank:
            raise ValueError(f"no simple reflection {i} in {kind}{rank}")
        w[i - 1], w[i] = w[i], w[i - 1]
    return WeylElement(kind, tuple(w))


def _simple_lookup(kind: str, rank: int) -> dict[WeylElement, int]:
    return {simple_reflection(kind, rank, i): i
            for i in range(1, SimpleSubset.max_index(kind, rank) + 1)}


def length(w: WeylElement) -> int:
    win = w.window
    m = len(win)
    if w.kind == A:
        return sum(1 for i in range(m) for j in range(i + 1, m) if win[i] > win[j])
    # count positive roots (e_i - e_j, e_i + e_j, e_i) sent to negative ones;
    # a vector is positive when its lowest-index nonzero coordinate is
    ln = 0
    for i in range(m):
        a, si = abs(win[i]), win[i] > 0
        if not si:
            ln += 1
        for j in range(i + 1, m):
            b, sj = abs(win[j]), win[j] > 0
            if a < b:
                # e_i -+ e_j -> s_i e_a ... ; sign decided by s_i
                if not si:
                    ln += 2
            else:
                # decided by the e_b term: -s_j for the difference, +s_j for the sum
                ln += 1
    return ln


def is_min_left(w: WeylElement, J: SimpleSubset) -> bool:
    """w is the shortest element of W_J w."""
    if w.kind == A:
        inv = w.inverse().window
        return all(inv[a - 1] < inv[a] for a in J.included)
    lw = length(w)
    return all(length(simple_reflection(w.kind, w.rank, i) * w) > lw for i in J.included)


def is_min_right(w: WeylElement, K: SimpleSubset) -> bool:
    """w is the shortest element of w W_K."""
    if w.kind == A:
        win = w.window
        return all(win[a - 1] < win[a] for a in K.included)
    lw = length(w)
    return all(length(w * simple_reflection(w.kind, w.rank, i)) > lw for i in K.included)


def longest_element(kind: str, rank: int, J: SimpleSubset | None = None) -> WeylElement:
    if J is None:
        J = SimpleSubset.full(kind, rank)
    w = identity(kind, rank)
    gens = [simple_reflection(kind, rank, i) for i in J.indices()]
    lw = 0
    grown = True
    while grown:
        grown = False
        for s in gens:
            ws = w * s
            lws = length(ws)
            if lws > lw:
                w, lw, grown = ws, lws, True
    return w


def _check_pair(J: SimpleSubset, K: SimpleSubset | None) -> None:
    if K is not None and (K.kind != J.kind or K.rank != J.rank):
        raise ValueError("subsets belong to different Weyl groups")


def min_coset_reps(J: SimpleSubset, K: SimpleSubset | None = None) -> list[WeylElement]:
    """All of ^J W (or ^J W ^K), ordered by (length, window).

    Generated outward from the identity by right multiplication, which never
    leaves ^J W along reduced words, so W itself is not materialized.
    """
    _check_pair(J, K)
    return list(_min_coset_reps(J, K))


@lru_cache(maxsize=4096)
def _min_coset_reps(J: SimpleSubset, K: SimpleSubset | None) -> tuple[WeylElement, ...]:
    kind, rank = J.kind, J.rank
    gens = [simple_reflection(kind, rank, i) for i in range(1, SimpleSubset.max_index(kind, rank) + 1)]
    e = identity(kind, rank)
    seen = {e: 0}
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            lw = seen[w]
            for s in gens:
                ws = w * s
                if ws in seen:
                    continue
                lws = length(ws)
                if lws == lw + 1 and is_min_left(ws, J):
                    seen[ws] = lws
                    nxt.append(ws)
        frontier = nxt
    out = [w for w in seen if K is None or is_min_right(w, K)]
    out.sort(key=lambda w: (seen[w], w.window))
    return tuple(out)


def min_double_coset_rep(w: WeylElement, J: SimpleSubset, K: SimpleSubset) -> WeylElement:
    """Shortest element of W_J w W_K, reached by descending steps."""
    _check_pair(J, K)
    left = [simple_reflection(w.kind, w.rank, i) for i in J.indices()]
    right = [simple_reflection(w.kind, w.rank, i) for i in K.indices()]
    lw = length(w)
    moved = True
    while moved:
        moved = False
        for s in left:
            v = s * w
            lv = length(v)
            if lv < lw:
                w, lw, moved = v, lv, True
        for s in right:
            v = w * s
            lv = length(v)
            if lv < lw:
                w, lw, moved = v, lv, True
    return w


def conjugate_subset(w: WeylElement, K: SimpleSubset) -> SimpleSubset:
    """The subset w K w^{-1}; every conjugate must again be simple."""
    lookup = _simple_lookup(K.kind, K.rank)
    winv = w.inverse()
    out = set()
    for i in K.indices():
        r = w * simple_reflection(K.kind, K.rank, i) * winv
        if r not in lookup:
            raise ValueError(f"conjugate of simple reflection {i} by {w} is not simple")
        out.add(lookup[r])
    return SimpleSubset(K.kind, K.rank, frozenset(out))


def intersect_conjugate(J: SimpleSubset, w: WeylElement, K: SimpleSubset) -> SimpleSubset:
    """J intersected with w K w^{-1}, as sets of reflections."""
    lookup = _simple_lookup(K.kind, K.rank)
    winv = w.inverse()
    out = set()
    for i in K.indices():
        r = w * simple_reflection(K.kind, K.rank, i) * winv
        j = lookup.get(r)
        if j is not None and j in J.included:
            out.add(j)
    return SimpleSubset(J.kind, J.rank, frozenset(out))


def double_coset_x(J: SimpleSubset, K: SimpleSubset) -> WeylElement:
    """Shortest element x of W_K w0 W_J; it satisfies x J x^{-1} = K."""
    _check_pair(J, K)
    w0 = longest_element(J.kind, J.rank)
    if conjugate_subset(w0, J) != K:
        raise ValueError(f"{K} is not the opposite type of {J}")
    x = min_double_coset_rep(w0, K, J)
    if conjugate_subset(x, J) != K:
        raise ValueError("internal error: x does not conjugate J onto K")
    return x


def _rank_table(win: Sequence[int]) -> list[list[int]]:
    n = len(win)
    # t[i][j] = #{a <= i : win(a) >= j}, i,j in 1..n
    t = [[0] * (n + 2) for _ in range(n + 1)]
    for i in range(1, n + 1):
        v = win[i - 1]
        row, prev = t[i], t[i - 1]
        for j in range(1, n + 1):
            row[j] = prev[j] + (1 if v >= j else 0)
    return t


def bruhat_leq(v: WeylElement, w: WeylElement) -> bool:
    if v.kind != w.kind or v.rank != w.rank:
        raise ValueError("Bruhat comparison across different Weyl groups")
    if v.kind == BC:
        # Bruhat order of B_m is induced from S_{2m} under the symmetric embedding
        return bruhat_leq(iota_embed(v, "Sp"), iota_embed(w, "Sp"))
    tv, tw = _rank_table(v.window), _rank_table(w.window)
    n = v.rank
    return all(tv[i][j] <= tw[i][j] for i in range(1, n + 1) for j in range(1, n + 1))


def dim_par(J: SimpleSubset) -> int:
    """Number of positive roots outside the Levi of type J."""
    return length(longest_element(J.kind, J.rank)) - length(longest_element(J.kind, J.rank, J))


def iota_embed(w: WeylElement, target: str) -> WeylElement:
    """Signed permutation of {1..m} as a centrally symmetric permutation.

    target "Sp" gives S_{2m}, "SO" gives S_{2m+1} with the middle point fixed.
    Coordinate i sits at position i and -i at position N+1-i.
    """
    if w.kind != BC:
        raise ValueError("iota_embed expects a signed permutation")
    m = w.rank
    if target in ("Sp", "C", "symplectic"):
        N = 2 * m
    elif target in ("SO", "B", "symmetric", "orthogonal"):
        N = 2 * m + 1
    else:
        raise ValueError(f"unknown embedding target {target!r}")

    def pos(x: int) -> int:
        return x if x > 0 else N + 1 + x

    out = list(range(1, N + 1))
    for i in range(1, m + 1):
        out[i - 1] = pos(w(i))
        out[N - i] = pos(w(-i))
    return WeylElement(A, tuple(out))


# ---- compositions and type functions (type A) ----

def subset_of_composition(comp: Sequence[int]) -> SimpleSubset:
    """Subset whose standard parabolic has diagonal blocks of the given sizes."""
    n = sum(comp)
    sums = set(itertools.accumulate(comp))
    return SimpleSubset(A, n, frozenset(a for a in range(1, n) if a not in sums))


def composition_of_subset(J: SimpleSubset) -> tuple[int, ...]:
    if J.kind != A:
        raise ValueError("compositions describe type A subsets only")
    out, run = [], 1
    for a in range(1, J.rank):
        if a in J.included:
            run += 1
        else:
            out.append(run)
            run = 1
    out.append(run)
    return tuple(out)


def composition_of_type(tau: Mapping[int, int]) -> tuple[SimpleSubset, tuple[int, ...]]:
    """Subset J and block sizes (n_r, ..., n_1), n_j = tau(i_j), i_1 < ... < i_r."""
    items = sorted((i, d) for i, d in tau.items() if d)
    if not items:
        raise ValueError("type function with empty support")
    comp = tuple(d for _, d in reversed(items))
    return subset_of_composition(comp), comp


# ---- whole groups (small ranks only) ----

@lru_cache(maxsize=None)
def all_elements(kind: str, rank: int) -> tuple[WeylElement, ...]:
    if kind == A:
        return tuple(WeylElement(A, p) for p in itertools.permutations(range(1, rank + 1)))
    out = []
    for p in itertools.permutations(range(1, rank + 1)):
        for signs in itertools.product((1, -1), repeat=rank):
            out.append(WeylElement(BC, tuple(s * x for s, x in zip(signs, p))))
    return tuple(out)


def group_order(kind: str, rank: int) -> int:
    return factorial(rank) if kind == A else factorial(rank) * 2 ** rank


def parabolic_order(J: SimpleSubset) -> int:
    """|W_J|, from the connected components of J in the Dynkin diagram."""
    total, run = 1, 0
    top = SimpleSubset.max_index(J.kind, J.rank)
    for i in range(1, top + 2):
        if i <= top and i in J.included:
            run += 1
            continue
        if run:
            end = i - 1
            if J.kind == BC and end == top:
                total *= factorial(run) * 2 ** run
            else:
                total *= factorial(run + 1)
        run = 0
    return total
