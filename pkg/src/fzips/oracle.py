"""Brute-force enumeration over tiny fields.

Everything here is deliberately naive: subspaces come from listing reduced
echelon forms, F-zips from listing flag pairs and invertible blocks, orbits
from explicit group action.  Nothing reuses the relative-position code.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import prod

from .classify import classify
from .fzip import FZip, TypeFunction, apply_gl
from .gf import FieldParams
from .linalg import Matrix, Subspace, _Echelon
from . import weyl

__all__ = [
    "SizeGuardError",
    "OrbitReport",
    "PointCount",
    "gaussian_binomial",
    "q_multinomial",
    "gl_order",
    "count_fzips_closed_form",
    "enumerate_subspaces",
    "enumerate_flags",
    "enumerate_invertible",
    "enumerate_gl",
    "gl_generators",
    "enumerate_fzips",
    "gl_orbits",
    "count_points",
]

DEFAULT_LIMIT = 100_000
FULL_GROUP_LIMIT = 10_000


class SizeGuardError(ValueError):
    """An enumeration would exceed its size bound."""


def gaussian_binomial(n: int, d: int, q: int) -> int:
    if d < 0 or d > n:
        return 0
    num = prod(q ** (n - i) - 1 for i in range(d))
    den = prod(q ** (i + 1) - 1 for i in range(d))
    return num // den


def q_multinomial(parts, q: int) -> int:
    out, rest = 1, sum(parts)
    for d in parts:
        out *= gaussian_binomial(rest, d, q)
        rest -= d
    return out


def gl_order(n: int, q: int) -> int:
    return prod(q ** n - q ** i for i in range(n))


def count_fzips_closed_form(tau: TypeFunction, q: int) -> int:
    """Ordered flag pairs of the right type times the choices of phi."""
    flags = q_multinomial(tau.composition(), q)
    return flags * flags * prod(gl_order(d, q) for _, d in tau.values)


def _guard(count: int, limit: int, what: str) -> None:
    if count > limit:
        raise SizeGuardError(f"{what}: {count} items exceed the size guard {limit}")


def enumerate_subspaces(n: int, d: int, field: FieldParams, limit: int = DEFAULT_LIMIT) -> list[Subspace]:
    """All d-dimensional subspaces of F^n, one record each."""
    if not 0 <= d <= n:
        raise ValueError(f"no {d}-dimensional subspaces in dimension {n}")
    _guard(gaussian_binomial(n, d, field.order), limit, "subspace enumeration")
    out = []
    for pivots in itertools.combinations(range(n), d):
        pset = set(pivots)
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pset]
        for vals in itertools.product(range(field.order), repeat=len(slots)):
            rows = [[0] * n for _ in range(d)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(slots, vals):
                rows[r][c] = v
            out.append(Subspace(field, n, tuple(tuple(r) for r in rows)))
    return out


def enumerate_flags(dims, n: int, field: FieldParams, limit: int = DEFAULT_LIMIT) -> list[tuple[Subspace, ...]]:
    """All chains S_1 < S_2 < ... with the given strictly increasing dims."""
    dims = list(dims)
    if any(a >= b for a, b in zip(dims, dims[1:])) or (dims and (dims[0] < 0 or dims[-1] > n)):
        raise ValueError(f"bad dimension sequence {dims}")
    parts = [b - a for a, b in zip([0] + dims, dims + [n])]
    _guard(q_multinomial(parts, field.order), limit, "flag enumeration")
    by_dim = {d: enumerate_subspaces(n, d, field, limit) for d in set(dims)}
    chains = [()]
    for d in dims:
        chains = [c + (s,) for c in chains for s in by_dim[d] if not c or c[-1] <= s]
    return chains


def enumerate_invertible(d: int, field: FieldParams, limit: int = DEFAULT_LIMIT) -> list[Matrix]:
    """GL_d(F_q), built row by row keeping the rows independent."""
    q = field.order
    _guard(gl_order(d, q), limit, "general linear group enumeration")
    vectors = [v for v in itertools.product(range(q), repeat=d)]
    out = []

    def extend(rows):
        if len(rows) == d:
            out.append(Matrix(field, tuple(rows), d))
            return
        for v in vectors:
            ech = _Echelon(field.ops, d)
            for r in rows:
                ech.add(r)
            if ech.add(v):
                extend(rows + [v])

    extend([])
    return out


def enumerate_gl(n: int, field: FieldParams, limit: int = FULL_GROUP_LIMIT) -> list[Matrix]:
    return enumerate_invertible(n, field, limit)


def _primitive_element(field: FieldParams) -> int:
    ops = field.ops
    for a in range(2, field.order) if field.order > 2 else [1]:
        x, k = a, 1
        while x != 1:
            x = ops.mul(x, a)
            k += 1
        if k == field.order - 1:
            return a
    return 1


def gl_generators(n: int, field: FieldParams) -> list[Matrix]:
    """Elementary transvections by an additive basis plus one primitive diagonal matrix."""
    gens = []
    basis = [field.code([1 if t == s else 0 for t in range(field.k)]) for s in range(field.k)]
    for i, j in itertools.permutations(range(n), 2):
        for b in basis:
            rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
            rows[i][j] = b
            gens.append(Matrix(field, tuple(map(tuple, rows)), n))
    if field.order > 2:
        rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
        rows[0][0] = _primitive_element(field)
        gens.append(Matrix(field, tuple(map(tuple, rows)), n))
    return gens


def enumerate_fzips(tau: TypeFunction, field: FieldParams, limit: int = DEFAULT_LIMIT) -> list[FZip]:
    """Every F-zip of type tau over the field, in canonical form."""
    q = field.order
    _guard(count_fzips_closed_form(tau, q), limit, "F-zip enumeration")
    n = tau.height
    sup = tau.support
    vals = [d for _, d in tau.values]
    # C^{i_j} has dim vals[j] + ... ; D_{i_j} has dim vals[0] + ... + vals[j]
    c_dims = sorted({sum(vals[j:]) for j in range(1, len(vals))})
    d_dims = [sum(vals[: j + 1]) for j in range(len(vals) - 1)]
    c_chains = enumerate_flags(c_dims, n, field, limit)
    d_chains = enumerate_flags(d_dims, n, field, limit)
    blocks = [enumerate_invertible(d, field, limit) for d in vals]
    zero, full = Subspace.zero(field, n), Subspace.full(field, n)
    out = []
    for cc in c_chains:
        cfull = list(cc) + [full]  # increasing dims; C^{i_r} is the smallest
        C = {i: cfull[len(sup) - 1 - j] for j, i in enumerate(sup)}
        C[sup[-1] + 1] = zero
        for dc in d_chains:
            dfull = list(dc) + [full]
            D = {i: dfull[j] for j, i in enumerate(sup)}
            D[sup[0] - 1] = zero
            for choice in itertools.product(*blocks):
                out.append(FZip.build(field, n, C, D, dict(zip(sup, choice))))
    return out


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass
class Orbit:
    representative: FZip
    size: int
    invariant: weyl.WeylElement

    def to_json(self) -> dict:
        return {"size": self.size, "u": self.invariant.to_json(), "representative": self.representative.to_json()}


@dataclass
class OrbitReport:
    tau: TypeFunction
    field: FieldParams
    total_count: int
    orbits: list[Orbit]
    invariant_class_count: int
    coset_count: int
    mode: str
    consistency: dict[str, bool] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.consistency.values())

    def to_json(self) -> dict:
        return {
            "type": self.tau.to_json(),
            "field": self.field.to_json(),
            "total_count": self.total_count,
            "orbit_count": len(self.orbits),
            "invariant_class_count": self.invariant_class_count,
            "coset_count": self.coset_count,
            "mode": self.mode,
            "consistency": dict(self.consistency),
            "orbits": [o.to_json() for o in self.orbits],
        }


def gl_orbits(items, field: FieldParams, mode: str = "auto") -> OrbitReport:
    """Partition items into GL_n(F_q)-orbits and compare with the classify invariant.

    mode "full" acts by every group element; "generators" only by a
    generating set, which yields the same partition.  "auto" picks the full
    group when it has at most 10^4 elements.
    """
    items = list(items)
    if not items:
        raise ValueError("no F-zips to partition")
    n = items[0].n
    tau = items[0].tau
    if any(z.n != n or z.field != field or z.tau != tau for z in items):
        raise ValueError("items do not share one type and field")
    if mode == "auto":
        mode = "full" if gl_order(n, field.order) <= FULL_GROUP_LIMIT else "generators"
    if mode == "full":
        group = enumerate_gl(n, field)
    elif mode == "generators":
        group = gl_generators(n, field)
    else:
        raise ValueError(f"unknown orbit mode {mode!r}")
    index = {z: k for k, z in enumerate(items)}
    if len(index) != len(items):
        raise ValueError("duplicate items")
    uf = _UnionFind(len(items))
    seen = [False] * len(items)
    for k, z in enumerate(items):
        # with the whole group one pass per orbit suffices
        if mode == "full" and seen[k]:
            continue
        for g in group:
            other = index.get(apply_gl(g, z))
            if other is None:
                raise ValueError("input is not closed under the group action")
            uf.union(k, other)
            seen[other] = True
    invariants = [classify(z)[0] for z in items]
    members: dict[int, list[int]] = {}
    for k in range(len(items)):
        members.setdefault(uf.find(k), []).append(k)
    orbits, constant = [], True
    for root in sorted(members):
        ks = members[root]
        us = {invariants[k] for k in ks}
        constant &= len(us) == 1
        orbits.append(Orbit(items[root], len(ks), invariants[root]))
    classes = len(set(invariants))
    cosets = len(weyl.min_coset_reps(tau.subset()))
    consistency = {
        "sizes_sum": sum(o.size for o in orbits) == len(items),
        "invariant_constant_on_orbits": constant,
        "classes_equal_cosets": classes == cosets,
    }
    return OrbitReport(tau, field, len(items), orbits, classes, cosets, mode, consistency)


@dataclass
class PointCount:
    count: int
    closed_form: int
    enumerated: bool
    ratio: float

    def to_json(self) -> dict:
        return {"count": self.count, "closed_form": self.closed_form,
                "enumerated": self.enumerated, "ratio": self.ratio}


def count_points(tau: TypeFunction, field: FieldParams, limit: int = DEFAULT_LIMIT,
                 enumerate_: bool = True) -> PointCount:
    """Number of F-zips of type tau over F_q and its ratio to q^(n^2)."""
    q = field.order
    closed = count_fzips_closed_form(tau, q)
    count, done = closed, False
    if enumerate_:
        count = len(enumerate_fzips(tau, field, limit))
        done = True
    return PointCount(count, closed, done, count / q ** (tau.height ** 2))
