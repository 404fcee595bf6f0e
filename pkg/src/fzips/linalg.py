"""Dense exact linear algebra over GF(p^k).

Vectors are tuples of field codes (see `gf`).  Matrices act on column
vectors.  Subspaces are stored by their reduced row-echelon basis, so two
equal subspaces have identical records.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .gf import FieldElement, FieldParams

__all__ = [
    "Matrix",
    "Subspace",
    "Flag",
    "GradedPiece",
    "rref",
    "subspace_sum",
    "subspace_intersect",
    "complement_in",
    "frobenius_twist_subspace",
    "frobenius_twist_matrix",
    "DESCENDING",
    "ASCENDING",
]

Vec = tuple[int, ...]

DESCENDING = "descending"
ASCENDING = "ascending"


# ---------------------------------------------------------------- raw helpers

def _rref_rows(rows: Iterable[Sequence[int]], ncols: int, ops) -> tuple[list[list[int]], list[int]]:
    mat = [list(r) for r in rows]
    add, mul, neg, inv = ops.add, ops.mul, ops.neg, ops.inv
    pivots: list[int] = []
    r = 0
    nrows = len(mat)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        row = mat[r]
        a = row[c]
        if a != 1:
            ia = inv(a)
            row = [mul(ia, x) for x in row]
            mat[r] = row
        for i in range(nrows):
            if i != r:
                f = mat[i][c]
                if f:
                    nf = neg(f)
                    other = mat[i]
                    mat[i] = [add(x, mul(nf, y)) if y else x for x, y in zip(other, row)]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def _nullspace_rows(rows: Sequence[Sequence[int]], ncols: int, ops) -> list[list[int]]:
    """Basis of {x : rows . x = 0}."""
    red, pivots = _rref_rows(rows, ncols, ops)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = ops.neg(row[f])
        out.append(v)
    return out


def _dot(u: Sequence[int], v: Sequence[int], ops) -> int:
    add, mul = ops.add, ops.mul
    s = 0
    for a, b in zip(u, v):
        if a and b:
            s = add(s, mul(a, b))
    return s


class _Echelon:
    """Incremental row reduction, used for greedy basis extension."""

    def __init__(self, ops, n: int):
        self.ops = ops
        self.n = n
        self.rows: list[tuple[list[int], int]] = []

    def reduce(self, v: Sequence[int]) -> list[int]:
        add, mul, neg = self.ops.add, self.ops.mul, self.ops.neg
        v = list(v)
        for w, pc in self.rows:
            f = v[pc]
            if f:
                nf = neg(f)
                v = [add(x, mul(nf, y)) if y else x for x, y in zip(v, w)]
        return v

    def add(self, v: Sequence[int]) -> bool:
        r = self.reduce(v)
        for pc, x in enumerate(r):
            if x:
                ix = self.ops.inv(x)
                self.rows.append(([self.ops.mul(ix, y) for y in r], pc))
                return True
        return False


# ---------------------------------------------------------------- Matrix

@dataclass(frozen=True)
class Matrix:
    field: FieldParams
    rows: tuple[Vec, ...]
    ncols: int

    @staticmethod
    def from_rows(field: FieldParams, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        conv = []
        for r in rows:
            conv.append(tuple(_code(field, x) for x in r))
        if ncols is None:
            ncols = len(conv[0]) if conv else 0
        for r in conv:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        return Matrix(field, tuple(conv), ncols)

    @staticmethod
    def identity(field: FieldParams, n: int) -> "Matrix":
        return Matrix(field, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)

    @staticmethod
    def zeros(field: FieldParams, r: int, c: int) -> "Matrix":
        return Matrix(field, tuple((0,) * c for _ in range(r)), c)

    @staticmethod
    def from_columns(field: FieldParams, cols: Sequence[Sequence[int]], nrows: int) -> "Matrix":
        return Matrix(field, tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @staticmethod
    def permutation(field: FieldParams, perm: Sequence[int]) -> "Matrix":
        """Matrix sending e_k to e_{perm[k]} (perm given 1-based, one-line)."""
        n = len(perm)
        rows = [[0] * n for _ in range(n)]
        for k, img in enumerate(perm):
            rows[img - 1][k] = 1
        return Matrix(field, tuple(tuple(r) for r in rows), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, self.rows[i][j])

    def column(self, j: int) -> Vec:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        if not self.rows:
            return Matrix(self.field, tuple(() for _ in range(self.ncols)), 0)
        return Matrix(self.field, tuple(zip(*self.rows)), self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ops = self.field.ops
        cols = other.columns()
        return Matrix(
            self.field,
            tuple(tuple(_dot(r, c, ops) for c in cols) for r in self.rows),
            other.ncols,
        )

    def apply(self, v: Sequence[int]) -> Vec:
        ops = self.field.ops
        return tuple(_dot(r, v, ops) for r in self.rows)

    def scale(self, a: int) -> "Matrix":
        mul = self.field.ops.mul
        return Matrix(self.field, tuple(tuple(mul(a, x) for x in r) for r in self.rows), self.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        add = self.field.ops.add
        return Matrix(self.field, tuple(tuple(add(x, y) for x, y in zip(r, s))
                                        for r, s in zip(self.rows, other.rows)), self.ncols)

    def rank(self) -> int:
        return len(_rref_rows(self.rows, self.ncols, self.field.ops)[1])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = _rref_rows(aug, 2 * n, self.field.ops)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ValueError("matrix is singular")
        return Matrix(self.field, tuple(tuple(r[n:]) for r in red), n)

    def solve(self, b: Sequence[int]) -> Vec | None:
        """Some x with self.apply(x) = b, or None."""
        n = self.ncols
        aug = [list(r) + [bi] for r, bi in zip(self.rows, b)]
        red, piv = _rref_rows(aug, n + 1, self.field.ops)
        if piv and piv[-1] == n:
            return None
        x = [0] * n
        for row, pc in zip(red, piv):
            x[pc] = row[n]
        return tuple(x)

    def column_space(self) -> "Subspace":
        return Subspace.span(self.field, self.nrows, self.columns())

    def kernel(self) -> "Subspace":
        return Subspace.span(self.field, self.ncols, _nullspace_rows(self.rows, self.ncols, self.field.ops))

    def frobenius(self, times: int = 1) -> "Matrix":
        return Matrix(self.field, tuple(_frob_vec(self.field, r, times) for r in self.rows), self.ncols)

    def kron(self, other: "Matrix") -> "Matrix":
        mul = self.field.ops.mul
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append(tuple(mul(a, b) for a in r for b in s))
        return Matrix(self.field, tuple(rows), self.ncols * other.ncols)

    def to_json(self) -> list:
        F = self.field
        return [[list(F.coeffs(x)) for x in r] for r in self.rows]

    @staticmethod
    def from_json(field: FieldParams, obj: list, ncols: int | None = None) -> "Matrix":
        rows = [[_code_from_json(field, x) for x in r] for r in obj]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        return Matrix(field, tuple(tuple(r) for r in rows), ncols)


def _code(field: FieldParams, x) -> int:
    if isinstance(x, FieldElement):
        if x.field != field:
            raise ValueError("field mismatch")
        return x.value
    if isinstance(x, int):
        if not 0 <= x < field.order:
            raise ValueError(f"{x} is not an element code of {field}")
        return x
    return field.code(x)


def _code_from_json(field: FieldParams, x) -> int:
    if isinstance(x, int):
        return field.from_int(x)
    return field.code(x)


def _frob_vec(field: FieldParams, v: Sequence[int], times: int = 1) -> Vec:
    out = tuple(v)
    if times >= 0:
        for _ in range(times):
            out = tuple(field.frob(x) for x in out)
    else:
        for _ in range(-times):
            out = tuple(field.frob_inv(x) for x in out)
    return out


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    red, piv = _rref_rows(m.rows, m.ncols, m.field.ops)
    return Matrix(m.field, tuple(tuple(r) for r in red), m.ncols), piv


# ---------------------------------------------------------------- Subspace

@dataclass(frozen=True)
class Subspace:
    field: FieldParams
    n: int
    basis: tuple[Vec, ...]

    @staticmethod
    def span(field: FieldParams, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [v if type(v) is tuple and all(type(x) is int for x in v)
                else tuple(_code(field, x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != n:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {n}")
        red, _ = _rref_rows(vecs, n, field.ops)
        return Subspace(field, n, tuple(tuple(r) for r in red))

    @staticmethod
    def zero(field: FieldParams, n: int) -> "Subspace":
        return Subspace(field, n, ())

    @staticmethod
    def full(field: FieldParams, n: int) -> "Subspace":
        return Subspace(field, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def coordinate(field: FieldParams, n: int, indices: Iterable[int]) -> "Subspace":
        """Span of e_i for the given 1-based indices."""
        vecs = []
        for i in indices:
            v = [0] * n
            v[i - 1] = 1
            vecs.append(v)
        return Subspace.span(field, n, vecs)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        out = []
        for r in self.basis:
            for c, x in enumerate(r):
                if x:
                    out.append(c)
                    break
        return out

    def _check(self, other: "Subspace") -> None:
        if self.field != other.field or self.n != other.n:
            raise ValueError("subspaces live in different ambient spaces")

    def reduce(self, v: Sequence[int]) -> list[int]:
        ops = self.field.ops
        add, mul, neg = ops.add, ops.mul, ops.neg
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = v[pc]
            if f:
                nf = neg(f)
                v = [add(x, mul(nf, y)) if y else x for x, y in zip(v, row)]
        return v

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def annihilator(self) -> "Subspace":
        """{x : b . x = 0 for all b in the subspace} under the dot product."""
        null = _nullspace_rows(self.basis, self.n, self.field.ops)
        return Subspace.span(self.field, self.n, null)

    def image(self, g: Matrix) -> "Subspace":
        return Subspace.span(self.field, g.nrows, [g.apply(v) for v in self.basis])

    def frobenius(self, times: int = 1) -> "Subspace":
        return frobenius_twist_subspace(self, times)

    def to_json(self) -> dict:
        F = self.field
        return {"n": self.n, "basis": [[list(F.coeffs(x)) for x in r] for r in self.basis]}

    @staticmethod
    def from_json(field: FieldParams, obj: dict) -> "Subspace":
        n = int(obj["n"])
        rows = [[_code_from_json(field, x) for x in r] for r in obj["basis"]]
        return Subspace.span(field, n, rows)

    def __repr__(self) -> str:
        return f"Subspace(n={self.n}, dim={self.dim}, basis={list(map(list, self.basis))})"


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    if not b.basis:
        return a
    if not a.basis:
        return b
    return Subspace.span(a.field, a.n, a.basis + b.basis)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    if not a.basis or not b.basis:
        return Subspace.zero(a.field, a.n)
    if len(a.basis) == a.n or a == b:
        return b
    if len(b.basis) == b.n:
        return a
    return _intersect(a, b)


@lru_cache(maxsize=65536)
def _intersect(a: Subspace, b: Subspace) -> Subspace:
    ops = a.field.ops
    na = _nullspace_rows(a.basis, a.n, ops)
    nb = _nullspace_rows(b.basis, b.n, ops)
    return Subspace.span(a.field, a.n, _nullspace_rows(na + nb, a.n, ops))


def complement_in(inner: Subspace, outer: Subspace) -> Subspace:
    """Greedy extension of inner's basis by outer's RREF rows, in order."""
    if not inner <= outer:
        raise ValueError("inner subspace is not contained in outer subspace")
    return Subspace.span(outer.field, outer.n, _greedy_extension(inner, outer))


def _greedy_extension(inner: Subspace, outer: Subspace) -> list[Vec]:
    ech = _Echelon(outer.field.ops, outer.n)
    for v in inner.basis:
        ech.add(v)
    chosen = []
    for v in outer.basis:
        if ech.add(v):
            chosen.append(v)
    return chosen


def frobenius_twist_subspace(s: Subspace, e: int = 1) -> Subspace:
    return Subspace.span(s.field, s.n, [_frob_vec(s.field, v, e) for v in s.basis])


def frobenius_twist_matrix(m: Matrix) -> Matrix:
    return m.frobenius(1)


# ---------------------------------------------------------------- graded pieces

class GradedPiece:
    """The quotient big/small with its canonical basis of representatives.

    The representatives are the rows of big's RREF basis that extend small,
    chosen greedily, each reduced modulo small.
    """

    def __init__(self, big: Subspace, small: Subspace):
        self.big = big
        self.small = small
        self.field = big.field
        self.n = big.n
        reps = [tuple(small.reduce(v)) for v in _greedy_extension(small, big)]
        self.reps: tuple[Vec, ...] = tuple(reps)
        self.dim = len(reps)
        self._solver = None

    def _setup(self):
        ops = self.field.ops
        full = list(self.reps) + list(self.small.basis)
        _, piv = _rref_rows(full, self.n, ops)
        sub = Matrix(self.field, tuple(tuple(v[c] for c in piv) for v in full), len(piv))
        # row vector lam with lam . full = v  <=>  lam . sub = v[piv]
        self._solver = (piv, sub.inverse() if full else None)

    def coords(self, v: Sequence[int]) -> Vec:
        """Coordinates of the class of v (v must lie in big)."""
        if self.dim == 0:
            return ()
        if self._solver is None:
            self._setup()
        piv, inv = self._solver
        ops = self.field.ops
        w = [v[c] for c in piv]
        lam = tuple(_dot(w, inv.column(j), ops) for j in range(self.dim))
        return lam

    def lift(self, coords: Sequence[int]) -> Vec:
        ops = self.field.ops
        out = [0] * self.n
        for c, r in zip(coords, self.reps):
            if c:
                out = [ops.add(x, ops.mul(c, y)) for x, y in zip(out, r)]
        return tuple(out)

    def matrix_of(self, vectors: Sequence[Sequence[int]]) -> Matrix:
        """Matrix whose columns are the coordinates of the given vectors."""
        cols = [self.coords(v) for v in vectors]
        return Matrix.from_columns(self.field, cols, self.dim)


# ---------------------------------------------------------------- Flag

@dataclass(frozen=True)
class Flag:
    """A Z-indexed filtration stored on finitely many indices.

    Descending: the member at index i is the stored member at the least
    stored index >= i (zero beyond the last).  Ascending: the stored member
    at the greatest stored index <= i (zero before the first).
    """

    field: FieldParams
    n: int
    direction: str
    members: tuple[tuple[int, Subspace], ...]

    @staticmethod
    def build(field: FieldParams, n: int, direction: str, members: dict[int, Subspace]) -> "Flag":
        if direction not in (DESCENDING, ASCENDING):
            raise ValueError(f"unknown flag direction {direction!r}")
        for s in members.values():
            if s.n != n or s.field != field:
                raise ValueError("flag member lives in a different ambient space")
        return Flag(field, n, direction, tuple(sorted(members.items())))

    @staticmethod
    def from_chain(chain: Sequence[Subspace], direction: str = DESCENDING) -> "Flag":
        """Index a chain (listed by increasing dimension) consecutively from 0."""
        f = chain[0].field
        n = chain[0].n
        if direction == DESCENDING:
            mem = {i: s for i, s in enumerate(reversed(chain))}
        else:
            mem = {i: s for i, s in enumerate(chain)}
        return Flag.build(f, n, direction, mem)

    def __getitem__(self, i: int) -> Subspace:
        if self.direction == DESCENDING:
            for j, s in self.members:
                if j >= i:
                    return s
            return Subspace.zero(self.field, self.n)
        found = None
        for j, s in self.members:
            if j <= i:
                found = s
            else:
                break
        return found if found is not None else Subspace.zero(self.field, self.n)

    @property
    def indices(self) -> list[int]:
        return [j for j, _ in self.members]

    def chain(self) -> tuple[Subspace, ...]:
        """Distinct members together with 0 and the full space, by dimension."""
        seen = {}
        for _, s in self.members:
            seen[s] = None
        seen[Subspace.zero(self.field, self.n)] = None
        seen[Subspace.full(self.field, self.n)] = None
        return tuple(sorted(seen, key=lambda s: s.dim))

    def type_function(self) -> dict[int, int]:
        """i -> dim of the i-th graded piece, nonzero values only."""
        if not self.members:
            return {}
        lo = self.members[0][0] - 1
        hi = self.members[-1][0] + 1
        out = {}
        for i in range(lo, hi + 1):
            if self.direction == DESCENDING:
                d = self[i].dim - self[i + 1].dim
            else:
                d = self[i].dim - self[i - 1].dim
            if d:
                out[i] = d
        return out

    def graded(self, i: int) -> GradedPiece:
        if self.direction == DESCENDING:
            return GradedPiece(self[i], self[i + 1])
        return GradedPiece(self[i], self[i - 1])

    def image(self, g: Matrix) -> "Flag":
        return Flag(self.field, self.n, self.direction,
                    tuple((j, s.image(g)) for j, s in self.members))

    def frobenius(self, times: int = 1) -> "Flag":
        return Flag(self.field, self.n, self.direction,
                    tuple((j, s.frobenius(times)) for j, s in self.members))

    def to_json(self) -> dict:
        return {str(j): s.to_json() for j, s in self.members}
