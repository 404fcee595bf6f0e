"""F-zips: a space with a descending flag C, an ascending flag D and
Frobenius-semilinear isomorphisms phi_i : gr^i_C -> gr_i^D.

phi_i is stored as the matrix A of v -> A . sigma(v), with v written in
the canonical graded basis of gr^i_C and the result in that of gr_i^D.
"""
from __future__ import annotations

import random
from functools import lru_cache
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .gf import FieldParams, make_field
from .linalg import (
    ASCENDING,
    DESCENDING,
    Flag,
    GradedPiece,
    Matrix,
    Subspace,
    _dot,
    _frob_vec,
)
from . import weyl
from .weyl import WeylElement

__all__ = [
    "TypeFunction",
    "FZip",
    "DieudonneModule",
    "ValidationReport",
    "validate",
    "standard_fzip",
    "standard_data",
    "from_dieudonne",
    "to_dieudonne",
    "dual",
    "tensor",
    "base_change",
    "apply_gl",
    "random_fzip",
    "random_invertible",
    "semilinear_matrix",
]


@dataclass(frozen=True)
class TypeFunction:
    """Finitely supported i -> tau(i) > 0."""

    values: tuple[tuple[int, int], ...]

    @staticmethod
    def of(mapping: Mapping[int, int] | Iterable[tuple[int, int]]) -> "TypeFunction":
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        vals = tuple(sorted((int(i), int(d)) for i, d in items if d))
        for _, d in vals:
            if d < 0:
                raise ValueError("type function values must be nonnegative")
        if not vals:
            raise ValueError("type function with empty support")
        return TypeFunction(vals)

    @staticmethod
    def parse(text: str) -> "TypeFunction":
        """'1,1' means tau(0)=tau(1)=1; '0:1,2:1,1:19' lists i:tau(i)."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if any(":" in p for p in parts):
            return TypeFunction.of({int(p.split(":")[0]): int(p.split(":")[1]) for p in parts})
        return TypeFunction.of({i: int(p) for i, p in enumerate(parts)})

    def items(self):
        return self.values

    def __getitem__(self, i: int) -> int:
        for j, d in self.values:
            if j == i:
                return d
        return 0

    @property
    def support(self) -> list[int]:
        return [i for i, _ in self.values]

    @property
    def height(self) -> int:
        return sum(d for _, d in self.values)

    def subset(self) -> weyl.SimpleSubset:
        return weyl.composition_of_type(dict(self.values))[0]

    def composition(self) -> tuple[int, ...]:
        return weyl.composition_of_type(dict(self.values))[1]

    def to_json(self) -> dict:
        return {str(i): d for i, d in self.values}

    def __repr__(self) -> str:
        return "tau(" + ", ".join(f"{i}:{d}" for i, d in self.values) + ")"


@dataclass(frozen=True)
class FZip:
    field: FieldParams
    n: int
    C: Flag
    D: Flag
    phi: tuple[tuple[int, Matrix], ...]

    @staticmethod
    def build(field: FieldParams, n: int, C: Mapping[int, Subspace], D: Mapping[int, Subspace],
              phi: Mapping[int, Matrix]) -> "FZip":
        return FZip(field, n, Flag.build(field, n, DESCENDING, dict(C)),
                    Flag.build(field, n, ASCENDING, dict(D)), tuple(sorted(phi.items())))

    @property
    def tau(self) -> TypeFunction:
        return TypeFunction.of(self.C.type_function())

    @property
    def phi_map(self) -> dict[int, Matrix]:
        return dict(self.phi)

    def gr_C(self, i: int) -> GradedPiece:
        return self.C.graded(i)

    def gr_D(self, i: int) -> GradedPiece:
        return self.D.graded(i)

    def canonical(self) -> "FZip":
        """Same F-zip with flags stored on the support plus one tail index each."""
        sup = self.tau.support
        C = {i: self.C[i] for i in sup}
        C[sup[-1] + 1] = Subspace.zero(self.field, self.n)
        D = {i: self.D[i] for i in sup}
        D[sup[0] - 1] = Subspace.zero(self.field, self.n)
        return FZip.build(self.field, self.n, C, D, self.phi_map)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "type": self.tau.to_json(),
            "C": self.C.to_json(),
            "D": self.D.to_json(),
            "phi": {str(i): m.to_json() for i, m in self.phi},
        }

    @staticmethod
    def from_json(obj: dict) -> "FZip":
        F = FieldParams.from_json(obj["field"])
        n = int(obj["n"])
        C = {int(i): Subspace.from_json(F, s) for i, s in obj["C"].items()}
        D = {int(i): Subspace.from_json(F, s) for i, s in obj["D"].items()}
        for s in list(C.values()) + list(D.values()):
            if s.n != n:
                raise ValueError("flag member has the wrong ambient dimension")
        tau = obj.get("type", {})
        phi = {}
        for i, m in obj["phi"].items():
            d = int(tau.get(i, len(m)))
            phi[int(i)] = Matrix.from_json(F, m, ncols=len(m[0]) if m else d)
        return FZip.build(F, n, C, D, phi)


@dataclass
class ValidationReport:
    ok: bool
    errors: list[str] = dc_field(default_factory=list)
    tau: TypeFunction | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate(z: FZip) -> ValidationReport:
    errs: list[str] = []
    full = Subspace.full(z.field, z.n)
    for flag, name in ((z.C, "C"), (z.D, "D")):
        for j, s in flag.members:
            if s.field != z.field or s.n != z.n:
                errs.append(f"{name}[{j}]: member outside the ambient space")
        mem = flag.members
        for (j1, s1), (j2, s2) in zip(mem, mem[1:]):
            ok = s2 <= s1 if flag.direction == DESCENDING else s1 <= s2
            if not ok:
                errs.append(f"{name}: not nested between indices {j1} and {j2}")
    if errs:
        return ValidationReport(False, errs)
    if not z.C.members or z.C.members[0][1] != full:
        idx = z.C.members[0][0] if z.C.members else None
        errs.append(f"C: tail condition fails, member at index {idx} is not the whole space")
    if not z.D.members or z.D.members[-1][1] != full:
        idx = z.D.members[-1][0] if z.D.members else None
        errs.append(f"D: tail condition fails, member at index {idx} is not the whole space")
    if errs:
        return ValidationReport(False, errs)
    tc, td = z.C.type_function(), z.D.type_function()
    for i in sorted(set(tc) | set(td)):
        if tc.get(i, 0) != td.get(i, 0):
            errs.append(f"type mismatch at i={i}: dim gr^i_C = {tc.get(i, 0)}, dim gr_i^D = {td.get(i, 0)}")
    phi = z.phi_map
    for i in sorted(set(tc) | set(phi)):
        d = tc.get(i, 0)
        if i not in phi:
            if d:
                errs.append(f"phi missing at i={i}")
            continue
        m = phi[i]
        if d == 0:
            errs.append(f"phi given at i={i} where the graded piece is zero")
            continue
        if m.field != z.field:
            errs.append(f"phi[{i}] over the wrong field")
        elif m.shape != (td.get(i, 0), d):
            errs.append(f"phi[{i}] has shape {m.shape}, expected {(td.get(i, 0), d)}")
        elif not m.is_invertible():
            errs.append(f"non-isomorphism at i={i}: phi[{i}] is singular")
    if errs:
        return ValidationReport(False, errs)
    return ValidationReport(True, [], TypeFunction.of(tc))


def semilinear_matrix(src: GradedPiece, dst: GradedPiece, vectors: Sequence[Sequence[int]],
                      images: Sequence[Sequence[int]]) -> Matrix:
    """Matrix of the semilinear map sending each vector to its image.

    The vectors must represent a basis of src; with T their coordinates and
    Y those of the images, A . sigma(T) = Y.
    """
    T = src.matrix_of(vectors)
    Y = dst.matrix_of(images)
    return Y @ T.frobenius().inverse()


# ---------------------------------------------------------------- standard F-zips

@dataclass(frozen=True)
class StandardData:
    tau: TypeFunction
    J: weyl.SimpleSubset
    K: weyl.SimpleSubset
    x: WeylElement
    composition: tuple[int, ...]  # (n_r, ..., n_1)

    def block_J(self, j: int) -> range:
        """Positions of the j-th block of W_J (1-based j, block of size n_j)."""
        m = self.partial(j)
        n = self.tau.height
        return range(n - m + 1, n - self.partial(j - 1) + 1)

    def block_K(self, j: int) -> range:
        return range(self.partial(j - 1) + 1, self.partial(j) + 1)

    def partial(self, j: int) -> int:
        """m_j = n_1 + ... + n_j."""
        sizes = [d for _, d in self.tau.values]
        return sum(sizes[:j])


@lru_cache(maxsize=256)
def standard_data(tau: TypeFunction) -> StandardData:
    J, comp = weyl.composition_of_type(dict(tau.values))
    n = tau.height
    w0 = weyl.longest_element(weyl.A, n)
    K = weyl.conjugate_subset(w0, J)
    x = weyl.double_coset_x(J, K)
    return StandardData(tau, J, K, x, comp)


def standard_fzip(tau: TypeFunction, u: WeylElement, field: FieldParams | None = None) -> FZip:
    """The standard F-zip attached to u in ^J W.

    C^{i_j} is spanned by e_{u^{-1}(a)} for a <= n - m_{j-1}, D_{i_j} by
    e_1..e_{m_j}, and phi_{i_j} sends e_{u^{-1}(a)} to e_{x(a)} on the j-th
    block.  Equivalently the associated group element is the permutation
    matrix of x*u.
    """
    if not isinstance(tau, TypeFunction):
        tau = TypeFunction.of(tau)
    F = field or make_field(2)
    data = standard_data(tau)
    n = tau.height
    if u.kind != weyl.A or u.rank != n:
        raise ValueError(f"{u} is not an element of S_{n}")
    if not weyl.is_min_left(u, data.J):
        raise ValueError(f"{u} is not a minimal left coset representative for {data.J}")
    uinv = u.inverse()
    sup = tau.support
    r = len(sup)
    C, D, phi = {}, {}, {}
    for j, i in enumerate(sup, start=1):
        C[i] = Subspace.coordinate(F, n, [uinv(a) for a in range(1, n - data.partial(j - 1) + 1)])
        D[i] = Subspace.coordinate(F, n, range(1, data.partial(j) + 1))
    C[sup[-1] + 1] = Subspace.zero(F, n)
    D[sup[0] - 1] = Subspace.zero(F, n)
    z0 = FZip.build(F, n, C, D, {})
    for j, i in enumerate(sup, start=1):
        vecs, imgs = [], []
        for a in data.block_J(j):
            vecs.append(_unit(n, uinv(a)))
            imgs.append(_unit(n, data.x(a)))
        phi[i] = semilinear_matrix(z0.gr_C(i), z0.gr_D(i), vecs, imgs)
    assert r == len(phi)
    return FZip.build(F, n, C, D, phi)


def _unit(n: int, i: int) -> tuple[int, ...]:
    v = [0] * n
    v[i - 1] = 1
    return tuple(v)


# ---------------------------------------------------------------- Dieudonne modules

@dataclass(frozen=True)
class DieudonneModule:
    """F acts as v -> F . sigma(v), V as v -> V . sigma^{-1}(v)."""

    field: FieldParams
    n: int
    F: Matrix
    V: Matrix

    def ker_F(self) -> Subspace:
        return self.F.kernel().frobenius(-1)

    def im_F(self) -> Subspace:
        return self.F.column_space()

    def ker_V(self) -> Subspace:
        return self.V.kernel().frobenius(1)

    def im_V(self) -> Subspace:
        return self.V.column_space()

    def check(self) -> list[str]:
        errs = []
        if self.ker_F() != self.im_V():
            errs.append("Ker F differs from Im V")
        if self.im_F() != self.ker_V():
            errs.append("Im F differs from Ker V")
        return errs

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "n": self.n, "F": self.F.to_json(), "V": self.V.to_json()}


def from_dieudonne(d: DieudonneModule) -> FZip:
    errs = d.check()
    if errs:
        raise ValueError("; ".join(errs))
    F, n = d.field, d.n
    full, zero = Subspace.full(F, n), Subspace.zero(F, n)
    kerF, imF = d.ker_F(), d.im_F()
    C = {0: full, 1: kerF, 2: zero}
    Dm = {-1: zero, 0: imF, 1: full}
    z0 = FZip.build(F, n, C, Dm, {})
    phi = {}
    g0, h0 = z0.gr_C(0), z0.gr_D(0)
    if g0.dim:
        imgs = [d.F.apply(_frob_vec(F, c)) for c in g0.reps]
        phi[0] = h0.matrix_of(imgs)
    g1, h1 = z0.gr_C(1), z0.gr_D(1)
    if g1.dim:
        imgs = []
        for c in g1.reps:
            zsol = d.V.solve(c)
            if zsol is None:
                raise ValueError("Ker F is not contained in Im V")
            imgs.append(_frob_vec(F, zsol))
        phi[1] = h1.matrix_of(imgs)
    return FZip.build(F, n, C, Dm, phi).canonical()


def to_dieudonne(z: FZip) -> DieudonneModule:
    sup = z.tau.support
    if not set(sup) <= {0, 1}:
        raise ValueError(f"type support {sup} is not contained in {{0, 1}}")
    F, n = z.field, z.n
    phi = z.phi_map
    g0, h0 = z.gr_C(0), z.gr_D(0)
    g1, h1 = z.gr_C(1), z.gr_D(1)
    fcols, vcols = [], []
    A1inv = phi[1].inverse() if 1 in phi else None
    for j in range(1, n + 1):
        e = _unit(n, j)
        if 0 in phi:
            lam = _frob_vec(F, g0.coords(e))
            fcols.append(h0.lift(phi[0].apply(lam)))
        else:
            fcols.append((0,) * n)
        if A1inv is not None:
            mu = h1.coords(e)
            lam = _frob_vec(F, A1inv.apply(mu), -1)
            vcols.append(g1.lift(lam))
        else:
            vcols.append((0,) * n)
    return DieudonneModule(F, n, Matrix.from_columns(F, fcols, n), Matrix.from_columns(F, vcols, n))


# ---------------------------------------------------------------- dual, tensor

def dual(z: FZip) -> FZip:
    F, n = z.field, z.n
    tau = z.tau
    sup = sorted(-i for i in tau.support)
    C = {s: z.C[1 - s].annihilator() for s in sup}
    C[sup[-1] + 1] = Subspace.zero(F, n)
    D = {s: z.D[-s - 1].annihilator() for s in sup}
    D[sup[0] - 1] = Subspace.zero(F, n)
    zd = FZip.build(F, n, C, D, {})
    phi = {}
    ops = F.ops
    for s in sup:
        i = -s
        A = z.phi_map[i]
        fC, cC = zd.gr_C(s), z.gr_C(i)
        fD, cD = zd.gr_D(s), z.gr_D(i)
        PC = Matrix(F, tuple(tuple(_dot(f, c, ops) for c in cC.reps) for f in fC.reps), cC.dim)
        PD = Matrix(F, tuple(tuple(_dot(h, d, ops) for d in cD.reps) for h in fD.reps), cD.dim)
        phi[s] = (PC.frobenius() @ A.inverse() @ PD.inverse()).transpose()
    return FZip.build(F, n, C, D, phi)


def _kron_vec(u: Sequence[int], v: Sequence[int], ops) -> tuple[int, ...]:
    mul = ops.mul
    return tuple(mul(a, b) for a in u for b in v)


def tensor(a: FZip, b: FZip) -> FZip:
    if a.field != b.field:
        raise ValueError("tensor product of F-zips over different fields")
    F = a.field
    ops = F.ops
    n = a.n * b.n
    ta, tb = a.tau, b.tau
    sup = sorted({i + j for i in ta.support for j in tb.support})
    ja = range(ta.support[0], ta.support[-1] + 1)

    def conv(fa: Flag, fb: Flag, i: int) -> Subspace:
        vecs = []
        for j in ja:
            for u in fa[j].basis:
                for v in fb[i - j].basis:
                    vecs.append(_kron_vec(u, v, ops))
        return Subspace.span(F, n, vecs)

    C = {i: conv(a.C, b.C, i) for i in sup}
    C[sup[-1] + 1] = Subspace.zero(F, n)
    D = {i: conv(a.D, b.D, i) for i in sup}
    D[sup[0] - 1] = Subspace.zero(F, n)
    z0 = FZip.build(F, n, C, D, {})
    pa, pb = a.phi_map, b.phi_map
    phi = {}
    for i in sup:
        vecs, imgs = [], []
        for j in ta.support:
            k = i - j
            if k not in pb:
                continue
            ca, cb = a.gr_C(j), b.gr_C(k)
            da, db = a.gr_D(j), b.gr_D(k)
            ia = [da.lift(col) for col in pa[j].columns()]
            ib = [db.lift(col) for col in pb[k].columns()]
            for x, cx in enumerate(ca.reps):
                for y, cy in enumerate(cb.reps):
                    vecs.append(_kron_vec(cx, cy, ops))
                    imgs.append(_kron_vec(ia[x], ib[y], ops))
        phi[i] = semilinear_matrix(z0.gr_C(i), z0.gr_D(i), vecs, imgs)
    return FZip.build(F, n, C, D, phi)


# ---------------------------------------------------------------- base change, GL action

def field_embedding(src: FieldParams, dst: FieldParams) -> list[int]:
    """Code map src -> dst: sends t to the smallest root of src's modulus."""
    if src == dst:
        return list(range(src.order))
    if src.p != dst.p or dst.k % src.k or src.q != dst.q:
        raise ValueError(f"{dst} is not a compatible extension of {src}")
    if src.k == 1:
        return [dst.from_int(c) for c in range(src.order)]
    ops = dst.ops

    def ev(poly, a):
        acc = 0
        for c in reversed(poly):
            acc = ops.add(ops.mul(acc, a), dst.from_int(c))
        return acc

    root = next(a for a in range(dst.order) if ev(src.modulus, a) == 0)
    powers = [1]
    for _ in range(src.k - 1):
        powers.append(ops.mul(powers[-1], root))
    out = []
    for c in range(src.order):
        acc = 0
        for ci, pw in zip(src.coeffs(c), powers):
            if ci:
                acc = ops.add(acc, ops.mul(dst.from_int(ci), pw))
        out.append(acc)
    return out


def base_change(z: FZip, target: FieldParams) -> FZip:
    if target == z.field:
        return z
    emb = field_embedding(z.field, target)

    def sub(s: Subspace) -> Subspace:
        return Subspace.span(target, s.n, [[emb[x] for x in v] for v in s.basis])

    C = {j: sub(s) for j, s in z.C.members}
    D = {j: sub(s) for j, s in z.D.members}
    phi = {i: Matrix(target, tuple(tuple(emb[x] for x in r) for r in m.rows), m.ncols) for i, m in z.phi}
    return FZip.build(target, z.n, C, D, phi)


def apply_gl(g: Matrix, z: FZip) -> FZip:
    if g.field != z.field or g.shape != (z.n, z.n):
        raise ValueError("group element does not act on this F-zip")
    if not g.is_invertible():
        raise ValueError("singular matrix cannot act on an F-zip")
    new = FZip(z.field, z.n, z.C.image(g), z.D.image(g), ())
    phi = {}
    for i, A in z.phi:
        src, dst = z.gr_C(i), z.gr_D(i)
        vecs = [g.apply(c) for c in src.reps]
        imgs = [g.apply(dst.lift(col)) for col in A.columns()]
        phi[i] = semilinear_matrix(new.gr_C(i), new.gr_D(i), vecs, imgs)
    return FZip(z.field, z.n, new.C, new.D, tuple(sorted(phi.items())))


# ---------------------------------------------------------------- random data

def random_invertible(field: FieldParams, n: int, rng: random.Random) -> Matrix:
    while True:
        m = Matrix(field, tuple(tuple(rng.randrange(field.order) for _ in range(n)) for _ in range(n)), n)
        if m.is_invertible():
            return m


def coordinate_flags(tau: TypeFunction, field: FieldParams) -> tuple[dict, dict]:
    """C^{i_j} = span(e_1..e_{tau(i_j)+...+tau(i_r)}), D_{i_j} = span(e_1..e_{m_j})."""
    n = tau.height
    sup = tau.support
    vals = [d for _, d in tau.values]
    C, D = {}, {}
    for j, i in enumerate(sup):
        C[i] = Subspace.coordinate(field, n, range(1, sum(vals[j:]) + 1))
        D[i] = Subspace.coordinate(field, n, range(1, sum(vals[: j + 1]) + 1))
    C[sup[-1] + 1] = Subspace.zero(field, n)
    D[sup[0] - 1] = Subspace.zero(field, n)
    return C, D


def random_fzip(tau: TypeFunction, field: FieldParams, seed: int | random.Random) -> FZip:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = tau.height
    C0, D0 = coordinate_flags(tau, field)
    h1 = random_invertible(field, n, rng)
    h2 = random_invertible(field, n, rng)
    C = {i: s.image(h1) for i, s in C0.items()}
    D = {i: s.image(h2) for i, s in D0.items()}
    phi = {i: random_invertible(field, d, rng) for i, d in tau.values}
    return FZip.build(field, n, C, D, phi)
