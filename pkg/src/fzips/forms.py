"""Symplectic and orthogonal F-zips.

A polarized F-zip carries a perfect pairing psi for which both flags are
self-perpendicular and psi(phi_i x, phi_j y) = sigma(psi(x, y)) on paired
graded pieces.  Classes are read off from the GL invariant through the
embedding of signed permutations into permutations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .classify import classify, _lift_through
from .fzip import FZip, TypeFunction, semilinear_matrix, validate
from .gf import FieldParams
from .linalg import GradedPiece, Matrix, Subspace, _dot, _frob_vec, _nullspace_rows
from . import weyl
from .weyl import SimpleSubset, WeylElement

__all__ = [
    "BilinearForm",
    "PolarizedFZip",
    "PolarizedReport",
    "perp",
    "validate_polarized",
    "admissible",
    "iota",
    "polarized_subset",
    "classify_polarized",
    "standard_form",
    "random_form_element",
    "random_polarized",
]

SYMPLECTIC = "symplectic"
SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class BilinearForm:
    gram: Matrix
    kind: str

    @property
    def field(self) -> FieldParams:
        return self.gram.field

    @property
    def n(self) -> int:
        return self.gram.nrows

    def pair(self, u, v) -> int:
        ops = self.field.ops
        return _dot(u, self.gram.apply(v), ops)

    def check(self) -> list[str]:
        g = self.gram
        F = self.field
        errs = []
        if g.nrows != g.ncols or not g.is_invertible():
            return ["Gram matrix is not invertible"]
        n = g.nrows
        ops = F.ops
        if self.kind == SYMPLECTIC:
            if n % 2:
                errs.append("symplectic form on an odd-dimensional space")
            for i in range(n):
                if g.rows[i][i]:
                    errs.append("symplectic Gram matrix has a nonzero diagonal entry")
                    break
            if any(g.rows[i][j] != ops.neg(g.rows[j][i]) for i in range(n) for j in range(n)):
                errs.append("symplectic Gram matrix is not antisymmetric")
        elif self.kind == SYMMETRIC:
            if F.p == 2:
                errs.append("orthogonal F-zips need odd characteristic")
            if n % 2 == 0:
                errs.append("even orthogonal groups are not supported")
            if any(g.rows[i][j] != g.rows[j][i] for i in range(n) for j in range(n)):
                errs.append("symmetric Gram matrix is not symmetric")
        else:
            errs.append(f"unknown form kind {self.kind!r}")
        return errs

    def preserved_by(self, h: Matrix) -> bool:
        return h.transpose() @ self.gram @ h == self.gram

    def to_json(self) -> dict:
        return {"kind": self.kind, "gram": self.gram.to_json()}

    @staticmethod
    def from_json(field: FieldParams, obj: dict) -> "BilinearForm":
        return BilinearForm(Matrix.from_json(field, obj["gram"]), obj["kind"])


def standard_form(field: FieldParams, n: int, kind: str) -> BilinearForm:
    """Antidiagonal Gram matrix: e_i pairs with e_{n+1-i}; signs for symplectic."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        j = n - 1 - i
        if kind == SYMPLECTIC:
            rows[i][j] = 1 if i < n // 2 else field.from_int(-1)
        else:
            rows[i][j] = 1
    return BilinearForm(Matrix(field, tuple(tuple(r) for r in rows), n), kind)


def perp(s: Subspace, form: BilinearForm) -> Subspace:
    """{m : psi(v, m) = 0 for all v in s}."""
    if s.n != form.n or s.field != form.field:
        raise ValueError("subspace and form live in different spaces")
    gt = form.gram.transpose()
    rows = [gt.apply(v) for v in s.basis]  # row v^T G
    return Subspace.span(s.field, s.n, _nullspace_rows(rows, s.n, s.field.ops))


@dataclass(frozen=True)
class PolarizedFZip:
    zip: FZip
    form: BilinearForm

    def to_json(self) -> dict:
        out = self.zip.to_json()
        out["form"] = self.form.to_json()
        return out

    @staticmethod
    def from_json(obj: dict) -> "PolarizedFZip":
        z = FZip.from_json(obj)
        return PolarizedFZip(z, BilinearForm.from_json(z.field, obj["form"]))


@dataclass
class PolarizedReport:
    ok: bool
    errors: list[str] = dc_field(default_factory=list)
    pairing: dict[int, int] = dc_field(default_factory=dict)


def _gram_between(form: BilinearForm, left, right) -> Matrix:
    return Matrix(form.field, tuple(tuple(form.pair(a, b) for b in right) for a in left), len(right))


def validate_polarized(z: PolarizedFZip) -> PolarizedReport:
    base = validate(z.zip)
    if not base.ok:
        return PolarizedReport(False, ["underlying F-zip: " + e for e in base.errors])
    errs = z.form.check()
    if z.form.n != z.zip.n or z.form.field != z.zip.field:
        errs.append("form does not live on the F-zip's space")
    if errs:
        return PolarizedReport(False, errs)
    zz, form = z.zip, z.form
    sup = base.tau.support
    pairing: dict[int, int] = {}
    lo, hi = sup[0] - 1, sup[-1] + 1
    for i in sup:
        pc, pc1 = perp(zz.C[i], form), perp(zz.C[i + 1], form)
        js = [j for j in range(lo, hi + 1) if zz.C[j + 1] == pc and zz.C[j] == pc1]
        if not js:
            errs.append(f"C is not a {form.kind} flag: no index pairs with i={i}")
            continue
        j = next((j for j in js if j in sup), js[0])
        if perp(zz.D[i - 1], form) != zz.D[j] or perp(zz.D[i], form) != zz.D[j - 1]:
            errs.append(f"D is not a {form.kind} flag at the index pair ({i},{j})")
            continue
        pairing[i] = j
    if errs:
        return PolarizedReport(False, errs, pairing)
    phi = zz.phi_map
    for i, j in pairing.items():
        ci, cj = zz.gr_C(i), zz.gr_C(j)
        di, dj = zz.gr_D(i), zz.gr_D(j)
        psi_c = _gram_between(form, ci.reps, cj.reps)
        psi_d = _gram_between(form, di.reps, dj.reps)
        lhs = phi[i].transpose() @ psi_d @ phi[j]
        if lhs != psi_c.frobenius():
            errs.append(f"diagram failure at ({i},{j})")
    return PolarizedReport(not errs, errs, pairing)


def admissible(tau: TypeFunction) -> bool:
    vals = [d for _, d in tau.values]
    return vals == vals[::-1]


def _target(kind: str) -> str:
    return "Sp" if kind == SYMPLECTIC else "SO"


def iota(u1: WeylElement, kind: str = SYMPLECTIC) -> WeylElement:
    return weyl.iota_embed(u1, _target(kind))


def polarized_subset(tau: TypeFunction, kind: str = SYMPLECTIC) -> SimpleSubset:
    """Parabolic type in the classical Weyl group: s_i is excluded iff a flag member has dim i."""
    if not admissible(tau):
        raise ValueError(f"{tau} is not admissible")
    n = tau.height
    if kind == SYMPLECTIC and n % 2:
        raise ValueError("symplectic type of odd height")
    if kind == SYMMETRIC and n % 2 == 0:
        raise ValueError("even orthogonal groups are not supported")
    m = n // 2
    dims, acc = set(), 0
    for d in tau.composition():
        acc += d
        dims.add(acc)
    return SimpleSubset(weyl.BC, m, frozenset(i for i in range(1, m + 1) if i not in dims))


def classify_polarized(z: PolarizedFZip) -> WeylElement:
    rep = validate_polarized(z)
    if not rep.ok:
        raise ValueError("invalid polarized F-zip: " + "; ".join(rep.errors))
    tau = z.zip.tau
    J1 = polarized_subset(tau, z.form.kind)
    u2, _ = classify(z.zip)
    for u1 in weyl.min_coset_reps(J1):
        if iota(u1, z.form.kind) == u2:
            return u1
    raise ValueError(f"no element of the classical coset set maps to {u2}")


# ---------------------------------------------------------------- random data

def random_form_element(form: BilinearForm, rng: random.Random, steps: int | None = None) -> Matrix:
    """Product of random transvections (symplectic) or reflections (orthogonal)."""
    F, n = form.field, form.n
    ops = F.ops
    g = Matrix.identity(F, n)
    steps = steps or 3 * n
    done = 0
    while done < steps:
        w = tuple(rng.randrange(F.order) for _ in range(n))
        if not any(w):
            continue
        row = form.gram.transpose().apply(w)  # v -> psi(w, v) = row . v
        if form.kind == SYMPLECTIC:
            lam = rng.randrange(1, F.order)
        else:
            ww = form.pair(w, w)
            if not ww:
                continue
            lam = ops.neg(ops.mul(F.from_int(2), ops.inv(ww)))
        t = Matrix(F, tuple(tuple(ops.add(1 if a == b else 0, ops.mul(lam, ops.mul(w[a], row[b])))
                                  for b in range(n)) for a in range(n)), n)
        g = t @ g
        done += 1
    return g


def random_polarized(tau: TypeFunction, field: FieldParams, kind: str, seed) -> PolarizedFZip:
    """Polarized F-zip built from two random form-preserving matrices.

    C is the image of the coordinate flag under h; the coordinate splitting of
    sigma(C) is moved by g to produce D and the maps phi.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    form = standard_form(field, tau.height, kind)
    polarized_subset(tau, kind)
    h = random_form_element(form, rng)
    g = random_form_element(form, rng)
    return polarized_from_group(tau, form, h, g)


def polarized_from_group(tau: TypeFunction, form: BilinearForm, h: Matrix, g: Matrix) -> PolarizedFZip:
    F, n = form.field, form.n
    vals = [d for _, d in tau.values]
    sup = tau.support
    hs = h.frobenius()
    C, D, A = {}, {}, {}
    for j, i in enumerate(sup):
        top = sum(vals[j:])
        C[i] = Subspace.coordinate(F, n, range(1, top + 1)).image(h)
        A[i] = Subspace.coordinate(F, n, range(top - vals[j] + 1, top + 1)).image(hs)
    C[sup[-1] + 1] = Subspace.zero(F, n)
    acc = Subspace.zero(F, n)
    D[sup[0] - 1] = acc
    for i in sup:
        acc = acc + A[i].image(g)
        D[i] = acc
    z0 = FZip.build(F, n, C, D, {})
    phi = {}
    for i in sup:
        gc = z0.gr_C(i)
        piece = GradedPiece(C[i].frobenius(), C[i + 1].frobenius())
        comps = _lift_through(piece, A[i], [_frob_vec(F, c) for c in gc.reps])
        phi[i] = semilinear_matrix(gc, z0.gr_D(i), gc.reps, [g.apply(a) for a in comps])
    return PolarizedFZip(FZip.build(F, n, C, D, phi), form)
