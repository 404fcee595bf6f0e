import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from fzips import weyl
from fzips.classify import classify, codim
from fzips.forms import (
    SYMMETRIC, SYMPLECTIC, BilinearForm, PolarizedFZip, admissible, classify_polarized, iota, perp,
    polarized_from_group, polarized_subset, random_form_element, random_polarized, standard_form,
    validate_polarized,
)
from fzips.fzip import FZip, TypeFunction, apply_gl
from fzips.gf import make_field
from fzips.linalg import Matrix, Subspace
from fzips.oracle import enumerate_fzips

F2, F3, F4, F5, F9 = make_field(2), make_field(3), make_field(2, 2), make_field(5), make_field(3, 2)


def poly_forms(F, n, tau):
    form = standard_form(F, n, SYMPLECTIC)
    return [p for p in (PolarizedFZip(z, form) for z in enumerate_fzips(TypeFunction.parse(tau), F))
            if validate_polarized(p).ok]


def test_standard_forms():
    for F in (F2, F3, F9):
        for n in (2, 4, 6):
            form = standard_form(F, n, SYMPLECTIC)
            assert form.check() == []
            e = lambda i: tuple(1 if k == i else 0 for k in range(n))
            assert form.pair(e(0), e(n - 1)) == 1
            assert form.pair(e(n - 1), e(0)) == F.from_int(-1)
            assert all(form.pair(e(i), e(i)) == 0 for i in range(n))
    sym = standard_form(F3, 3, SYMMETRIC)
    assert sym.check() == []
    assert BilinearForm.from_json(F3, sym.to_json()) == sym


def test_bad_forms_are_reported():
    not_alt = BilinearForm(Matrix.identity(F3, 2), SYMPLECTIC)
    assert not_alt.check()
    singular = BilinearForm(Matrix.zeros(F3, 2, 2), SYMMETRIC)
    assert singular.check()


@settings(max_examples=25)
@given(st.sampled_from([F2, F3, F9]), st.sampled_from([2, 4]), st.integers(0, 10 ** 6))
def test_perp_properties(F, n, seed):
    rng = random.Random(seed)
    form = standard_form(F, n, SYMPLECTIC)
    vecs = [[rng.randrange(F.order) for _ in range(n)] for _ in range(rng.randrange(n + 1))]
    s = Subspace.span(F, n, vecs)
    p = perp(s, form)
    assert p.dim == n - s.dim
    assert perp(p, form) == s
    t = Subspace.span(F, n, vecs[:1])
    assert t <= s and p <= perp(t, form)


def test_form_elements_preserve_the_form():
    rng = random.Random(1)
    for F, n, kind in [(F2, 4, SYMPLECTIC), (F3, 4, SYMPLECTIC), (F3, 3, SYMMETRIC), (F5, 5, SYMMETRIC)]:
        form = standard_form(F, n, kind)
        for _ in range(5):
            h = random_form_element(form, rng)
            assert h.is_invertible() and form.preserved_by(h)


def test_admissible_and_subsets():
    assert admissible(TypeFunction.parse("1,1"))
    assert admissible(TypeFunction.parse("2,1,2"))
    assert not admissible(TypeFunction.parse("2,1"))
    assert polarized_subset(TypeFunction.parse("1,1")) == weyl.SimpleSubset.empty(weyl.BC, 1)
    assert polarized_subset(TypeFunction.parse("2,2")).indices() == [1]
    assert polarized_subset(TypeFunction.parse("1,2,1")).indices() == [2]
    with pytest.raises(ValueError):
        polarized_subset(TypeFunction.parse("2,1"))
    with pytest.raises(ValueError):
        polarized_subset(TypeFunction.parse("1,1,1"), SYMPLECTIC)
    with pytest.raises(ValueError):
        polarized_subset(TypeFunction.parse("1,1"), SYMMETRIC)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_siegel_coset_counts(g):
    J1 = polarized_subset(TypeFunction.parse(f"{g},{g}"))
    reps = weyl.min_coset_reps(J1)
    assert len(reps) == 2 ** g == weyl.group_order(weyl.BC, g) // weyl.parabolic_order(J1)


@pytest.mark.parametrize("F", [F2, F3, F4])
def test_exhaustive_rank_one(F):
    q = F.order
    items = poly_forms(F, 2, "1,1")
    # any line is Lagrangian in dimension 2; phi_0 determines phi_1
    assert len(items) == (q + 1) ** 2 * (q - 1)
    classes = set()
    for p in items:
        u1 = classify_polarized(p)
        assert iota(u1) == classify(p.zip)[0]
        classes.add(u1)
    assert classes == {weyl.WeylElement(weyl.BC, (1,)), weyl.WeylElement(weyl.BC, (-1,))}


def test_validate_polarized_examples():
    p = random_polarized(TypeFunction.parse("2,2"), F3, SYMPLECTIC, 0)
    rep = validate_polarized(p)
    assert rep.ok and rep.pairing == {0: 1, 1: 0}
    # doubling phi_0 breaks the compatibility square
    z = p.zip
    phi = z.phi_map
    phi[0] = Matrix(F3, tuple(tuple(F3.ops.mul(2, x) for x in r) for r in phi[0].rows), phi[0].ncols)
    broken = PolarizedFZip(FZip(z.field, z.n, z.C, z.D, tuple(sorted(phi.items()))), p.form)
    rep = validate_polarized(broken)
    assert not rep.ok and any("diagram failure" in e for e in rep.errors)


def test_non_isotropic_flag_is_rejected():
    F, n = F3, 4
    full, zero = Subspace.full(F, n), Subspace.zero(F, n)
    # e1 and e4 pair nontrivially, so their span is not Lagrangian
    C = {0: full, 1: Subspace.coordinate(F, n, [1, 4]), 2: zero}
    D = {-1: zero, 0: Subspace.coordinate(F, n, [1, 2]), 1: full}
    z = FZip.build(F, n, C, D, {0: Matrix.identity(F, 2), 1: Matrix.identity(F, 2)})
    rep = validate_polarized(PolarizedFZip(z, standard_form(F, n, SYMPLECTIC)))
    assert not rep.ok and any("not a symplectic flag" in e for e in rep.errors)
    with pytest.raises(ValueError):
        classify_polarized(PolarizedFZip(z, standard_form(F, n, SYMPLECTIC)))


@pytest.mark.parametrize("tau,F,kind", [
    ("2,2", F3, SYMPLECTIC), ("1,2,1", F3, SYMPLECTIC), ("1,1,1,1", F2, SYMPLECTIC),
    ("2,2", F4, SYMPLECTIC), ("1,1,1", F3, SYMMETRIC), ("2,1,2", F5, SYMMETRIC),
])
def test_random_polarized(tau, F, kind):
    tau = TypeFunction.parse(tau)
    J1 = polarized_subset(tau, kind)
    rng = random.Random(5)
    for seed in range(8):
        p = random_polarized(tau, F, kind, seed)
        assert validate_polarized(p).ok
        u1 = classify_polarized(p)
        assert iota(u1, kind) == classify(p.zip)[0]
        assert 0 <= codim(u1, J1) <= weyl.dim_par(J1)
        h = random_form_element(p.form, rng)
        moved = PolarizedFZip(apply_gl(h, p.zip), p.form)
        assert validate_polarized(moved).ok
        assert classify_polarized(moved) == u1


def signed_permutation(form, r):
    """A form-preserving matrix sending each e_k to +-e_{r(k)}."""
    F, n = form.field, form.n
    for signs in itertools.product((1, F.from_int(-1)), repeat=n):
        cols = [tuple(signs[k] if i == r(k + 1) - 1 else 0 for i in range(n)) for k in range(n)]
        m = Matrix.from_columns(F, cols, n)
        if form.preserved_by(m):
            return m
    raise AssertionError(f"no signed lift of {r}")


@pytest.mark.parametrize("g", [2, 3])
def test_all_classes_realized(g):
    tau = TypeFunction.parse(f"{g},{g}")
    form = standard_form(F3, 2 * g, SYMPLECTIC)
    J1 = polarized_subset(tau)
    got = set()
    for w in weyl.all_elements(weyl.BC, g):
        p = polarized_from_group(tau, form, Matrix.identity(F3, 2 * g), signed_permutation(form, iota(w)))
        assert validate_polarized(p).ok
        got.add(classify_polarized(p))
    assert got == set(weyl.min_coset_reps(J1))


def test_polarized_json_round_trip():
    p = random_polarized(TypeFunction.parse("1,2,1"), F9, SYMPLECTIC, 3)
    assert PolarizedFZip.from_json(p.to_json()) == p
