import pytest
from hypothesis import given, strategies as st

from fzips.gf import enumerate_field, field_arith, frobenius_q, make_field

from oracles import is_irreducible_brute, poly_mulmod

SMALL = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (7, 1), (2, 4), (5, 2)]


def test_prime_fields_and_canonical_moduli():
    assert make_field(2).modulus == (0, 1)
    assert make_field(2, 2).modulus == (1, 1, 1)  # t^2 + t + 1
    assert make_field(2, 3).modulus == (1, 0, 1, 1)  # t^3 + t^2 + 1
    assert make_field(3, 2).modulus == (1, 0, 1)  # t^2 + 1
    assert [a.value for a in enumerate_field(make_field(2))] == [0, 1]
    assert [a.value for a in enumerate_field(make_field(3))] == [0, 1, 2]


@pytest.mark.parametrize("p,k", SMALL)
def test_modulus_is_smallest_irreducible(p, k):
    F = make_field(p, k)
    assert is_irreducible_brute(list(F.modulus), p)
    # nothing lexicographically smaller (constant term first) is irreducible
    for f in sorted(_monic(p, k), key=lambda f: f[:k]):
        if tuple(f) == F.modulus:
            break
        assert not is_irreducible_brute(f, p)


def _monic(p, k):
    import itertools
    return [list(c) + [1] for c in itertools.product(range(p), repeat=k)]


def test_spec_small_products():
    F3 = make_field(3)
    assert (F3.element(2) * F3.element(2)).value == 1
    F4 = make_field(2, 2)
    t = F4.element([0, 1])
    assert t * (t + 1) == F4.element(1)
    assert frobenius_q(t) == t + 1
    assert frobenius_q(F4.element(1)) == F4.element(1)


@pytest.mark.parametrize("p,k", SMALL)
def test_multiplication_matches_naive_polynomials(p, k):
    F = make_field(p, k)
    for a in enumerate_field(F):
        for b in enumerate_field(F):
            want = poly_mulmod(list(a.coeffs), list(b.coeffs), list(F.modulus), p)
            assert (a * b).coeffs == tuple(want)


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 6), (2, 9), (3, 4), (23, 2)])
def test_exhaustive_fermat_and_inverses(p, k):
    F = make_field(p, k)
    for a in enumerate_field(F):
        assert a ** F.order == a
        if a:
            assert a * a.inverse() == F.element(1)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (2, 4), (2, 6), (5, 2), (7, 2)])
def test_frobenius_is_a_field_automorphism(p, k):
    F = make_field(p, k)
    els = enumerate_field(F)
    for a in els:
        for b in els:
            assert frobenius_q(a + b) == frobenius_q(a) + frobenius_q(b)
            assert frobenius_q(a * b) == frobenius_q(a) * frobenius_q(b)
    # sigma has order k and fixes exactly the prime field
    for a in els:
        x = a
        for _ in range(k):
            x = frobenius_q(x)
        assert x == a
    assert sum(1 for a in els if frobenius_q(a) == a) == p


def test_frobenius_over_intermediate_field():
    F = make_field(2, 4, 2)  # GF(16) over GF(4)
    fixed = [a for a in enumerate_field(F) if frobenius_q(a) == a]
    assert len(fixed) == 4
    assert all(frobenius_q(frobenius_q(a)) == a for a in enumerate_field(F))


def test_gf8_frobenius_cubed_is_identity():
    F = make_field(2, 3)
    for a in enumerate_field(F):
        assert frobenius_q(a) == a * a
        assert frobenius_q(frobenius_q(frobenius_q(a))) == a


@given(st.sampled_from(SMALL), st.data())
def test_field_axioms(pk, data):
    F = make_field(*pk)
    els = enumerate_field(F)
    a, b, c = (els[data.draw(st.integers(0, F.order - 1))] for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.element(0)
    assert a + (-a) == F.element(0)
    if b:
        assert (a / b) * b == a
    assert field_arith(a, b, "add") == a + b
    assert field_arith(a, 3, "pow") == a * a * a


def test_errors_and_determinism():
    with pytest.raises(ValueError):
        make_field(4)
    with pytest.raises(ValueError):
        make_field(2, 3, 2)
    with pytest.raises(ValueError):
        make_field(2, 0)
    F = make_field(3, 2)
    with pytest.raises(ZeroDivisionError):
        F.element(1) / F.element(0)
    with pytest.raises(ValueError):
        make_field(2).element(1) + make_field(3).element(1)
    with pytest.raises(ValueError):
        field_arith(F.element(1), F.element(1), "mod")
    assert make_field(5, 3).modulus == make_field(5, 3).modulus


def test_json_round_trip():
    from fzips.gf import FieldParams
    F = make_field(3, 2)
    assert FieldParams.from_json(F.to_json()) == F
    assert F.to_json() == {"p": 3, "k": 2, "e": 1, "modulus": [1, 0, 1]}
    with pytest.raises(ValueError):
        FieldParams.from_json({"p": 3, "k": 2, "e": 1, "modulus": [2, 0, 1]})


def test_large_field_without_tables():
    F = make_field(2, 11)  # order 2048, beyond the table limit
    t = F.element([0, 1])
    assert t ** F.order == t
    assert t * t.inverse() == F.element(1)
    assert frobenius_q(t) == t * t
