import itertools

import pytest
from hypothesis import given, strategies as st

from ccg.field import FieldElement, Poly, fp_inv, is_prime, poly_is_irreducible, poly_roots, require_prime


def F(v, p):
    return FieldElement(v, p)


@pytest.mark.parametrize("p,a,inv", [(3, 2, 2), (2, 1, 1), (5, 3, 2)])
def test_fp_inv_examples(p, a, inv):
    assert fp_inv(F(a, p)) == F(inv, p)


def test_fp_inv_zero():
    with pytest.raises(ZeroDivisionError, match="no inverse"):
        fp_inv(F(0, 5))


@given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.data())
def test_inverse_is_involution(p, data):
    a = F(data.draw(st.integers(1, p - 1)), p)
    assert fp_inv(fp_inv(a)) == a
    assert a * fp_inv(a) == F(1, p)


def test_mixed_moduli_rejected():
    with pytest.raises(AssertionError):
        F(1, 2) + F(1, 3)


def test_require_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(ValueError):
        require_prime(9)


def test_poly_roots_examples():
    assert {int(r) for r in poly_roots(Poly([0, 1, 1], 2))} == {0, 1}
    assert poly_roots(Poly([1, 0, 1], 3)) == frozenset()
    assert poly_roots(Poly([1, 1, 0, 1], 2)) == frozenset()


def test_poly_roots_zero_polynomial():
    with pytest.raises(ValueError):
        poly_roots(Poly([0], 3))


def test_irreducible_examples():
    assert poly_is_irreducible(Poly([1, 1, 0, 1], 2))
    assert poly_is_irreducible(Poly([1, 1, 1], 2))
    assert not poly_is_irreducible(Poly([1, 2, 1], 3))


@pytest.mark.parametrize("coeffs", [[1], [1, 0, 0, 0, 1]])
def test_irreducible_degree_limits(coeffs):
    with pytest.raises(ValueError):
        poly_is_irreducible(Poly(coeffs, 2))


def _monic(p, deg):
    for low in itertools.product(range(p), repeat=deg):
        yield Poly(list(low) + [1], p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cubic_irreducibility_by_trial_division(p):
    divisors = list(_monic(p, 1)) + list(_monic(p, 2))
    for q in _monic(p, 3):
        reducible = any((q % d).is_zero() for d in divisors)
        assert poly_is_irreducible(q) == (not reducible), q


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 50), min_size=2, max_size=6))
def test_root_count_bounded_by_degree(p, coeffs):
    q = Poly(coeffs, p)
    if q.degree < 1:
        return
    assert len(poly_roots(q)) <= q.degree


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 50), max_size=5), st.lists(st.integers(0, 50), min_size=1, max_size=4))
def test_divmod_reconstructs(p, a, b):
    A, B = Poly(a, p), Poly(b, p)
    if B.is_zero():
        return
    q, r = divmod(A, B)
    assert q * B + r == A
    assert r.is_zero() or r.degree < B.degree
