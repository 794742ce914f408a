import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ccg.field import Poly
from ccg.matrix import (
    Mat3,
    Subspace,
    SubringKey,
    char_poly,
    codes_to_matrices,
    image_kernel,
    matrices_to_codes,
    min_poly,
    poly_eval,
    subring_key,
    subring_keys_batch,
)

PRIMES = st.sampled_from([2, 3, 5, 7])


@st.composite
def mats(draw, p=None):
    p = p or draw(PRIMES)
    return Mat3([draw(st.integers(0, p - 1)) for _ in range(9)], p)


def jordan_nilpotent(p):
    return Mat3.unit(1, 2, p) + Mat3.unit(2, 3, p)


def e(i, p=2):
    v = [0, 0, 0]
    v[i - 1] = 1
    return v


def test_char_poly_examples():
    assert char_poly(Mat3.identity(2)) == Poly([1, 1, 1, 1], 2)
    assert char_poly(Mat3.diag(0, 1, 2, 3)) == Poly.from_roots([0, 1, 2], 3)
    q = Poly([1, 1, 0, 1], 2)
    assert char_poly(Mat3.companion(q)) == q


def test_min_poly_examples():
    assert min_poly(Mat3.scalar(2, 3)) == Poly([-2, 1], 3)
    assert min_poly(Mat3.unit(1, 2, 2)) == Poly([0, 0, 1], 2)
    assert min_poly(Mat3.diag(0, 1, 1, 2)) == Poly([0, 1, 1], 2)


def test_image_kernel_examples():
    im, ker = image_kernel(Mat3.unit(1, 1, 2))
    assert im == Subspace.span([e(1)], 2)
    assert ker == Subspace.span([e(2), e(3)], 2)
    im, ker = image_kernel(Mat3.unit(1, 2, 2))
    assert im == Subspace.span([e(1)], 2)
    assert ker == Subspace.span([e(1), e(3)], 2)
    im, ker = image_kernel(Mat3.identity(3))
    assert im.dim == 3 and ker.dim == 0


def test_subring_key_examples():
    k = subring_key(Mat3.identity(2))
    assert k.dim == 1 and k.basis == ((1, 0, 0, 0, 1, 0, 0, 0, 1),)
    N = jordan_nilpotent(2)
    k = subring_key(N)
    assert k.dim == 3 and k.size == 8
    assert all(k.contains(M) for M in (Mat3.identity(2), N, N @ N))
    assert subring_key(Mat3.diag(0, 1, 1, 3)).dim == 2


def test_cayley_hamilton_exhaustive_p2():
    for code in range(2**9):
        A = Mat3.from_code(code, 2)
        assert poly_eval(char_poly(A), A) == Mat3.zero(2)
        m = min_poly(A)
        assert poly_eval(m, A) == Mat3.zero(2)
        assert (char_poly(A) % m).is_zero()


@given(mats())
def test_cayley_hamilton_random(A):
    assert poly_eval(char_poly(A), A) == Mat3.zero(A.p)
    assert (char_poly(A) % min_poly(A)).is_zero()


@given(mats(), st.data())
def test_generators_share_key(A, data):
    p = A.p
    c = [data.draw(st.integers(0, p - 1)) for _ in range(3)]
    B = poly_eval(Poly(c, p), A)
    if min_poly(B).degree == min_poly(A).degree:
        assert subring_key(B) == subring_key(A)


@given(mats(), mats())
def test_equal_keys_commute(A, B):
    if A.p == B.p and subring_key(A) == subring_key(B):
        assert A.commutes(B)


@given(mats())
def test_key_byte_roundtrip(A):
    k = subring_key(A)
    raw = k.to_bytes()
    assert len(raw) == 27
    assert SubringKey.from_bytes(raw, A.p) == k


@pytest.mark.parametrize("p", [2, 3, 5])
def test_code_order(p):
    assert Mat3.from_code(1, p) == Mat3.unit(3, 3, p)
    assert Mat3.from_code(p**8, p) == Mat3.unit(1, 1, p)
    codes = np.arange(0, p**9, max(1, p**9 // 997))
    assert np.array_equal(matrices_to_codes(codes_to_matrices(codes, p), p), codes)
    assert all(Mat3.from_code(int(c), p).code() == c for c in codes[:50])


@settings(max_examples=30)
@given(PRIMES, st.data())
def test_batch_keys_match_scalar(p, data):
    codes = data.draw(st.lists(st.integers(0, p**9 - 1), min_size=1, max_size=20))
    batch = subring_keys_batch(codes_to_matrices(np.array(codes), p), p)
    for c, row in zip(codes, batch):
        key = subring_key(Mat3.from_code(c, p))
        assert SubringKey.from_bytes(bytes(row.astype(np.uint8).reshape(-1)), p) == key


def test_det_and_rank():
    A = Mat3.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]], 5)
    assert A.det() == (-3) % 5
    assert A.rank() == 3
    assert Mat3.unit(1, 2, 3).rank() == 1
