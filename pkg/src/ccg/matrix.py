"""3x3 matrices over GF(p), canonical subspaces and generated-subring keys.

Two layers live here.  ``Mat3`` and friends are exact, immutable, pure-Python
values used wherever clarity matters.  The ``*_batch`` helpers operate on
stacks of matrices held in numpy arrays and exist for the exhaustive sweeps
over all of M_3(GF(p)); they produce exactly the same canonical forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from ccg.field import Poly, inv_mod

Vector = tuple[int, ...]


def rref(rows: Iterable[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form over GF(p).

    Returns the nonzero rows (leading entries equal to 1) and the pivot
    column of each.
    """
    m = [[x % p for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        k = next((i for i in range(r, len(m)) if m[i][c]), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        inv = inv_mod(m[r][c], p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {x : rows . x = 0}, one vector per free column, in RREF."""
    red, pivots = rref(rows, p) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f] % p
        basis.append(v)
    return rref(basis, p)[0] if basis else []


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(p)^n stored as its canonical RREF basis."""

    basis: tuple[Vector, ...]
    p: int
    n: int = 3

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], p: int, n: int = 3) -> "Subspace":
        vs = [list(v) for v in vectors]
        red = rref(vs, p)[0] if vs else []
        return cls(tuple(tuple(r) for r in red), p, n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return Subspace.span(list(self.basis) + [list(v)], self.p, self.n).dim == self.dim

    def annihilator(self) -> "Subspace":
        """Functionals vanishing on the subspace (the dual coordinates)."""
        return Subspace(tuple(tuple(v) for v in nullspace(self.basis, self.n, self.p)), self.p, self.n)


class Mat3:
    """Immutable 3x3 matrix over GF(p); entries are stored row-major."""

    __slots__ = ("entries", "p")

    def __init__(self, entries: Iterable[int], p: int) -> None:
        e = tuple(int(x) % p for x in entries)
        if len(e) != 9:
            raise ValueError("a 3x3 matrix needs 9 entries")
        self.entries: Vector = e
        self.p = p

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> "Mat3":
        return cls([x for r in rows for x in r], p)

    @classmethod
    def identity(cls, p: int) -> "Mat3":
        return cls((1, 0, 0, 0, 1, 0, 0, 0, 1), p)

    @classmethod
    def scalar(cls, c: int, p: int) -> "Mat3":
        return cls((c, 0, 0, 0, c, 0, 0, 0, c), p)

    @classmethod
    def zero(cls, p: int) -> "Mat3":
        return cls((0,) * 9, p)

    @classmethod
    def unit(cls, i: int, j: int, p: int) -> "Mat3":
        """Matrix unit E_ij with 1-based indices."""
        e = [0] * 9
        e[3 * (i - 1) + (j - 1)] = 1
        return cls(e, p)

    @classmethod
    def diag(cls, a: int, b: int, c: int, p: int) -> "Mat3":
        return cls((a, 0, 0, 0, b, 0, 0, 0, c), p)

    @classmethod
    def companion(cls, q: Poly) -> "Mat3":
        """Companion matrix of a monic cubic (last column holds -coefficients)."""
        if q.degree != 3 or q.leading != 1:
            raise ValueError("companion matrix needs a monic cubic")
        c0, c1, c2 = q.coeffs[:3]
        return cls((0, 0, -c0, 1, 0, -c1, 0, 1, -c2), q.p)

    @classmethod
    def from_code(cls, code: int, p: int) -> "Mat3":
        """Inverse of :meth:`code`."""
        digits = []
        for _ in range(9):
            code, d = divmod(code, p)
            digits.append(d)
        return cls(reversed(digits), p)

    def code(self) -> int:
        """Base-p integer with the (1,1) entry as most significant digit."""
        c = 0
        for x in self.entries:
            c = c * self.p + x
        return c

    def rows(self) -> tuple[Vector, Vector, Vector]:
        e = self.entries
        return e[0:3], e[3:6], e[6:9]

    def columns(self) -> tuple[Vector, Vector, Vector]:
        e = self.entries
        return e[0::3], e[1::3], e[2::3]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[3 * i + j]

    def _check(self, other: "Mat3") -> None:
        assert other.p == self.p, f"mixed moduli {self.p} and {other.p}"

    def __add__(self, other: "Mat3") -> "Mat3":
        self._check(other)
        return Mat3((a + b for a, b in zip(self.entries, other.entries)), self.p)

    def __sub__(self, other: "Mat3") -> "Mat3":
        self._check(other)
        return Mat3((a - b for a, b in zip(self.entries, other.entries)), self.p)

    def __neg__(self) -> "Mat3":
        return Mat3((-a for a in self.entries), self.p)

    def __mul__(self, c: int) -> "Mat3":
        return Mat3((int(c) * a for a in self.entries), self.p)

    __rmul__ = __mul__

    def __matmul__(self, other: "Mat3") -> "Mat3":
        self._check(other)
        a, b = self.entries, other.entries
        return Mat3(
            (
                a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j]
                for i in range(3)
                for j in range(3)
            ),
            self.p,
        )

    def __pow__(self, k: int) -> "Mat3":
        out = Mat3.identity(self.p)
        for _ in range(k):
            out = out @ self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat3):
            return NotImplemented
        return self.p == other.p and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.entries, self.p))

    def __repr__(self) -> str:
        return f"Mat3({[list(r) for r in self.rows()]}, p={self.p})"

    def commutes(self, other: "Mat3") -> bool:
        return self @ other == other @ self

    def trace(self) -> int:
        e = self.entries
        return (e[0] + e[4] + e[8]) % self.p

    def det(self) -> int:
        a, b, c, d, e, f, g, h, i = self.entries
        return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % self.p

    def rank(self) -> int:
        return len(rref(self.rows(), self.p)[0])

    def is_invertible(self) -> bool:
        return self.det() != 0

    def is_scalar(self) -> bool:
        e = self.entries
        return e[0] == e[4] == e[8] and not any(e[k] for k in (1, 2, 3, 5, 6, 7))

    def apply(self, v: Sequence[int]) -> Vector:
        return tuple(sum(x * y for x, y in zip(r, v)) % self.p for r in self.rows())


def poly_eval(q: Poly, A: Mat3) -> Mat3:
    """q(A), with the constant term multiplied by the identity."""
    out = Mat3.zero(A.p)
    for c in reversed(q.coeffs):
        out = out @ A + Mat3.scalar(c, A.p)
    return out


def char_poly(A: Mat3) -> Poly:
    """det(xI - A) as a monic cubic."""
    a, b, c, d, e, f, g, h, i = A.entries
    minors = (e * i - f * h) + (a * i - c * g) + (a * e - b * d)
    return Poly([-A.det(), minors, -A.trace(), 1], A.p)


def min_poly(A: Mat3) -> Poly:
    """Monic polynomial of least degree annihilating ``A``.

    Looks for the first linear dependence among vec(I), vec(A), vec(A^2),
    vec(A^3): the null space of the 9 x (k+1) matrix with those columns.
    """
    powers = [Mat3.identity(A.p)]
    for k in range(1, 4):
        powers.append(powers[-1] @ A)
        cols = [m.entries for m in powers]
        system = [[col[r] for col in cols] for r in range(9)]
        null = nullspace(system, k + 1, A.p)
        if null:
            # earlier powers are independent, so the null space is a line
            (v,) = null
            return Poly(v, A.p).monic()
    raise AssertionError("Cayley-Hamilton guarantees a relation of degree <= 3")


def image_kernel(A: Mat3) -> tuple[Subspace, Subspace]:
    image = Subspace.span(A.columns(), A.p)
    kernel = Subspace(tuple(tuple(v) for v in nullspace(A.rows(), 3, A.p)), A.p)
    return image, kernel


@dataclass(frozen=True)
class SubringKey:
    """Canonical identity of the unital subring generated by one matrix.

    ``basis`` is the RREF of span{vec(I), vec(A), vec(A^2)} in GF(p)^9.
    """

    basis: tuple[Vector, ...]
    p: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.p**self.dim

    def elements(self) -> Iterator[Mat3]:
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            v = [0] * 9
            for c, b in zip(coeffs, self.basis):
                if c:
                    v = [x + c * y for x, y in zip(v, b)]
            yield Mat3(v, self.p)

    def contains(self, A: Mat3) -> bool:
        return len(rref(list(self.basis) + [A.entries], self.p)[0]) == self.dim

    def to_bytes(self) -> bytes:
        rows = list(self.basis) + [(0,) * 9] * (3 - self.dim)
        return bytes(x for r in rows for x in r)

    @classmethod
    def from_bytes(cls, raw: bytes, p: int) -> "SubringKey":
        rows = [tuple(raw[9 * k : 9 * k + 9]) for k in range(3)]
        return cls(tuple(r for r in rows if any(r)), p)

    def __str__(self) -> str:
        return "|".join("".join(f"{x:x}" if self.p <= 16 else f"{x}," for x in r) for r in self.basis)


def subring_key(A: Mat3) -> SubringKey:
    A2 = A @ A
    red, _ = rref([Mat3.identity(A.p).entries, A.entries, A2.entries], A.p)
    return SubringKey(tuple(tuple(r) for r in red), A.p)


# ---------------------------------------------------------------------------
# batched kernels (numpy); matrices are arrays of shape (N, 3, 3)
# ---------------------------------------------------------------------------


def inverse_table(p: int) -> np.ndarray:
    t = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        t[a] = pow(a, p - 2, p)
    return t


def codes_to_matrices(codes: np.ndarray, p: int) -> np.ndarray:
    """Decode base-p matrix codes (see :meth:`Mat3.code`) into (N, 3, 3)."""
    codes = np.asarray(codes, dtype=np.int64)
    out = np.empty((codes.size, 9), dtype=np.int64)
    rest = codes.copy()
    for k in range(8, -1, -1):
        out[:, k] = rest % p
        rest //= p
    return out.reshape(-1, 3, 3)


def matrices_to_codes(mats: np.ndarray, p: int) -> np.ndarray:
    flat = np.asarray(mats, dtype=np.int64).reshape(-1, 9)
    codes = np.zeros(flat.shape[0], dtype=np.int64)
    for k in range(9):
        codes = codes * p + flat[:, k]
    return codes


def rref_batch(M: np.ndarray, p: int) -> np.ndarray:
    """Row-reduce every matrix in a stack of shape (N, r, c) over GF(p).

    Nonzero rows come first, in the same canonical form as :func:`rref`;
    the remaining rows are zero.
    """
    M = np.asarray(M, dtype=np.int64) % p
    M = M.copy()
    n, r, c = M.shape
    inv = inverse_table(p)
    piv = np.zeros(n, dtype=np.int64)
    ridx = np.arange(r)
    for col in range(c):
        cand = (M[:, :, col] != 0) & (ridx[None, :] >= piv[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        sel = np.nonzero(has)[0]
        a = piv[sel]
        b = np.argmax(cand[sel], axis=1)
        row_a = M[sel, a].copy()
        M[sel, a] = M[sel, b]
        M[sel, b] = row_a
        pivot_rows = M[sel, a] * inv[M[sel, a, col]][:, None] % p
        M[sel, a] = pivot_rows
        factors = M[sel, :, col].copy()
        factors[np.arange(sel.size), a] = 0
        M[sel] = (M[sel] - factors[:, :, None] * pivot_rows[:, None, :]) % p
        piv[sel] += 1
    return M


def subring_keys_batch(mats: np.ndarray, p: int) -> np.ndarray:
    """Canonical subring bases for a stack of 3x3 matrices, shape (N, 3, 9)."""
    mats = np.asarray(mats, dtype=np.int64)
    n = mats.shape[0]
    sq = np.matmul(mats, mats) % p
    gen = np.empty((n, 3, 9), dtype=np.int64)
    gen[:, 0] = np.eye(3, dtype=np.int64).reshape(9)
    gen[:, 1] = mats.reshape(n, 9)
    gen[:, 2] = sq.reshape(n, 9)
    return rref_batch(gen, p)
