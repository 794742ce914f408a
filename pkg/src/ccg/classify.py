"""Matrix types (A)-(H), generator counts, orbit data and the count tables.

Every 3x3 matrix over GF(p) falls into one of eight types according to how
its characteristic and minimal polynomials split.  All matrices generating
the same unital subring share a type, so the type is also a property of a
vertex of the compressed commuting graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ccg.field import require_prime, root_multiplicities
from ccg.matrix import Mat3, SubringKey, char_poly, min_poly, nullspace, subring_key

TYPES = ("A", "B", "C", "D", "E", "F", "G", "H")
TYPE_INDEX = {t: k for k, t in enumerate(TYPES)}


def classify_type(A: Mat3) -> str:
    d = min_poly(A).degree
    roots = root_multiplicities(char_poly(A))
    e = len(roots)
    if d == 1:
        return "A"
    if d == 2:
        return "B" if e == 2 else "E"
    if e == 0:
        return "G"
    if e == 1:
        # either a triple eigenvalue (D) or a simple one plus an irreducible quadratic (H)
        return "D" if sum(roots.values()) == 3 else "H"
    return "F" if e == 2 else "C"


def similar(A: Mat3, B: Mat3) -> bool:
    # (char_poly, min_poly) fixes the rational canonical form of a 3x3 matrix
    return char_poly(A) == char_poly(B) and min_poly(A) == min_poly(B)


def generator_count(key: SubringKey, T: str) -> int:
    """Number of single generators of the subring ``key`` (type ``T``)."""
    count = 0
    for B in key.elements():
        if subring_key(B) == key:
            assert classify_type(B) == T, f"generator {B} is not of type {T}"
            count += 1
    return count


def omega(A: Mat3) -> int:
    """Number of elements of <A>_1 similar to A."""
    return sum(1 for B in subring_key(A).elements() if similar(A, B))


def gl_order(n: int, p: int) -> int:
    out = 1
    for k in range(n):
        out *= p**n - p**k
    return out


def centralizer_basis(A: Mat3) -> list[list[int]]:
    """Basis (row-major vec) of the solution space of XA = AX."""
    rows = []
    for i in range(3):
        for j in range(3):
            r = [0] * 9
            for k in range(3):
                r[3 * i + k] += A[k, j]
                r[3 * k + j] -= A[i, k]
            rows.append(r)
    return nullspace(rows, 9, A.p)


def _det_batch(M: np.ndarray, p: int) -> np.ndarray:
    a, b, c, d, e, f, g, h, i = (M[:, k] for k in range(9))
    return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p


def centralizer_units(A: Mat3) -> int:
    """|C(A) n GL_3(GF(p))| by enumerating the centralizer."""
    p = A.p
    basis = np.array(centralizer_basis(A), dtype=np.int64)
    k = basis.shape[0]
    coeffs = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    elems = coeffs @ basis % p
    return int(np.count_nonzero(_det_batch(elems, p)))


def orbit_size(A: Mat3) -> int:
    return gl_order(3, A.p) // centralizer_units(A)


@dataclass(frozen=True)
class TypeStats:
    vertex_count: int
    generator_count: int
    dimension: int


def _div(a, b):
    # exact division that also works on sympy expressions
    if isinstance(a, int):
        q, r = divmod(a, b)
        assert r == 0, f"{a} not divisible by {b}"
        return q
    return a / b


def vertex_count_forms(p) -> dict[str, object]:
    """Closed forms for |V_(X)|, valid for ints and sympy symbols alike."""
    return {
        "A": 1 + 0 * p,
        "B": (p**2 + p + 1) * p**2,
        "C": _div((p**2 + p + 1) * p**3 * (p + 1), 6),
        "D": (p**3 - 1) * (p + 1),
        "E": (p**2 + p + 1) * (p + 1),
        "F": (p**2 + p + 1) * p**2 * (p + 1),
        "G": _div((p**3 - p) * (p**3 - p**2), 3),
        "H": _div((p**3 - 1) * p**3, 2),
    }


def generator_count_forms(p) -> dict[str, object]:
    return {
        "A": p,
        "B": p * (p - 1),
        "C": p * (p - 1) * (p - 2),
        "D": p**2 * (p - 1),
        "E": p * (p - 1),
        "F": p * (p - 1) ** 2,
        "G": p**3 - p,
        "H": p**2 * (p - 1),
    }


DIMENSIONS = {"A": 1, "B": 2, "C": 3, "D": 3, "E": 2, "F": 3, "G": 3, "H": 3}


def neighborhood_forms(p) -> dict[tuple[str, str], object]:
    """N(X, Y): type-X neighbours (loop included) of a type-Y vertex."""
    V = vertex_count_forms(p)
    N = {(x, y): 0 * p for x in TYPES for y in TYPES}
    for x in TYPES:
        N[x, "A"] = V[x]
    for y in TYPES:
        N["A", y] = 1 + 0 * p
    N["B", "B"] = p**2 + p + 1
    N["C", "B"] = _div(p**2 + p, 2)
    N["E", "B"] = p + 1
    N["F", "B"] = p + 1
    N["H", "B"] = _div(p * (p - 1), 2)
    N["B", "C"] = 3
    N["C", "C"] = 1
    N["D", "D"] = 1
    N["E", "D"] = 1
    N["B", "E"] = p**2
    N["D", "E"] = p - 1
    N["E", "E"] = 2 * p + 1
    N["F", "E"] = p**2
    N["B", "F"] = 1
    N["E", "F"] = 1
    N["F", "F"] = 1
    N["G", "G"] = 1
    N["B", "H"] = 1
    N["H", "H"] = 1
    return N


def table1(p: int) -> dict[str, TypeStats]:
    """Per-type vertex count, generator count and dimension."""
    require_prime(p)
    V = vertex_count_forms(p)
    G = generator_count_forms(p)
    if p == 2:
        # the closed form for C is nonzero at p=2 but no such matrices exist
        V["C"] = 0
    return {t: TypeStats(V[t], G[t], DIMENSIONS[t]) for t in TYPES}


def table2(p: int) -> dict[tuple[str, str], int]:
    """N(X, Y) for all type pairs; keys are (neighbour type, vertex type)."""
    require_prime(p)
    N = neighborhood_forms(p)
    if p == 2:
        for t in TYPES:
            N["C", t] = 0
            N[t, "C"] = 0
    return N
