"""The projective plane PG(2, p) and its block incidence matrix."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from ccg.field import inv_mod, require_prime
from ccg.matrix import Subspace


def normalize(v: Sequence[int], p: int) -> tuple[int, ...]:
    """Scale a nonzero vector so that its first nonzero coordinate is 1."""
    v = [x % p for x in v]
    lead = next((x for x in v if x), 0)
    if not lead:
        raise ValueError("the zero vector spans no projective point")
    inv = inv_mod(lead, p)
    return tuple(x * inv % p for x in v)


@dataclass(frozen=True, order=True)
class ProjPoint:
    """1-dimensional subspace of GF(p)^3, by its normalized spanning vector."""

    coords: tuple[int, int, int]
    p: int

    @classmethod
    def of(cls, v: Sequence[int], p: int) -> "ProjPoint":
        return cls(normalize(v, p), p)

    @classmethod
    def from_subspace(cls, s: Subspace) -> "ProjPoint":
        if s.dim != 1:
            raise ValueError(f"a point is a 1-dimensional subspace, got dim {s.dim}")
        return cls(s.basis[0], s.p)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True, order=True)
class ProjLine:
    """2-dimensional subspace of GF(p)^3, the kernel of ``dual_coords``."""

    dual_coords: tuple[int, int, int]
    p: int

    @classmethod
    def of(cls, f: Sequence[int], p: int) -> "ProjLine":
        return cls(normalize(f, p), p)

    @classmethod
    def from_subspace(cls, s: Subspace) -> "ProjLine":
        if s.dim != 2:
            raise ValueError(f"a line is a 2-dimensional subspace, got dim {s.dim}")
        (f,) = s.annihilator().basis
        return cls(normalize(f, s.p), s.p)

    def subspace(self) -> Subspace:
        return Subspace.span([self.dual_coords], self.p).annihilator()

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.dual_coords)) + "]"


def _normalized_vectors(p: int) -> list[tuple[int, int, int]]:
    return sorted(
        v for v in itertools.product(range(p), repeat=3) if any(v) and next(x for x in v if x) == 1
    )


def enumerate_pg(p: int) -> tuple[list[ProjPoint], list[ProjLine]]:
    """Points and lines of PG(2, p), each sorted by normalized coordinates."""
    require_prime(p)
    vs = _normalized_vectors(p)
    return [ProjPoint(v, p) for v in vs], [ProjLine(v, p) for v in vs]


def incident(P: ProjPoint, L: ProjLine) -> bool:
    assert P.p == L.p, f"mixed moduli {P.p} and {L.p}"
    return sum(a * b for a, b in zip(P.coords, L.dual_coords)) % P.p == 0


class ProjectivePlane:
    """Indexed view of PG(2, p): points and lines by position in sorted order."""

    def __init__(self, p: int) -> None:
        self.p = p
        self.points, self.lines = enumerate_pg(p)
        self.n = len(self.points)
        self.point_index = {P: k for k, P in enumerate(self.points)}
        self.line_index = {L: k for k, L in enumerate(self.lines)}

    @cached_property
    def incidence(self) -> np.ndarray:
        """Boolean matrix, rows indexed by points and columns by lines."""
        P = np.array([pt.coords for pt in self.points], dtype=np.int64)
        L = np.array([ln.dual_coords for ln in self.lines], dtype=np.int64)
        return (P @ L.T) % self.p == 0

    @cached_property
    def points_on_line(self) -> np.ndarray:
        """(n, p+1) array; row k lists the points of line k in increasing order."""
        return np.nonzero(self.incidence.T)[1].reshape(self.n, self.p + 1)

    @cached_property
    def lines_through_point(self) -> np.ndarray:
        return np.nonzero(self.incidence)[1].reshape(self.n, self.p + 1)


@lru_cache(maxsize=None)
def plane(p: int) -> ProjectivePlane:
    return ProjectivePlane(require_prime(p))


def build_Tp(p: int) -> np.ndarray:
    """Block incidence matrix T_p of order p^2 + p + 1 (dtype uint8).

    Layout: one leading row/column, then a block of p rows/columns, then
    p blocks of p.  Inside the S blocks the congruence (s-1)(i+j) = t
    (mod p) is evaluated with 1-based i, j, s, t; storage is 0-based, so
    array position k corresponds to index k + 1.
    """
    require_prime(p)
    n = p * p + p + 1
    T = np.zeros((n, n), dtype=np.uint8)
    T[0, 0] = 1
    T[0, 1 : p + 1] = 1
    T[1 : p + 1, 0] = 1

    def blk(k: int) -> slice:
        # k-th block of size p after the leading 1 + p indices (k 1-based)
        start = 1 + p * k
        return slice(start, start + p)

    idx = np.arange(1, p + 1)
    for s in range(1, p + 1):
        # R_s sits in block row 1, block column s: row s of that block is all ones
        T[s, blk(s)] = 1
        # R_s^T sits in block row s, block column 1
        T[blk(s), s] = 1
        for t in range(1, p + 1):
            if s == 1:
                T[blk(s), blk(t)] = np.eye(p, dtype=np.uint8)
            else:
                S = ((s - 1) * (idx[:, None] + idx[None, :]) - t) % p == 0
                T[blk(s), blk(t)] = S
    return T
