"""Graph on point-line pairs of PG(2, p) modelling the (B)-(E) part of the
compressed commuting graph, and the maps between pairs and subrings.

A pair (P, L) with P off L stands for the subring generated by the rank-1
idempotent with image P and kernel L (kind "B"); a pair with P on L stands
for the subring generated by a rank-1 nilpotent with that image and kernel
(kind "E").
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ccg.classify import classify_type
from ccg.field import inv_mod, require_prime
from ccg.matrix import Mat3, SubringKey, image_kernel, subring_key
from ccg.projective import ProjectivePlane, ProjLine, ProjPoint, incident, plane


@dataclass(frozen=True, order=True)
class PointLinePair:
    point: ProjPoint
    line: ProjLine

    @property
    def kind(self) -> str:
        return "E" if incident(self.point, self.line) else "B"

    def __str__(self) -> str:
        return f"{self.point}{self.line}"


def delta_edge(a: PointLinePair, b: PointLinePair) -> bool:
    """Adjacency in the pair graph, as the five-way case analysis."""
    P1, L1, P2, L2 = a.point, a.line, b.point, b.line
    on = incident
    distinct = P1 != P2 and L1 != L2
    return (
        (P1 == P2 and L1 == L2)
        or (on(P1, L1) and on(P2, L2) and (P1 == P2 or L1 == L2))
        or (distinct and on(P2, L1) and on(P2, L2) and on(P1, L2) and not on(P1, L1))
        or (distinct and on(P1, L1) and on(P1, L2) and on(P2, L1) and not on(P2, L2))
        or (distinct and on(P1, L2) and not on(P1, L1) and on(P2, L1) and not on(P2, L2))
    )


def delta_edge_fast(a: PointLinePair, b: PointLinePair) -> bool:
    """Equivalent test: equal pairs, or each point lies on the other's line."""
    return a == b or (incident(b.point, a.line) and incident(a.point, b.line))


class DeltaGraph:
    """Pair graph with loops on every vertex.

    Vertex ``P * n + L`` is the pair (points[P], lines[L]), so vertex order is
    lexicographic in (point, line).  ``edges`` holds each non-loop edge once
    as (u, v) with u < v; loops are implicit.
    """

    def __init__(self, pg: ProjectivePlane, edges: np.ndarray) -> None:
        self.pg = pg
        self.p = pg.p
        self.edges = edges

    @property
    def n_vertices(self) -> int:
        return self.pg.n**2

    @cached_property
    def is_e(self) -> np.ndarray:
        return self.pg.incidence.reshape(-1)

    @cached_property
    def b_vertices(self) -> np.ndarray:
        return np.nonzero(~self.is_e)[0]

    @cached_property
    def e_vertices(self) -> np.ndarray:
        return np.nonzero(self.is_e)[0]

    def pair(self, v: int) -> PointLinePair:
        P, L = divmod(int(v), self.pg.n)
        return PointLinePair(self.pg.points[P], self.pg.lines[L])

    def index(self, pair: PointLinePair) -> int:
        return self.pg.point_index[pair.point] * self.pg.n + self.pg.line_index[pair.line]

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.n_vertices
        both = np.concatenate([self.edges, self.edges[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(both[:, 0], minlength=n), out=indptr[1:])
        return indptr, both[:, 1]

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbours of ``v``, excluding ``v`` itself."""
        indptr, idx = self._csr
        return idx[indptr[v] : indptr[v + 1]]

    def adjacent(self, u: int, v: int) -> bool:
        if u == v:
            return True
        nb = self.neighbors(u)
        k = np.searchsorted(nb, v)
        return k < nb.size and nb[k] == v


def build_delta(p: int) -> DeltaGraph:
    """Pair graph of PG(2, p).

    Neighbours of (P1, L1) other than itself are exactly the pairs (P2, L2)
    with P2 on L1 and P1 on L2, so candidates are generated from the
    points of L1 times the lines through P1.
    """
    require_prime(p)
    pg = plane(p)
    n = pg.n
    P1 = np.repeat(np.arange(n), n)
    L1 = np.tile(np.arange(n), n)
    cand_p = pg.points_on_line[L1]  # (n^2, p+1)
    cand_l = pg.lines_through_point[P1]
    ids = cand_p[:, :, None] * n + cand_l[:, None, :]
    src = np.broadcast_to((P1 * n + L1)[:, None, None], ids.shape)
    keep = ids > src
    dtype = np.int32 if n * n < 2**31 else np.int64
    edges = np.stack([src[keep], ids[keep]], axis=1).astype(dtype)
    return DeltaGraph(pg, edges)


def build_delta_literal(p: int) -> DeltaGraph:
    """Same graph from :func:`delta_edge` over all pairs (small p only)."""
    pg = plane(p)
    g = DeltaGraph(pg, np.zeros((0, 2), dtype=np.int64))
    pairs = [g.pair(v) for v in range(g.n_vertices)]
    edges = [
        (u, v)
        for u in range(len(pairs))
        for v in range(u + 1, len(pairs))
        if delta_edge(pairs[u], pairs[v])
    ]
    return DeltaGraph(pg, np.array(edges, dtype=np.int64).reshape(-1, 2))


def psi(pair: PointLinePair) -> Mat3:
    """Canonical generator for a pair: u v^T, rescaled to an idempotent for kind B."""
    p = pair.point.p
    u, v = pair.point.coords, pair.line.dual_coords
    scale = sum(a * b for a, b in zip(u, v)) % p
    c = inv_mod(scale, p) if scale else 1
    return Mat3((c * u[i] * v[j] for i in range(3) for j in range(3)), p)


def phi(key: SubringKey) -> PointLinePair:
    """Pair of a (B) or (E) subring: (image, kernel) of its rank-1 idempotent
    or of any of its rank-1 nilpotents."""
    if key.dim != 2:
        raise ValueError(f"phi undefined: subring of dimension {key.dim} is not of type B or E")
    gen = next(B for B in key.elements() if subring_key(B) == key)
    kind = classify_type(gen)
    for M in key.elements():
        if M.rank() != 1:
            continue
        M2 = M @ M
        if (kind == "B" and M2 == M) or (kind == "E" and M2 == Mat3.zero(key.p)):
            image, kernel = image_kernel(M)
            return PointLinePair(ProjPoint.from_subspace(image), ProjLine.from_subspace(kernel))
    raise AssertionError(f"no rank-1 {'idempotent' if kind == 'B' else 'nilpotent'} in {key}")
