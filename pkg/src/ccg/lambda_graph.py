"""Assembly of the unital compressed commuting graph of M_3(GF(p)).

The graph is stored by type.  Each type X owns a block of local vertex ids
``0 .. sizes[X] - 1``; global ids concatenate the blocks in A..H order.
Non-loop edges live in per-type-pair arrays ``edges[X, Y]`` (X not after Y
in A..H order) whose rows are (local id in X, local id in Y); for X == Y
each edge is stored once with the smaller id first.  Every vertex carries a
loop, which is never stored.
"""

from __future__ import annotations

from functools import cached_property
from typing import Any, Optional

import numba
import numpy as np

from ccg.classify import TYPE_INDEX, TYPES, table1
from ccg.delta import DeltaGraph, build_delta
from ccg.field import require_prime


class TableViolation(AssertionError):
    pass


class LambdaGraph:
    def __init__(
        self,
        p: int,
        sizes: dict[str, int],
        labels: dict[str, Any],
        edges: dict[tuple[str, str], np.ndarray],
        generators: Optional[dict[str, list[np.ndarray]]] = None,
        delta: Optional[DeltaGraph] = None,
    ) -> None:
        self.p = p
        self.sizes = {t: int(sizes.get(t, 0)) for t in TYPES}
        self.labels = labels
        self.edges = {}
        for (x, y), e in edges.items():
            e = np.asarray(e).reshape(-1, 2)
            if TYPE_INDEX[x] > TYPE_INDEX[y]:
                x, y, e = y, x, e[:, ::-1]
            if x == y:
                e = np.sort(e, axis=1)
            key = (x, y)
            self.edges[key] = np.concatenate([self.edges[key], e]) if key in self.edges else e
        # matrix codes of the generators of each vertex (oracle graphs only)
        self.generators = generators
        self.delta = delta

    @property
    def matrix_labeled(self) -> bool:
        return self.generators is not None

    @cached_property
    def offsets(self) -> dict[str, int]:
        out, acc = {}, 0
        for t in TYPES:
            out[t] = acc
            acc += self.sizes[t]
        return out

    @property
    def n_vertices(self) -> int:
        return sum(self.sizes.values())

    @property
    def n_loops(self) -> int:
        return self.n_vertices

    @property
    def n_edges(self) -> int:
        """Number of non-loop edges."""
        return sum(len(e) for e in self.edges.values())

    def global_id(self, t: str, i: int) -> int:
        return self.offsets[t] + int(i)

    def locate(self, g: int) -> tuple[str, int]:
        for t in reversed(TYPES):
            if g >= self.offsets[t] and self.sizes[t]:
                return t, g - self.offsets[t]
        raise IndexError(g)

    @cached_property
    def vertex_types(self) -> np.ndarray:
        return np.repeat(np.arange(len(TYPES), dtype=np.int8), [self.sizes[t] for t in TYPES])

    def global_edges(self) -> np.ndarray:
        """All non-loop edges as global (u, v) pairs with u < v."""
        parts = []
        for (x, y), e in self.edges.items():
            g = np.empty(e.shape, dtype=np.int64)
            g[:, 0] = e[:, 0] + self.offsets[x]
            g[:, 1] = e[:, 1] + self.offsets[y]
            parts.append(np.sort(g, axis=1))
        if not parts:
            return np.zeros((0, 2), dtype=np.int64)
        return np.concatenate(parts)

    def neighbor_profile(self) -> dict[str, np.ndarray]:
        """For each type Y, an array (|V_Y|, 8) whose column X counts the
        type-X neighbours of each Y vertex, the vertex itself included."""
        prof = {t: np.zeros((self.sizes[t], len(TYPES)), dtype=np.int64) for t in TYPES}
        for t in TYPES:
            prof[t][:, TYPE_INDEX[t]] += 1
        for (x, y), e in self.edges.items():
            if not len(e):
                continue
            prof[y][:, TYPE_INDEX[x]] += np.bincount(e[:, 1], minlength=self.sizes[y])
            prof[x][:, TYPE_INDEX[y]] += np.bincount(e[:, 0], minlength=self.sizes[x])
        return prof

    def label_str(self, t: str, i: int) -> str:
        lab = self.labels[t][i]
        if self.matrix_labeled:
            return str(lab)
        d = self.delta
        if t == "A":
            return "1"
        if t in ("B", "E"):
            return str(d.pair(lab))
        if t == "C":
            return "+".join(str(d.pair(self.labels["B"][b])) for b in lab)
        if t == "F":
            return f"{d.pair(self.labels['B'][lab[0]])}/{d.pair(self.labels['E'][lab[1]])}"
        if t == "H":
            return f"{d.pair(self.labels['B'][lab[0]])}#{lab[1]}"
        if t == "D":
            return f"{d.pair(self.labels['E'][lab[0]])}#{lab[1]}"
        return f"#{int(lab)}"


@numba.njit(cache=True)
def _triangles_kernel(indptr, idx, out, fill):
    count = 0
    n = indptr.size - 1
    for u in range(n):
        for a in range(indptr[u], indptr[u + 1]):
            v = idx[a]
            if v <= u:
                continue
            # merge the two sorted neighbour lists above v
            i, j = indptr[u], indptr[v]
            iend, jend = indptr[u + 1], indptr[v + 1]
            while i < iend and j < jend:
                x, y = idx[i], idx[j]
                if x < y:
                    i += 1
                elif y < x:
                    j += 1
                else:
                    if x > v:
                        if fill:
                            out[count, 0] = u
                            out[count, 1] = v
                            out[count, 2] = x
                        count += 1
                    i += 1
                    j += 1
    return count


def _csr(edges: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    both = np.concatenate([edges, edges[:, ::-1]]).astype(np.int64)
    both = both[np.lexsort((both[:, 1], both[:, 0]))]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(both[:, 0], minlength=n), out=indptr[1:])
    return indptr, both[:, 1].copy()


def triangles(edges: np.ndarray, n: int) -> np.ndarray:
    """All 3-cliques of a simple graph on ``0 .. n-1`` as sorted rows."""
    indptr, idx = _csr(edges, n)
    k = _triangles_kernel(indptr, idx, np.zeros((1, 3), dtype=np.int64), False)
    out = np.zeros((k, 3), dtype=np.int64)
    _triangles_kernel(indptr, idx, out, True)
    return out


def enumerate_b_triangles(delta: DeltaGraph, include_p2: bool = False) -> np.ndarray:
    """Triangles inside the kind-B part of the pair graph, as sorted triples
    of pair-graph vertex ids in lexicographic order.

    At p = 2 the construction skips this step (no type-C subrings exist) and
    an empty array is returned unless ``include_p2`` is set.
    """
    if delta.p == 2 and not include_p2:
        return np.zeros((0, 3), dtype=np.int64)
    b = delta.b_vertices
    local = np.full(delta.n_vertices, -1, dtype=np.int64)
    local[b] = np.arange(b.size)
    e = local[delta.edges]
    e = e[(e >= 0).all(axis=1)]
    tri = triangles(e, b.size)
    return b[tri]


def build_lambda(p: int) -> LambdaGraph:
    require_prime(p)
    stats = table1(p)
    delta = build_delta(p)
    dt = np.int32 if p < 40 else np.int64

    # 1. pair graph: kind-B and kind-E vertices in lexicographic pair order
    b_ids, e_ids = delta.b_vertices, delta.e_vertices
    local = np.empty(delta.n_vertices, dtype=np.int64)
    local[b_ids] = np.arange(b_ids.size)
    local[e_ids] = np.arange(e_ids.size)
    de = delta.edges
    u_e, v_e = delta.is_e[de[:, 0]], delta.is_e[de[:, 1]]
    loc = local[de]
    bb = loc[~u_e & ~v_e]
    ee = loc[u_e & v_e]
    mixed = loc[u_e != v_e]
    # orient as (B local, E local), then sort for a deterministic F order
    flip = u_e[u_e != v_e]
    be = np.where(flip[:, None], mixed[:, ::-1], mixed)
    be = be[np.lexsort((be[:, 1], be[:, 0]))]
    nb, ne = b_ids.size, e_ids.size

    # 2. one C vertex per triangle of B vertices
    tri = local[enumerate_b_triangles(delta)]
    nc = tri.shape[0]
    c_idx = np.arange(nc)
    bc = np.stack([tri.reshape(-1), np.repeat(c_idx, 3)], axis=1)

    # 3. one F vertex per B-E edge
    nf = be.shape[0]
    f_idx = np.arange(nf)
    bf = np.stack([be[:, 0], f_idx], axis=1)
    ef = np.stack([be[:, 1], f_idx], axis=1)

    # 4. p(p-1)/2 H vertices hanging off each B vertex
    kh = p * (p - 1) // 2
    h_anchor = np.repeat(np.arange(nb), kh)
    h_lab = np.stack([h_anchor, np.tile(np.arange(kh), nb)], axis=1)
    bh = np.stack([h_anchor, np.arange(nb * kh)], axis=1)

    # 5. p-1 D vertices hanging off each E vertex
    kd = p - 1
    d_anchor = np.repeat(np.arange(ne), kd)
    d_lab = np.stack([d_anchor, np.tile(np.arange(kd), ne)], axis=1)
    de_edges = np.stack([np.arange(ne * kd), d_anchor], axis=1)

    # 6. isolated G vertices
    ng = stats["G"].vertex_count

    sizes = {"A": 1, "B": nb, "C": nc, "D": ne * kd, "E": ne, "F": nf, "G": ng, "H": nb * kh}
    edges = {
        ("B", "B"): bb,
        ("B", "C"): bc,
        ("B", "E"): be,
        ("B", "F"): bf,
        ("B", "H"): bh,
        ("D", "E"): de_edges,
        ("E", "E"): ee,
        ("E", "F"): ef,
    }
    # 7. the scalar vertex sees everything; 8. loops are implicit
    for t in TYPES[1:]:
        if sizes[t]:
            edges["A", t] = np.stack([np.zeros(sizes[t], dtype=np.int64), np.arange(sizes[t])], axis=1)
    edges = {k: np.ascontiguousarray(v, dtype=dt) for k, v in edges.items()}
    labels = {
        "A": np.zeros(1, dtype=np.int64),
        "B": b_ids,
        "C": tri,
        "D": d_lab,
        "E": e_ids,
        "F": be,
        "G": np.arange(ng),
        "H": h_lab,
    }
    return LambdaGraph(p, sizes, labels, edges, delta=delta)


def count_report(g: LambdaGraph) -> tuple[dict[str, int], dict[tuple[str, str], int]]:
    """Measured per-type vertex counts and the N(X, Y) neighbourhood table.

    Raises :class:`TableViolation` if two vertices of the same type have
    different typed neighbourhood profiles.
    """
    prof = g.neighbor_profile()
    N: dict[tuple[str, str], int] = {}
    for y in TYPES:
        rows = prof[y]
        for x in TYPES:
            col = rows[:, TYPE_INDEX[x]]
            if col.size and (col != col[0]).any():
                bad = int(np.nonzero(col != col[0])[0][0])
                raise TableViolation(
                    f"Table 2 violated: type-{y} vertices {g.label_str(y, 0)} and "
                    f"{g.label_str(y, bad)} have {col[0]} and {col[bad]} type-{x} neighbours"
                )
            N[x, y] = int(col[0]) if col.size else 0
    return dict(g.sizes), N
