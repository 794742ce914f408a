"""The ordinary commuting graph, obtained by blowing up compressed vertices.

Removing the scalar vertex and all loops from the compressed graph and
replacing each remaining vertex by a clique on its generators gives the
commuting graph on non-scalar matrices.  Connectivity is decided on the
compressed graph, since a blown-up vertex is itself a clique.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ccg.classify import TYPES, table1
from ccg.lambda_graph import LambdaGraph


@dataclass(frozen=True)
class Component:
    size: int
    is_clique: bool


def census(comps: list[Component]) -> list[dict]:
    """Component multiset as sorted records {size, is_clique, count}."""
    c = Counter((x.size, x.is_clique) for x in comps)
    return [{"size": s, "is_clique": k, "count": n} for (s, k), n in sorted(c.items())]


def _component_sizes(n: int, edges: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Label, weighted size and edge count of each connected component."""
    adj = coo_matrix((np.ones(len(edges), dtype=np.int8), (edges[:, 0], edges[:, 1])), shape=(n, n))
    k, lab = connected_components(adj, directed=False)
    size = np.bincount(lab, weights=weights, minlength=k).astype(np.int64)
    m = np.bincount(lab[edges[:, 0]], minlength=k) if len(edges) else np.zeros(k, dtype=np.int64)
    return lab, size, m


class GammaGraph:
    """Explicit commuting graph: vertices labelled, each edge stored once."""

    def __init__(self, p: int, labels: np.ndarray, edges: np.ndarray, matrix_labeled: bool) -> None:
        self.p = p
        self.labels = labels
        self.edges = edges
        self.matrix_labeled = matrix_labeled

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def edge_array(self) -> np.ndarray:
        return self.edges

    def degrees(self) -> np.ndarray:
        e = self.edge_array()
        return np.bincount(e.reshape(-1), minlength=self.n_vertices)

    def components(self) -> list[Component]:
        e = self.edge_array()
        n = self.n_vertices
        _, size, m = _component_sizes(n, e, np.ones(n))
        return [Component(int(s), int(k) == int(s) * (int(s) - 1) // 2) for s, k in zip(size, m)]

    def labeled_edges(self) -> set[tuple[int, int]]:
        """Edges as sorted pairs of vertex labels (matrix codes in oracle mode)."""
        lab = self.labels if self.labels.ndim == 1 else self.labels[:, 0] * (1 << 32) + self.labels[:, 1]
        e = np.sort(lab[self.edge_array()], axis=1)
        return set(map(tuple, e.tolist()))


class BlownUpGamma(GammaGraph):
    """Commuting graph represented through the compressed graph it came from.

    Vertex k is slot ``slot[k]`` of compressed vertex ``owner[k]``; in
    matrix-labelled mode ``labels`` holds the generator matrix codes,
    otherwise (owner, slot) pairs.  Edges are only materialized on request.
    """

    def __init__(self, lam: LambdaGraph, gen: np.ndarray) -> None:
        self.lam = lam
        self.gen = gen  # generators per compressed vertex, 0 for the scalar vertex
        self.owner = np.repeat(np.arange(gen.size), gen)
        starts = np.concatenate([[0], np.cumsum(gen)[:-1]])
        self.slot = np.arange(self.owner.size) - starts[self.owner]
        if lam.matrix_labeled:
            labels = np.concatenate(
                [np.asarray(codes, dtype=np.int64) for t in TYPES[1:] for codes in lam.generators[t]]
                or [np.zeros(0, dtype=np.int64)]
            )
        else:
            labels = np.stack([self.owner, self.slot], axis=1)
        super().__init__(lam.p, labels, np.zeros((0, 2), dtype=np.int64), lam.matrix_labeled)

    @cached_property
    def compressed_edges(self) -> np.ndarray:
        """Compressed edges without the scalar vertex (global ids)."""
        e = self.lam.global_edges()
        a = self.lam.offsets["A"]
        return e[(e[:, 0] != a) & (e[:, 1] != a)]

    def degrees(self) -> np.ndarray:
        e = self.compressed_edges
        w = self.gen.astype(np.int64)
        nbr = np.bincount(e[:, 0], weights=w[e[:, 1]], minlength=w.size)
        nbr += np.bincount(e[:, 1], weights=w[e[:, 0]], minlength=w.size)
        per_vertex = (w - 1 + nbr.astype(np.int64))
        return per_vertex[self.owner]

    @cached_property
    def _slot_start(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.gen)[:-1]])

    def edge_array(self) -> np.ndarray:
        start, gen = self._slot_start, self.gen
        parts = []
        # cliques inside each blown-up vertex
        for g in np.unique(gen[gen > 1]):
            owners = np.nonzero(gen == g)[0]
            iu, ju = np.triu_indices(int(g), 1)
            base = start[owners][:, None]
            parts.append(np.stack([(base + iu).reshape(-1), (base + ju).reshape(-1)], axis=1))
        # complete bipartite joins along compressed edges
        e = self.compressed_edges
        for (ga, gb) in set(zip(gen[e[:, 0]].tolist(), gen[e[:, 1]].tolist())):
            sel = e[(gen[e[:, 0]] == ga) & (gen[e[:, 1]] == gb)]
            ii, jj = np.meshgrid(np.arange(ga), np.arange(gb), indexing="ij")
            u = (start[sel[:, 0]][:, None] + ii.reshape(-1)).reshape(-1)
            v = (start[sel[:, 1]][:, None] + jj.reshape(-1)).reshape(-1)
            parts.append(np.stack([u, v], axis=1))
        if not parts:
            return np.zeros((0, 2), dtype=np.int64)
        return np.sort(np.concatenate(parts), axis=1)

    def components(self) -> list[Component]:
        n = self.gen.size
        keep = self.gen > 0
        e = self.compressed_edges
        lab, size, m = _component_sizes(n, e, self.gen.astype(float))
        out = []
        members = np.bincount(lab[keep], minlength=size.size)
        for c in range(size.size):
            if members[c] == 0:
                continue
            k = int(members[c])
            out.append(Component(int(size[c]), int(m[c]) == k * (k - 1) // 2))
        return out


def blow_up(g: LambdaGraph) -> BlownUpGamma:
    """Drop the scalar vertex and loops, then replace each vertex by a clique
    on its generators (matrix-labelled when ``g`` carries generator lists)."""
    if g.matrix_labeled:
        gen = np.concatenate([[len(c) for c in g.generators[t]] for t in TYPES]).astype(np.int64)
    else:
        stats = table1(g.p)
        gen = np.repeat([stats[t].generator_count for t in TYPES], [g.sizes[t] for t in TYPES]).astype(np.int64)
    gen[g.offsets["A"] : g.offsets["A"] + g.sizes["A"]] = 0
    return BlownUpGamma(g, gen)


def components(g: GammaGraph) -> list[Component]:
    return g.components()
