"""Brute-force ground truth over all of M_3(GF(p)) (and M_2 for the star check).

Matrices are enumerated in code order: the integer 0 .. p^9 - 1 written in
base p fills the entries row-major, most significant digit first (see
``Mat3.code``).  Commutation is tested for all pairs with dense products in
chunks; entries stay far below 2^24, so float32 arithmetic is exact.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ccg.classify import TYPE_INDEX, TYPES, classify_type
from ccg.delta import phi
from ccg.field import require_prime
from ccg.gamma import GammaGraph, census
from ccg.lambda_graph import LambdaGraph
from ccg.matrix import Mat3, SubringKey, codes_to_matrices, rref_batch, subring_keys_batch

MAX_LAMBDA_P = 5
MAX_GAMMA_P = 3


def default_threads() -> int:
    return max(1, int(os.environ.get("CCG_THREADS", "1")))


def commuting_pairs(mats: np.ndarray, p: int, threads: int = 1, chunk: Optional[int] = None) -> np.ndarray:
    """All index pairs (i, j), i < j, of square matrices that commute."""
    n, d, _ = mats.shape
    A = mats.astype(np.float32)
    if chunk is None:
        chunk = max(1, min(n, 4_000_000 // max(n * d, 1)))
    # right factor for A_i @ B_j: rows of (d, n*d) hold B_j side by side
    Bcat = A.transpose(1, 0, 2).reshape(d, n * d)
    Bstack = A.reshape(n * d, d)

    def work(lo: int) -> np.ndarray:
        hi = min(n, lo + chunk)
        a = A[lo:hi]
        ab = (a.reshape(-1, d) @ Bcat).reshape(hi - lo, d, n, d)
        ba = (Bstack @ a.transpose(1, 0, 2).reshape(d, -1)).reshape(n, d, hi - lo, d)
        diff = np.fmod(ab - ba.transpose(2, 1, 0, 3), p)
        ok = ~np.any(diff != 0, axis=(1, 3))
        i, j = np.nonzero(ok)
        i = i + lo
        keep = i < j
        return np.stack([i[keep], j[keep]], axis=1)

    starts = range(0, n, chunk)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(work, starts))
    else:
        parts = [work(lo) for lo in starts]
    return np.concatenate(parts) if parts else np.zeros((0, 2), dtype=np.int64)


@dataclass
class CompressionIndex:
    """Every matrix grouped by the subring it generates."""

    p: int
    keys: list[SubringKey]
    types: list[str]
    generators: list[np.ndarray]  # matrix codes generating each key, increasing
    key_of: np.ndarray  # key position for every matrix code

    @property
    def representatives(self) -> np.ndarray:
        return np.array([g[0] for g in self.generators], dtype=np.int64)

    def mass(self) -> int:
        return sum(len(g) for g in self.generators)


def build_index(p: int, chunk: int = 250_000) -> CompressionIndex:
    require_prime(p)
    total = p**9
    raw = np.empty((total, 27), dtype=np.uint8)
    for lo in range(0, total, chunk):
        hi = min(total, lo + chunk)
        mats = codes_to_matrices(np.arange(lo, hi), p)
        raw[lo:hi] = subring_keys_batch(mats, p).reshape(hi - lo, 27)
    uniq, inv = np.unique(raw, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    del raw
    order = np.argsort(inv, kind="stable")
    bounds = np.cumsum(np.bincount(inv, minlength=len(uniq)))[:-1]
    generators = np.split(order, bounds)
    keys = [SubringKey.from_bytes(bytes(row), p) for row in uniq]
    types = [classify_type(Mat3.from_code(int(g[0]), p)) for g in generators]
    return CompressionIndex(p, keys, types, generators, inv)


def brute_lambda(p: int, threads: Optional[int] = None, index: Optional[CompressionIndex] = None) -> LambdaGraph:
    """Compressed commuting graph straight from the definition."""
    require_prime(p)
    if p > MAX_LAMBDA_P:
        raise ValueError(f"brute-force oracle refuses p={p}: enumerating {p}^9 matrices is out of reach (max p={MAX_LAMBDA_P})")
    idx = index or build_index(p)
    threads = threads or default_threads()
    # vertex order: by type, then by canonical key bytes
    order = sorted(range(len(idx.keys)), key=lambda k: (TYPE_INDEX[idx.types[k]], idx.keys[k].to_bytes()))
    pos = np.empty(len(order), dtype=np.int64)
    sizes = {t: 0 for t in TYPES}
    local = np.empty(len(order), dtype=np.int64)
    for rank, k in enumerate(order):
        pos[k] = rank
        t = idx.types[k]
        local[k] = sizes[t]
        sizes[t] += 1
    labels = {t: [] for t in TYPES}
    gens = {t: [] for t in TYPES}
    for k in order:
        labels[idx.types[k]].append(idx.keys[k])
        gens[idx.types[k]].append(idx.generators[k])

    reps = codes_to_matrices(idx.representatives, p)
    pairs = commuting_pairs(reps, p, threads)
    tcode = np.array([TYPE_INDEX[t] for t in idx.types])
    edges: dict[tuple[str, str], list] = {}
    ta, tb = tcode[pairs[:, 0]], tcode[pairs[:, 1]]
    for x in range(len(TYPES)):
        for y in range(x, len(TYPES)):
            sel = ((ta == x) & (tb == y)) | ((ta == y) & (tb == x))
            if not sel.any():
                continue
            e = pairs[sel]
            swap = tcode[e[:, 0]] != x
            e = np.where(swap[:, None], e[:, ::-1], e)
            edges[TYPES[x], TYPES[y]] = np.stack([local[e[:, 0]], local[e[:, 1]]], axis=1)
    return LambdaGraph(p, sizes, labels, edges, generators=gens)


@dataclass
class Verdict:
    match: bool
    message: str
    details: dict = field(default_factory=dict)
    mapping: Optional[np.ndarray] = None

    def report(self) -> dict:
        return {"verdict": "MATCH" if self.match else "MISMATCH", "message": self.message, **self.details}


def _neighbors_by_type(g: LambdaGraph) -> list[dict[str, list[int]]]:
    out: list[dict[str, list[int]]] = [dict() for _ in range(g.n_vertices)]
    for u, v in g.global_edges().tolist():
        tu, lu = g.locate(u)
        tv, lv = g.locate(v)
        out[u].setdefault(tv, []).append(lv)
        out[v].setdefault(tu, []).append(lu)
    return out


def compare_lambda(synthetic: LambdaGraph, brute: LambdaGraph) -> Verdict:
    """Build the explicit isomorphism brute -> synthetic and check every edge.

    Pair-graph vertices align through ``phi``; C vertices through the pairs
    of their three B neighbours; F through their (B, E) neighbours; H and D
    within the group hanging off the same anchor; G in order; A to A.
    """
    if synthetic.p != brute.p:
        return Verdict(False, f"different primes {synthetic.p} and {brute.p}")
    for t in TYPES:
        if synthetic.sizes[t] != brute.sizes[t]:
            return Verdict(
                False,
                f"cardinality mismatch for type {t}: synthetic {synthetic.sizes[t]}, brute {brute.sizes[t]}",
                {"synthetic_counts": synthetic.sizes, "brute_counts": brute.sizes},
            )
    syn, bru = synthetic, brute
    d = syn.delta
    nbrs = _neighbors_by_type(bru)
    maps: dict[str, np.ndarray] = {t: np.full(bru.sizes[t], -1, dtype=np.int64) for t in TYPES}

    def fail(msg: str) -> Verdict:
        return Verdict(False, msg)

    if bru.sizes["A"]:
        maps["A"][0] = 0
    for t in ("B", "E"):
        for i, key in enumerate(bru.labels[t]):
            did = d.index(phi(key))
            j = int(np.searchsorted(syn.labels[t], did))
            if j >= syn.sizes[t] or syn.labels[t][j] != did:
                return fail(f"phi sends {t} vertex {key} to {d.pair(did)}, which is not a type-{t} pair")
            maps[t][i] = j

    c_index = {tuple(r): k for k, r in enumerate(np.asarray(syn.labels["C"]).tolist())}
    for i in range(bru.sizes["C"]):
        bs = nbrs[bru.global_id("C", i)].get("B", [])
        key = tuple(sorted(int(maps["B"][b]) for b in bs))
        if len(key) != 3 or key not in c_index:
            return fail(f"C vertex {bru.labels['C'][i]} has B neighbours {key}, not a triangle of the build")
        maps["C"][i] = c_index[key]

    f_index = {tuple(r): k for k, r in enumerate(np.asarray(syn.labels["F"]).tolist())}
    for i in range(bru.sizes["F"]):
        nb = nbrs[bru.global_id("F", i)]
        bs, es = nb.get("B", []), nb.get("E", [])
        if len(bs) != 1 or len(es) != 1:
            return fail(f"F vertex {bru.labels['F'][i]} has {len(bs)} B and {len(es)} E neighbours")
        key = (int(maps["B"][bs[0]]), int(maps["E"][es[0]]))
        if key not in f_index:
            return fail(f"F vertex {bru.labels['F'][i]} sits on {key}, which is no B-E edge of the build")
        maps["F"][i] = f_index[key]

    for t, anchor in (("H", "B"), ("D", "E")):
        groups: dict[int, list[int]] = {}
        for k, (a, _) in enumerate(np.asarray(syn.labels[t]).reshape(-1, 2).tolist()):
            groups.setdefault(a, []).append(k)
        for g in groups.values():
            g.reverse()
        for i in range(bru.sizes[t]):
            an = nbrs[bru.global_id(t, i)].get(anchor, [])
            if len(an) != 1:
                return fail(f"{t} vertex {bru.labels[t][i]} has {len(an)} {anchor} neighbours")
            group = groups.get(int(maps[anchor][an[0]]))
            if not group:
                return fail(f"{t} vertex {bru.labels[t][i]}: anchor group already exhausted")
            maps[t][i] = group.pop()

    maps["G"][:] = np.arange(bru.sizes["G"])

    mapping = np.concatenate([maps[t] + syn.offsets[t] for t in TYPES])
    if np.unique(mapping).size != mapping.size:
        return fail("constructed vertex map is not injective")

    be = np.sort(mapping[bru.global_edges()], axis=1)
    se = syn.global_edges()
    bset = set(map(tuple, be.tolist()))
    sset = set(map(tuple, se.tolist()))
    if bset != sset:
        missing = sorted(bset - sset)
        extra = sorted(sset - bset)
        u, v = (missing or extra)[0]
        tu, lu = syn.locate(u)
        tv, lv = syn.locate(v)
        side = "missing from" if missing else "extra in"
        return Verdict(
            False,
            f"edge {tu} vertex {syn.label_str(tu, lu)} -- {tv} vertex {syn.label_str(tv, lv)} {side} the synthetic graph",
            {"missing_edges": len(missing), "extra_edges": len(extra)},
            mapping,
        )
    return Verdict(
        True,
        f"isomorphic: {syn.n_vertices} vertices, {syn.n_edges} edges plus {syn.n_loops} loops",
        {"vertices": syn.n_vertices, "edges": syn.n_edges, "counts": syn.sizes},
        mapping,
    )


def brute_gamma(p: int, threads: Optional[int] = None) -> GammaGraph:
    """Commuting graph on all non-scalar matrices, labelled by matrix code."""
    require_prime(p)
    if p > MAX_GAMMA_P:
        raise ValueError(f"brute-force commuting graph refuses p={p} (max p={MAX_GAMMA_P})")
    codes = np.arange(p**9, dtype=np.int64)
    mats = codes_to_matrices(codes, p)
    flat = mats.reshape(-1, 9)
    scalar = (flat[:, [1, 2, 3, 5, 6, 7]] == 0).all(axis=1) & (flat[:, 0] == flat[:, 4]) & (flat[:, 4] == flat[:, 8])
    keep = ~scalar
    pairs = commuting_pairs(mats[keep], p, threads or default_threads())
    return GammaGraph(p, codes[keep], pairs, matrix_labeled=True)


def m2_star_check(p: int) -> Verdict:
    """Check that the compressed commuting graph of M_2(GF(p)) is a star with
    p^2 + p + 1 leaves (plus loops)."""
    require_prime(p)
    if p > MAX_LAMBDA_P:
        raise ValueError(f"M_2 oracle limited to p <= {MAX_LAMBDA_P}")
    n = p**4
    codes = np.arange(n)
    mats = np.empty((n, 4), dtype=np.int64)
    rest = codes.copy()
    for k in range(3, -1, -1):
        mats[:, k] = rest % p
        rest //= p
    # over a prime field the unital subring of a 2x2 matrix is span{I, A}
    gen = np.stack([np.broadcast_to([1, 0, 0, 1], (n, 4)), mats], axis=1)
    keys = rref_batch(gen, p).reshape(n, 8)
    uniq, first = np.unique(keys, axis=0, return_index=True)
    reps = mats[first].reshape(-1, 2, 2)
    dims = (uniq.reshape(-1, 2, 4) != 0).any(axis=2).sum(axis=1)
    pairs = commuting_pairs(reps, p)
    k = len(uniq)
    centers = np.nonzero(dims == 1)[0]
    deg = np.bincount(pairs.reshape(-1), minlength=k)
    leaves = k - 1
    details = {"p": p, "vertices": k, "leaves": leaves, "expected_leaves": p * p + p + 1}
    if centers.size != 1:
        return Verdict(False, f"expected one scalar vertex, found {centers.size}", details)
    c = int(centers[0])
    ok = deg[c] == leaves and all(deg[v] == 1 for v in range(k) if v != c) and leaves == p * p + p + 1
    msg = f"star with {leaves} leaves" if ok else f"not the expected star (center degree {deg[c]}, {leaves} other vertices)"
    return Verdict(bool(ok), msg, details)


def brute_gamma_degrees(p: int, chunk: int = 100_000) -> np.ndarray:
    """Degree of every non-scalar matrix in the commuting graph, indexed by
    code order with scalars removed.

    Uses |C(A)| = p^(9 - rank of X -> XA - AX), so no pairwise sweep is
    needed; this is what makes a p = 5 degree check affordable.
    """
    require_prime(p)
    if p > MAX_LAMBDA_P:
        raise ValueError(f"degree oracle limited to p <= {MAX_LAMBDA_P}")
    total = p**9
    out = np.empty(total, dtype=np.int64)
    eye = np.eye(3, dtype=np.int64)
    for lo in range(0, total, chunk):
        hi = min(total, lo + chunk)
        A = codes_to_matrices(np.arange(lo, hi), p)
        # coefficient matrix of X -> XA - AX on row-major vec(X)
        # row (i, j), column (a, b): d_ia A_bj - A_ia d_jb
        K = np.einsum("ia,nbj->nijab", eye, A) - np.einsum("nia,jb->nijab", A, eye)
        K = K.reshape(-1, 9, 9)
        red = rref_batch(K, p)
        rank = (red != 0).any(axis=2).sum(axis=1)
        out[lo:hi] = p ** (9 - rank) - p - 1
    flat = codes_to_matrices(np.arange(total), p).reshape(-1, 9)
    scalar = (flat[:, [1, 2, 3, 5, 6, 7]] == 0).all(axis=1) & (flat[:, 0] == flat[:, 4]) & (flat[:, 4] == flat[:, 8])
    return out[~scalar]


def _sorted_labeled_edges(g: GammaGraph) -> np.ndarray:
    lab = g.labels if g.labels.ndim == 1 else g.labels[:, 0] * (1 << 32) + g.labels[:, 1]
    e = np.sort(lab[g.edge_array()], axis=1)
    return e[np.lexsort((e[:, 1], e[:, 0]))]


def compare_gamma(built: GammaGraph, brute: GammaGraph) -> Verdict:
    """Labelled equality of two matrix-labelled commuting graphs."""
    if not (built.matrix_labeled and brute.matrix_labeled):
        return Verdict(False, "labelled comparison needs matrix-labelled graphs")
    a, b = np.sort(built.labels), np.sort(brute.labels)
    if not np.array_equal(a, b):
        return Verdict(False, f"vertex sets differ: {a.size} vs {b.size} matrices")
    ea, eb = _sorted_labeled_edges(built), _sorted_labeled_edges(brute)
    details = {"vertices": int(a.size), "edges": int(len(eb)), "components": census(built.components())}
    if ea.shape != eb.shape or not np.array_equal(ea, eb):
        sa, sb = set(map(tuple, ea.tolist())), set(map(tuple, eb.tolist()))
        missing, extra = sorted(sb - sa), sorted(sa - sb)
        u, v = (missing or extra)[0]
        side = "missing from" if missing else "extra in"
        details.update(missing_edges=len(missing), extra_edges=len(extra))
        return Verdict(False, f"edge {u} -- {v} (matrix codes) {side} the blown-up graph", details)
    return Verdict(True, f"equal: {a.size} vertices, {len(eb)} edges", details)


def compare_gamma_degrees(built: GammaGraph, p: int) -> Verdict:
    """Sorted degree sequence against the centralizer oracle, plus the
    count of clique components against (p^3 - p)(p^3 - p^2) / 3."""
    deg = np.sort(built.degrees())
    ref = np.sort(brute_gamma_degrees(p))
    comps = built.components()
    cliques = sum(1 for c in comps if c.is_clique)
    expected = (p**3 - p) * (p**3 - p**2) // 3
    details = {"vertices": int(deg.size), "components": census(comps), "expected_cliques": expected}
    if deg.shape != ref.shape or not np.array_equal(deg, ref):
        k = int(np.nonzero(deg != ref)[0][0]) if deg.shape == ref.shape else 0
        return Verdict(False, f"degree sequences differ (first at rank {k}; sizes {deg.size} vs {ref.size})", details)
    if cliques != expected or len(comps) != expected + 1:
        return Verdict(False, f"{cliques} clique components among {len(comps)}, expected {expected} plus one", details)
    return Verdict(True, f"degree sequence and census agree ({deg.size} vertices)", details)
