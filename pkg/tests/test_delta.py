import itertools

import numpy as np
import pytest

from ccg.delta import PointLinePair, build_delta, build_delta_literal, delta_edge, delta_edge_fast, phi, psi
from ccg.matrix import Mat3, subring_key
from ccg.projective import ProjLine, ProjPoint, build_Tp, plane


def pair(point, line, p=2):
    return PointLinePair(ProjPoint.of(point, p), ProjLine.of(line, p))


E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
X1, X2, X3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)  # x_i = 0 as dual coordinates


def test_delta_edge_examples():
    a = pair(E1, X1)
    assert delta_edge(a, a)
    assert a.kind == "B" and pair(E2, X2).kind == "B"
    assert delta_edge(a, pair(E2, X2))
    assert pair(E1, X3).kind == "E"
    assert delta_edge(pair(E1, X3), pair(E1, X2))
    assert not delta_edge(pair(E1, X1), pair(E1, X2))


@pytest.mark.parametrize("p", [2, 3])
def test_fast_predicate_equals_literal(p):
    d = build_delta(p)
    pairs = [d.pair(v) for v in range(d.n_vertices)]
    for a, b in itertools.product(pairs, repeat=2):
        assert delta_edge(a, b) == delta_edge_fast(a, b)


@pytest.mark.parametrize("p", [2, 3])
def test_vectorized_build_equals_literal(p):
    fast, lit = build_delta(p), build_delta_literal(p)
    assert set(map(tuple, fast.edges.tolist())) == set(map(tuple, lit.edges.tolist()))


def test_build_delta_examples():
    d = build_delta(2)
    assert d.n_vertices == 49
    for v in d.b_vertices:
        assert d.is_e[d.neighbors(v)].sum() == 3
    d = build_delta(3)
    assert d.n_vertices == 169
    for v in d.e_vertices:
        # 2p + 1 kind-E vertices in the closed neighbourhood, so 2p others
        assert d.is_e[d.neighbors(v)].sum() == 6


def test_neighbors_and_adjacent():
    d = build_delta(3)
    for v in (0, 17, 168):
        nb = d.neighbors(v)
        assert np.all(np.diff(nb) > 0)
        assert d.adjacent(v, v)
        for u in nb[:5]:
            assert d.adjacent(v, int(u)) and d.adjacent(int(u), v)
        assert d.index(d.pair(v)) == v


def test_psi_examples():
    assert psi(pair(E1, X1)) == Mat3.unit(1, 1, 2)
    assert psi(pair(E1, X2)) == Mat3.unit(1, 2, 2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_psi_shape(p):
    d = build_delta(p)
    for v in range(0, d.n_vertices, 7):
        a = d.pair(v)
        M = psi(a)
        assert M.rank() == 1
        if a.kind == "B":
            assert M @ M == M
        else:
            assert M @ M == Mat3.zero(p)


def test_phi_examples():
    assert phi(subring_key(Mat3.diag(0, 1, 1, 2))) == pair(E1, X1)
    assert phi(subring_key(Mat3.unit(1, 2, 2))) == pair(E1, X2)


def test_phi_rejects_other_types():
    with pytest.raises(ValueError, match="phi undefined"):
        phi(subring_key(Mat3.identity(3)))
    with pytest.raises(ValueError, match="phi undefined"):
        phi(subring_key(Mat3.diag(0, 1, 2, 3)))


@pytest.mark.parametrize("p", [2, 3])
def test_phi_psi_inverse_bijections(p, request):
    idx = request.getfixturevalue(f"index{p}")
    d = build_delta(p)
    be_keys = [k for k, t in zip(idx.keys, idx.types) if t in ("B", "E")]
    images = {phi(k) for k in be_keys}
    assert len(images) == len(be_keys) == d.n_vertices
    for v in range(d.n_vertices):
        a = d.pair(v)
        assert phi(subring_key(psi(a))) == a
    for k in be_keys:
        assert subring_key(psi(phi(k))) == k


@pytest.mark.parametrize("p", [2, 3])
def test_psi_commutation_matches_delta(p):
    d = build_delta(p)
    mats = np.array([psi(d.pair(v)).rows() for v in range(d.n_vertices)], dtype=np.int64)
    prod = np.einsum("aij,bjk->abik", mats, mats) % p
    comm = (prod == prod.transpose(1, 0, 2, 3)).all(axis=(2, 3))
    adj = np.eye(d.n_vertices, dtype=bool)
    adj[d.edges[:, 0], d.edges[:, 1]] = True
    adj[d.edges[:, 1], d.edges[:, 0]] = True
    assert np.array_equal(comm, adj)


def _two_by_two_graph(M):
    """Adjacency among the entries of a 0/1 incidence matrix by the 2x2
    submatrix rule: entries in a common row or column are adjacent iff both
    are ones; otherwise iff the two remaining corners are both ones."""
    n = M.shape[0]
    N = n * n
    adj = np.zeros((N, N), dtype=bool)
    for (r1, c1), (r2, c2) in itertools.product(itertools.product(range(n), repeat=2), repeat=2):
        u, v = r1 * n + c1, r2 * n + c2
        if u == v:
            adj[u, v] = True
        elif r1 == r2 or c1 == c2:
            adj[u, v] = bool(M[r1, c1] and M[r2, c2])
        else:
            adj[u, v] = bool(M[r1, c2] and M[r2, c1])
    return adj


def test_two_by_two_submatrix_rule_p2():
    p = 2
    d = build_delta(p)
    adj = _two_by_two_graph(plane(p).incidence.astype(np.uint8))
    ref = np.eye(d.n_vertices, dtype=bool)
    ref[d.edges[:, 0], d.edges[:, 1]] = True
    ref[d.edges[:, 1], d.edges[:, 0]] = True
    assert np.array_equal(adj, ref)
    # the same rule on T_2 gives a graph with the same typed degree profile
    T = build_Tp(p)
    adjT = _two_by_two_graph(T)
    ones = T.reshape(-1).astype(bool)
    for kind in (True, False):
        a = sorted(zip(adj[d.is_e == kind].sum(1), adj[d.is_e == kind][:, d.is_e].sum(1)))
        b = sorted(zip(adjT[ones == kind].sum(1), adjT[ones == kind][:, ones].sum(1)))
        assert a == b


def test_two_rows_of_T3_share_exactly_one_column():
    T = build_Tp(3)
    for r1, r2 in itertools.combinations(range(13), 2):
        assert (T[r1] & T[r2]).sum() == 1
