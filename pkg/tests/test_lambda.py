import numpy as np
import pytest

from ccg.classify import TYPES, table1, table2
from ccg.delta import build_delta
from ccg.lambda_graph import TableViolation, build_lambda, count_report, enumerate_b_triangles, triangles


@pytest.fixture(scope="module")
def lam3():
    return build_lambda(3)


def test_b_triangles_examples():
    assert len(enumerate_b_triangles(build_delta(2))) == 0
    assert len(enumerate_b_triangles(build_delta(3))) == 234


def test_b_triangles_exist_at_p2_but_are_skipped():
    assert len(enumerate_b_triangles(build_delta(2), include_p2=True)) == 28


@pytest.mark.parametrize("p", [3, 5, 7])
def test_triangle_count_equals_c_vertices(p):
    tri = enumerate_b_triangles(build_delta(p))
    assert len(tri) == table1(p)["C"].vertex_count
    assert np.all(np.diff(tri, axis=1) > 0)
    # lexicographic order, no repeats
    assert np.unique(tri, axis=0).shape == tri.shape
    assert np.array_equal(np.unique(tri, axis=0), tri)


def test_triangles_brute_force():
    rng = np.random.default_rng(7)
    n = 30
    adj = np.triu(rng.random((n, n)) < 0.3, 1)
    edges = np.argwhere(adj)
    full = adj | adj.T
    ref = {(a, b, c) for a in range(n) for b in range(a + 1, n) for c in range(b + 1, n) if full[a, b] and full[a, c] and full[b, c]}
    assert set(map(tuple, triangles(edges, n).tolist())) == ref


def test_build_examples(lam3):
    assert build_lambda(2).n_vertices == 191
    assert lam3.n_vertices == 1471
    assert (lam3.sizes["B"], lam3.sizes["E"], lam3.sizes["F"]) == (117, 52, 468)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_counts_match_table1(p):
    g = build_lambda(p)
    stats = table1(p)
    assert g.sizes == {t: stats[t].vertex_count for t in TYPES}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_profiles_match_table2(p):
    _, N = count_report(build_lambda(p))
    assert N == table2(p)


def test_count_report_examples(lam3):
    assert count_report(build_lambda(2))[1]["E", "B"] == 3
    assert count_report(lam3)[1]["B", "B"] == 13


def test_only_loops_among_attached_types(lam3):
    for (x, y), e in lam3.edges.items():
        if x in "CDFGH" and y in "CDFGH":
            assert len(e) == 0, (x, y)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_be_edges_equal_f_vertices(p):
    g = build_lambda(p)
    assert len(g.edges["B", "E"]) == (p * p + p + 1) * p * p * (p + 1) == g.sizes["F"]


def test_deterministic():
    a, b = build_lambda(3), build_lambda(3)
    assert a.sizes == b.sizes
    for k in a.edges:
        assert np.array_equal(a.edges[k], b.edges[k])
    assert np.array_equal(a.global_edges(), b.global_edges())


def test_table_violation_reported(lam3):
    lam3_bad = build_lambda(3)
    lam3_bad.edges["B", "H"] = lam3_bad.edges["B", "H"][1:]
    with pytest.raises(TableViolation, match="Table 2 violated"):
        count_report(lam3_bad)


def test_locate_roundtrip(lam3):
    for t in TYPES:
        for i in (0, lam3.sizes[t] - 1):
            if lam3.sizes[t]:
                assert lam3.locate(lam3.global_id(t, i)) == (t, i)
