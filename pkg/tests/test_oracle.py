import itertools

import numpy as np
import pytest

from ccg.classify import TYPES, table1
from ccg.gamma import blow_up
from ccg.lambda_graph import LambdaGraph, build_lambda
from ccg.matrix import codes_to_matrices
from ccg.oracle import (
    brute_lambda,
    commuting_pairs,
    compare_gamma_degrees,
    compare_lambda,
    m2_star_check,
)


def _drop_edge(g: LambdaGraph, block, row=0) -> LambdaGraph:
    edges = dict(g.edges)
    edges[block] = np.delete(edges[block], row, axis=0)
    return LambdaGraph(g.p, g.sizes, g.labels, edges, delta=g.delta)


def test_brute_lambda_p2(brute2):
    assert brute2.n_vertices == 191


def test_brute_lambda_p3_counts(brute3):
    stats = table1(3)
    assert brute3.sizes == {t: stats[t].vertex_count for t in TYPES}


@pytest.mark.parametrize("p", [2, 3])
def test_compare_lambda_match(p, request):
    verdict = compare_lambda(build_lambda(p), request.getfixturevalue(f"brute{p}"))
    assert verdict.match, verdict.message
    assert np.unique(verdict.mapping).size == verdict.mapping.size


def test_dropped_f_edge_names_the_f_vertex(brute2):
    syn = build_lambda(2)
    bad = _drop_edge(syn, ("B", "F"))
    verdict = compare_lambda(bad, brute2)
    assert not verdict.match
    f0 = syn.label_str("F", 0)
    assert "F vertex" in verdict.message and f0 in verdict.message


def test_dropped_bb_edge_detected(brute3):
    verdict = compare_lambda(_drop_edge(build_lambda(3), ("B", "B"), 5), brute3)
    assert not verdict.match
    assert "missing from" in verdict.message


def test_cardinality_mismatch_reported(brute2):
    syn = build_lambda(2)
    sizes = dict(syn.sizes)
    sizes["G"] -= 1
    edges = dict(syn.edges)
    edges["A", "G"] = edges["A", "G"][:-1]
    bad = LambdaGraph(2, sizes, syn.labels, edges, delta=syn.delta)
    verdict = compare_lambda(bad, brute2)
    assert not verdict.match and "type G" in verdict.message


def test_refuses_large_p():
    with pytest.raises(ValueError, match="refuses"):
        brute_lambda(7)


@pytest.mark.parametrize("p,leaves", [(2, 7), (3, 13), (5, 31)])
def test_m2_star(p, leaves):
    verdict = m2_star_check(p)
    assert verdict.match, verdict.message
    assert verdict.details["leaves"] == leaves


def test_compression_adjacency_well_defined_p2(index2):
    p = 2
    mats = codes_to_matrices(np.arange(p**9), p)
    flat = mats.reshape(-1, 3, 3)
    prod = np.einsum("aij,bjk->abik", flat, flat) % p
    comm = (prod == prod.transpose(1, 0, 2, 3)).all(axis=(2, 3))
    key = index2.key_of
    k = len(index2.keys)
    # every pair of keys must be all-commuting or all-non-commuting
    hits = np.zeros((k, k), dtype=np.int64)
    np.add.at(hits, (key[:, None].repeat(p**9, 1), key[None, :].repeat(p**9, 0)), comm)
    sizes = np.array([len(g) for g in index2.generators])
    total = sizes[:, None] * sizes[None, :]
    assert np.all((hits == 0) | (hits == total))


@pytest.mark.parametrize("threads", [1, 3])
def test_commuting_pairs_threads(threads):
    p = 3
    rng = np.random.default_rng(1)
    mats = codes_to_matrices(rng.integers(0, p**9, 300), p)
    got = commuting_pairs(mats, p, threads, chunk=64)
    ref = {(a, b) for a, b in itertools.combinations(range(300), 2) if np.array_equal(mats[a] @ mats[b] % p, mats[b] @ mats[a] % p)}
    assert set(map(tuple, got.tolist())) == ref


def test_lambda_oracle_p5():
    verdict = compare_lambda(build_lambda(5), brute_lambda(5))
    assert verdict.match, verdict.message


def test_gamma_degrees_p5():
    verdict = compare_gamma_degrees(blow_up(build_lambda(5)), 5)
    assert verdict.match, verdict.message
    assert verdict.details["components"][0] == {"size": 120, "is_clique": True, "count": 4000}
