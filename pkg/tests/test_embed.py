import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isoseq import (ConfigError, PointSet, construct_family, coordinates, embeddability, f_table,
                    from_points, generate_embedding, gram, ns_bound, realize, search_min_dim,
                    self_check)
from isoseq.embed import KINDS, EmbeddingKind, gram_matrix

from oracles import anchored_rank, pair_distances


def square_d2(A, B):
    # squared diagonal A on {0,1},{2,3}, squared side B elsewhere
    D = np.full((4, 4), float(B))
    D[0, 1] = D[1, 0] = D[2, 3] = D[3, 2] = A
    np.fill_diagonal(D, 0)
    return D


# ------------------------------------------------------------------- Gram


@pytest.mark.parametrize("A, B", [(2, 1), (3, 1), (1.5, 1), (0.5, 2)])
def test_square_spectrum(A, B):
    ev = np.sort(gram(square_d2(A, B)).eigenvalues)
    assert np.allclose(ev, np.sort([0, A, A, 2 * B - A]))


def test_square_examples():
    flat = embeddability(square_d2(2, 1))
    assert flat.is_euclidean and flat.m_X == 2
    bad = embeddability(square_d2(3, 1))
    assert not bad.is_euclidean and bad.m_X is None and bad.negative_mass == pytest.approx(-1)
    tet = embeddability(square_d2(1.5, 1))
    assert tet.is_euclidean and tet.m_X == 3


def test_single_point():
    rep = embeddability(np.zeros((1, 1)))
    assert rep.is_euclidean and rep.m_X == 0 and rep.eigenvalues == (0.0,)


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_simplex_multiplicity(n):
    D = np.ones((n, n)) - np.eye(n)
    ev = gram(D).eigenvalues
    assert np.allclose(ev[0], 0) and np.allclose(ev[1:], 1)
    assert embeddability(D).m_X == n - 1


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(2, 8))
def test_gram_identities(seed, n):
    rng = np.random.default_rng(seed)
    D = rng.random((n, n)) * 3
    D = (D + D.T) / 2
    np.fill_diagonal(D, 0)
    G = gram_matrix(D)
    assert np.allclose(G @ np.ones(n), 0, atol=1e-10)
    assert np.allclose(G, G.T)
    assert np.trace(G) == pytest.approx(D.sum() / n)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(2, 7), st.floats(0.01, 100))
def test_scaling_invariance(seed, n, lam):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, int(rng.integers(1, 5))))
    D = PointSet.of(X).squared_distances()
    a, b = embeddability(D), embeddability(lam * D)
    assert a.is_euclidean == b.is_euclidean and a.m_X == b.m_X


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(2, 8), st.integers(1, 5))
def test_rank_matches_anchored_oracle(seed, n, d):
    rng = np.random.default_rng(seed)
    X = rng.integers(-3, 4, size=(n, d)).astype(float)
    D = PointSet.of(X).squared_distances()
    psd, rank = anchored_rank(D)
    rep = embeddability(D)
    assert rep.is_euclidean == psd and rep.m_X == rank
    assert rank == np.linalg.matrix_rank(X - X[0])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(4, 7))
def test_nonmetric_verdict_matches_oracle(seed, n):
    rng = np.random.default_rng(seed)
    D = rng.random((n, n)) * 2
    D = (D + D.T) / 2
    np.fill_diagonal(D, 0)
    psd, _ = anchored_rank(D)
    assert embeddability(D).is_euclidean == psd


def test_bad_tolerance():
    with pytest.raises(ConfigError):
        embeddability(square_d2(2, 1), rtol=0)


# ------------------------------------------------------------ coordinates


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.integers(2, 8), st.integers(1, 4))
def test_coordinates_roundtrip(seed, n, d):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, d))
    Y = coordinates(PointSet.of(X))
    assert Y.dim == np.linalg.matrix_rank(X - X[0], tol=1e-9)
    assert np.max(np.abs(pair_distances(X) - pair_distances(Y.coords))) <= 1e-8


def test_coordinates_reject_non_euclidean():
    with pytest.raises(ConfigError, match="not Euclidean"):
        coordinates(square_d2(3, 1))


def test_coordinates_of_realization(square):
    real = realize(square, {"a": math.sqrt(2), "b": 1})
    Y = coordinates(real)
    assert Y.dim == 2
    assert from_points(Y).config.same_partition(square)


# ------------------------------------------------------------- generators


GOOD = [
    ("simplex_i", dict(n=5)), ("simplex_i", dict(n=7)),
    ("bipartite_iia", dict(n=6, m=3)), ("bipartite_iia", dict(n=7, m=2)),
    ("oneedge_iib", dict(n=6)), ("oneedge_iib", dict(n=8)),
    ("matchingcomp_iic", dict(n=8, m=3)), ("matchingcomp_iic", dict(n=6, m=3)),
    ("pentagon_iid", {}),
    ("crosslike_iiib", dict(m=3)), ("crosslike_iiib", dict(m=4)), ("crosslike_iiib", dict(m=5)),
    ("cp_iiic", dict(p=2, q=1, t=0)), ("cp_iiic", dict(p=2, q=1, t=math.sqrt(2 - 1.44))),
    ("example4_iiid", dict(n=5)), ("example4_iiid", dict(n=6)), ("example4_iiid", dict(n=8)),
    ("circle_Cm", dict(m=6)), ("circle_Cm", dict(m=7)),
    ("half_cube5", {}), ("johnson_J52", {}),
]


@pytest.mark.parametrize("kind, params", GOOD)
def test_generator_self_check(kind, params):
    chk = self_check(kind, **params)
    assert chk.ok, chk.discrepancy
    assert chk.discrepancy is None


def test_bipartite_ns_bound():
    chk = self_check("bipartite_iia", n=6, m=3)
    assert chk.rank == chk.ns == 4


def test_example4_ns_bound():
    chk = self_check("example4_iiid", n=6)
    assert chk.rank == chk.ns == 4


def test_oneedge_literal_height_differs():
    chk = self_check("oneedge_iib", n=6, literal=True)
    assert not chk.match and chk.observed_colors == 3
    assert "[1.2, 2.0, 3.2]" in chk.discrepancy


def test_example1_literal_collapses():
    chk = self_check("example1_iiia")
    assert not chk.match and chk.observed_colors == 2


def test_example1_lifted_rank_five():
    chk = self_check("example1_iiia", lift=1)
    assert chk.match and chk.rank == 5 and chk.ns == 4
    assert not chk.ok and "claimed dimension 4" in chk.discrepancy


def test_cp_printed_t_reported():
    chk = self_check("cp_iiic", p=2, q=1)
    assert not chk.match
    assert "sqrt(2 - c^2)" in chk.discrepancy


def test_generator_all_kinds_build():
    defaults = {"simplex_i": dict(n=4), "bipartite_iia": dict(n=5, m=2), "oneedge_iib": dict(n=5),
                "matchingcomp_iic": dict(n=6, m=2), "crosslike_iiib": dict(m=3),
                "cp_iiic": dict(p=2, q=1), "example4_iiid": dict(n=5), "circle_Cm": dict(m=5)}
    for k in KINDS:
        pts = generate_embedding(k, **defaults.get(k, {}))
        assert pts.n >= 4


def test_generator_errors():
    with pytest.raises(ConfigError):
        EmbeddingKind("nope")
    with pytest.raises(ConfigError):
        generate_embedding("example4_iiid", n=4)
    with pytest.raises(ConfigError):
        generate_embedding("crosslike_iiib", m=2)
    with pytest.raises(ConfigError):
        generate_embedding("simplex_i")


def test_ns_bound_errors():
    real = from_points(generate_embedding("bipartite_iia", n=6, m=3))
    with pytest.raises(ConfigError, match="not constant"):
        ns_bound(real, [0, 1, 3], [2, 4, 5])
    with pytest.raises(ConfigError, match="cover"):
        ns_bound(real, [0, 1], [3, 4])


# ---------------------------------------------------------------- search


def test_search_square(square):
    res = search_min_dim(square)
    assert res.report.m_X == 2
    assert res.values[0] == 1 and res.values[1] == pytest.approx(math.sqrt(0.5), abs=1e-9)


def test_search_pentagon(pentagon):
    res = search_min_dim(pentagon)
    assert res.report.m_X == 2
    assert sorted(res.values)[0] == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-9)


def test_search_complete_and_examples():
    assert search_min_dim(construct_family("complete", n=4)).report.m_X == 3
    assert search_min_dim(construct_family("example4", n=5)).report.m_X == 3
    assert search_min_dim(construct_family("example1")).report.m_X == 5


def test_search_deterministic(pentagon):
    a, b = search_min_dim(pentagon), search_min_dim(pentagon)
    assert a.values == b.values and a.boundary == b.boundary


def test_search_limits():
    with pytest.raises(ConfigError):
        search_min_dim(construct_family("discrete", n=4))
    with pytest.raises(ConfigError):
        search_min_dim(construct_family("pentagon"), grid_resolution=4)


# ---------------------------------------------------------------- F table


@pytest.mark.parametrize("m, t, size, rank", [
    (2, 2, 5, 2), (3, 2, 6, 3), (4, 2, 8, 4),
    (2, 3, 6, 2), (3, 3, 8, 3), (4, 3, 10, 4), (5, 3, 16, 5),
])
def test_f_table(m, t, size, rank):
    e = f_table(m, t)
    assert e.ok and e.size == e.claimed == size and e.a_k == t and e.rank == rank


def test_f_table_out_of_range():
    with pytest.raises(ConfigError):
        f_table(6, 3)
    with pytest.raises(ConfigError):
        f_table(1, 2)
