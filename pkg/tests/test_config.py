import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isoseq import (ConfigError, DistanceConfiguration, FamilySpec, PointSet, construct_family,
                    from_points, make_config, realize)
from isoseq.config import FAMILIES, default_values


def test_make_config_smallest():
    cfg = make_config(2, [(0, 1, "a")])
    assert cfg.n == 2 and cfg.colors == ("a",)


def test_make_config_square(square):
    assert square.colors == ("a", "b")
    assert square.edges(0) == [(0, 1), (2, 3)]
    assert len(square.edges(1)) == 4


def test_colors_ordered_by_first_occurrence():
    cfg = make_config(3, [(1, 2, "x"), (0, 2, "y"), (0, 1, "y")])
    # colex order visits (0,1) first
    assert cfg.colors == ("y", "x")


@pytest.mark.parametrize("pairs, msg", [
    ([(0, 1, "a"), (0, 2, "a")], "missing pair"),
    ([(0, 1, "a"), (0, 1, "b"), (0, 2, "a"), (1, 2, "a")], "duplicate pair"),
    ([(0, 1, "a"), (0, 2, "a"), (1, 3, "a")], "out of range"),
    ([(1, 0, "a"), (0, 2, "a"), (1, 2, "a")], "out of range"),
])
def test_make_config_errors(pairs, msg):
    with pytest.raises(ConfigError, match=msg):
        make_config(3, pairs)


def test_empty_colour_rejected():
    with pytest.raises(ConfigError):
        DistanceConfiguration.from_matrix([[-1, 0], [0, -1]], ["a", "b"])


def test_asymmetric_rejected():
    with pytest.raises(ConfigError):
        DistanceConfiguration(2, ("a", "b"), ((-1, 0), (1, -1)))


# ---------------------------------------------------------------- families


def test_pentagon_family():
    cfg = construct_family("pentagon")
    assert cfg.n == 5 and cfg.num_colors == 2
    cyc = cfg.edges(cfg.color_index("alpha"))
    assert sorted(cyc) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]


def test_example3_family():
    cfg = construct_family("example3", p=2, q=1)
    assert cfg.n == 6 and cfg.colors == ("alpha", "beta", "gamma")
    beta, gamma = cfg.edges(1), cfg.edges(2)
    assert len(beta) == 2 and len(gamma) == 1
    ends = [v for e in beta + gamma for v in e]
    assert len(ends) == len(set(ends)) == 6


def test_example3_bounds():
    with pytest.raises(ConfigError):
        construct_family("example3", p=1, q=1)
    with pytest.raises(ConfigError):
        construct_family("example3", p=2, q=3)


def test_example1_range():
    for n in range(5, 9):
        assert construct_family("example1", n=n).n == n
    with pytest.raises(ConfigError):
        construct_family("example1", n=9)


def test_example_colour_classes():
    ex2 = construct_family("example2", y=3, z=3, m=3)
    assert [len(ex2.edges(c)) for c in range(3)] == [6, 6, 3]
    ex4 = construct_family("example4", n=6)
    assert [len(ex4.edges(c)) for c in range(3)] == [6, 8, 1]
    ex1 = construct_family("example1")
    assert [len(ex1.edges(c)) for c in range(3)] == [16, 8, 4]


def test_graph_metric_k33():
    edges = [(i, j) for i in range(3) for j in range(3, 6)]
    cfg = construct_family("graph_metric", n=6, edges=edges)
    assert cfg.colors == ("1", "2")


def test_graph_metric_needs_connected():
    with pytest.raises(ConfigError):
        construct_family("graph_metric", n=4, edges=[(0, 1), (2, 3)])


def test_construct_deterministic():
    for fam, params in [("example1", {}), ("example2", dict(y=3, z=2, m=2)), ("half_cube5", {})]:
        assert construct_family(fam, **params) == construct_family(fam, **params)


SMALL_PARAMS = {
    "complete": dict(n=5), "discrete": dict(n=4), "complete_bipartite": dict(m=2, k=3),
    "star": dict(n=5), "matching_complement": dict(n=6, m=2), "pentagon": {},
    "kn_minus_k2": dict(n=5), "graph_metric": dict(n=4, edges=[(0, 1), (1, 2), (2, 3)]),
    "example1": dict(n=7), "example2": dict(y=3, z=2, m=2), "example3": dict(p=2, q=2),
    "example4": dict(n=6), "cross_polytope": dict(m=3), "cube": dict(d=3), "half_cube5": {},
    "johnson_J52": {},
}


@pytest.mark.parametrize("family", FAMILIES)
def test_default_realization_is_metric(family):
    cfg = construct_family(family, **SMALL_PARAMS[family])
    real = realize(cfg)
    vals = [float(v) for v in real.values]
    assert all(1 < v <= 1.5 for v in vals)
    for x, y, z in itertools.combinations(range(cfg.n), 3):
        a, b, c = real.distance(x, y), real.distance(y, z), real.distance(x, z)
        assert a <= b + c and b <= a + c and c <= a + b


# ------------------------------------------------------------- realizations


def test_realize_square_unit(square):
    real = realize(square, {"a": math.sqrt(2), "b": 1})
    D = real.squared_matrix()
    assert np.allclose(D[0, 1], 2) and np.allclose(D[0, 2], 1)


def test_default_values_formula():
    assert default_values(1) == (Fraction(3, 2),)
    assert default_values(4) == tuple(1 + Fraction(i + 1, 8) for i in range(4))


def test_realize_triangle_violation(square):
    with pytest.raises(ConfigError, match="triangle inequality"):
        realize(square, {"a": 10, "b": 1})


def test_realize_injective(square):
    with pytest.raises(ConfigError, match="injective"):
        realize(square, {"a": 1, "b": 1})


def test_realize_missing_value(square):
    with pytest.raises(ConfigError):
        realize(square, {"a": 1})


def test_realize_exact_boundary():
    # collinear triple: 2 = 1 + 1 exactly is allowed
    cfg = make_config(3, [(0, 1, "a"), (1, 2, "a"), (0, 2, "b")])
    realize(cfg, {"a": 1, "b": 2})


# ------------------------------------------------------------- from_points


def test_from_points_square(square):
    real = from_points(PointSet.of([[0, 0], [1, 1], [1, 0], [0, 1]]))
    assert real.config.num_colors == 2
    assert real.config.same_partition(square)


def test_from_points_octahedron():
    pts = np.vstack([np.eye(3), -np.eye(3)])
    real = from_points(PointSet.of(pts))
    assert real.config.num_colors == 2
    assert np.allclose(sorted(real.values), [math.sqrt(2), 2])


def test_from_points_cube():
    pts = list(itertools.product((0, 1), repeat=3))
    real = from_points(PointSet.of(pts))
    assert np.allclose(real.values, [1, math.sqrt(2), math.sqrt(3)])


def test_from_points_coincident():
    with pytest.raises(ConfigError, match="coincident"):
        from_points(PointSet.of([[0, 0], [1, 0], [0, 0]]))


def test_from_points_single():
    real = from_points(PointSet.of([[1.0, 2.0]]))
    assert real.config.n == 1 and real.config.num_colors == 0


def test_pointset_dim_check():
    with pytest.raises(ConfigError):
        PointSet(3, np.zeros((4, 2)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.floats(0.01, 100))
def test_from_points_scale_equivariant(seed, lam):
    rng = np.random.default_rng(seed)
    X = rng.integers(-2, 3, size=(6, 3)).astype(float)
    if len({tuple(r) for r in X}) < 6:
        return
    a = from_points(PointSet.of(X)).config
    b = from_points(PointSet.of(lam * X)).config
    assert a == b
