import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isoseq import (PointSet, classify_a3, classify_a3_eq_2, construct_family, count_classes,
                    from_points, make_config, recognize_shape, verify_thm_a1, verify_thm_a2,
                    verify_thm_a4)
from isoseq.structure import PRIORITY, ShapeVerdict, thm_a2_window, validate_verdict


def graph_config(n, edges):
    es = {tuple(sorted(e)) for e in edges}
    return make_config(n, [(i, j, "e" if (i, j) in es else "n") for i, j in itertools.combinations(range(n), 2)])


# ------------------------------------------------------------------- shapes


def test_shape_pentagon(pentagon):
    v = recognize_shape(pentagon, "alpha")
    assert v.shape == "pentagon" and validate_verdict(pentagon, "alpha", v)


def test_shape_star():
    cfg = construct_family("star", n=6)
    v = recognize_shape(cfg, "alpha")
    assert v.shape == "star" and v.witness["center"] == 0


def test_shape_matching_example3():
    cfg = construct_family("example3", p=2, q=1)
    v = recognize_shape(cfg, "beta")
    assert v.shape == "matching" and v.witness["size"] == 2


def test_shape_priorities():
    assert recognize_shape(construct_family("complete_bipartite", m=3, k=3), "alpha").shape == "complete_bipartite"
    assert recognize_shape(construct_family("matching_complement", n=6, m=3), "alpha").shape == "complement_of_matching"
    assert recognize_shape(construct_family("kn_minus_k2", n=6), "alpha").shape == "kn_minus_k2"
    assert recognize_shape(construct_family("example2", y=3, z=2, m=2), "alpha").shape == "union_of_cliques"
    # a single edge on 2 points is a star first
    assert recognize_shape(make_config(2, [(0, 1, "a")]), "a").shape == "star"
    path = graph_config(5, [(0, 1), (1, 2), (2, 3)])
    assert recognize_shape(path, "e").shape == "other"


def test_priority_order_documented():
    assert PRIORITY[0] == "pentagon" and PRIORITY[-1] == "other"


@settings(max_examples=80, deadline=None)
@given(st.integers(4, 7), st.integers(0, 2**31 - 1))
def test_witnesses_revalidate(n, seed):
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    edges = [p for p in pairs if rng.random() < 0.5]
    if not edges or len(edges) == len(pairs):
        return
    cfg = graph_config(n, edges)
    for c in cfg.colors:
        v = recognize_shape(cfg, c)
        assert validate_verdict(cfg, c, v)


def test_bogus_witness_rejected():
    cfg = construct_family("complete_bipartite", m=3, k=3)
    assert not validate_verdict(cfg, "alpha", ShapeVerdict("complete_bipartite", {"parts": [[0, 1], [2, 3, 4, 5]]}))
    assert not validate_verdict(cfg, "alpha", ShapeVerdict("star", {"center": 0}))


# ------------------------------------------------------------------ thm:a1


def test_a1_complete():
    rep = verify_thm_a1(construct_family("complete", n=5))
    assert rep.applicable and rep.holds


def test_a1_square(square):
    rep = verify_thm_a1(square)
    assert not rep.applicable and rep.holds
    assert rep.to_json()["holds"] == "n/a"


# ------------------------------------------------------------------ thm:a2


def test_a2_window():
    assert thm_a2_window(11) == []
    assert thm_a2_window(12) == [4]
    assert thm_a2_window(20) == [4, 5]


def test_a2_kn_minus_k2():
    cfg = construct_family("kn_minus_k2", n=12)
    assert count_classes(cfg, 4) == 2
    rep = verify_thm_a2(cfg)
    assert rep.applicable and rep.holds
    assert rep.witness["class"]["shape"] == "kn_minus_k2"
    assert rep.witness["class"]["missing"] == (0, 1)


def test_a2_star():
    cfg = construct_family("star", n=12)
    assert count_classes(cfg, 4) == 2
    rep = verify_thm_a2(cfg)
    assert rep.applicable and rep.holds and rep.witness["class"]["shape"] == "star"


def test_a2_small_not_applicable(square):
    assert not verify_thm_a2(square).applicable


# ----------------------------------------------------------- thm:3, cor:40


def test_classify_example2():
    rep = classify_a3(construct_family("example2", y=3, z=3, m=3))
    assert rep.applicable and rep.holds and rep.witness["cor40"]["shape"] == 2


def test_classify_example4():
    rep = classify_a3(construct_family("example4", n=6))
    assert rep.holds and rep.witness["cor40"]["shape"] == 4
    assert rep.witness["cor40"]["colors"] == {"alpha": "alpha", "beta": "beta", "gamma": "gamma"}


def test_classify_examples_1_and_3():
    assert classify_a3(construct_family("example1")).witness["cor40"]["shape"] == 1
    assert classify_a3(construct_family("example3", p=2, q=1)).witness["cor40"]["shape"] == 3


def test_classify_pentagon(pentagon):
    rep = classify_a3(pentagon)
    assert rep.holds and rep.witness == {"a2": 2, "a3": 2}


def test_classify_colour_relabel_invariant():
    cfg = construct_family("example2", y=3, z=3, m=2)
    base = classify_a3(cfg).witness["cor40"]["shape"]
    rng = np.random.default_rng(5)
    for _ in range(6):
        names = list(rng.permutation(["p", "q", "r"]))
        other = cfg.rename_colors(dict(zip(cfg.colors, names))).relabel(rng.permutation(6).tolist())
        w = classify_a3(other).witness["cor40"]
        assert w["shape"] == base
        assert w["colors"] == {k: dict(zip(cfg.colors, names))[v]
                               for k, v in classify_a3(cfg).witness["cor40"]["colors"].items()}


# ------------------------------------------------------------------ thm:25


def test_a3_eq_2_k33():
    cfg = construct_family("graph_metric", n=6, edges=[(i, j) for i in range(3) for j in range(3, 6)])
    rep = classify_a3_eq_2(cfg)
    assert rep.holds and rep.witness["shape"] == "complete_bipartite"
    assert rep.witness["sizes"] == [3, 3]


def test_a3_eq_2_pentagon(pentagon):
    rep = classify_a3_eq_2(pentagon)
    assert rep.holds and rep.witness["shape"] == "pentagon"


def test_a3_eq_2_octahedron():
    real = from_points(PointSet.of(np.vstack([np.eye(3), -np.eye(3)])))
    rep = classify_a3_eq_2(real.config)
    assert rep.holds and rep.witness["shape"] == "complement_of_matching"


def test_a3_eq_2_not_applicable():
    assert not classify_a3_eq_2(construct_family("example1")).applicable


# ------------------------------------------------------------------ thm:a4


def test_a4_self_match():
    rep = verify_thm_a4(construct_family("example1"))
    assert rep.holds and rep.witness["example"] == "example1"


def test_a4_relabelled_example3():
    cfg = construct_family("example3", p=2, q=1)
    perm = np.random.default_rng(2).permutation(6).tolist()
    rep = verify_thm_a4(cfg.relabel(perm))
    assert rep.holds and rep.witness["example"] == "example3"


@pytest.mark.parametrize("family, params, label", [
    ("example2", dict(y=3, z=2, m=2), "example2"),
    ("example4", dict(n=7), "example4"),
    ("example1", dict(n=5), "example1"),
])
def test_a4_families(family, params, label):
    rep = verify_thm_a4(construct_family(family, **params))
    assert rep.holds and rep.witness["example"] == label


# ------------------------------------------------------ triangle-free remark


@pytest.mark.parametrize("n, edges", [
    (6, [(i, i + 1) for i in range(5)]),                                  # path
    (7, [(i, (i + 1) % 7) for i in range(7)]),                            # 7-cycle
    (6, [(i, (i + 1) % 6) for i in range(6)]),                            # hexagon
    (7, [(i, j) for i in range(3) for j in range(3, 7)]),                 # K_{3,4}
    (8, [(0, 4), (0, 5), (1, 5), (2, 6), (3, 7), (1, 6)]),                # bipartite forest
])
def test_triangle_free_graphs(n, edges):
    cfg = graph_config(n, edges)
    assert cfg.num_colors == 2 and count_classes(cfg, 3) <= 3
