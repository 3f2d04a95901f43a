"""Named invariant and theorem checks, run per configuration by the sweeps.

Each check returns an :class:`Outcome` with status ``passed``, ``failed`` or
``not_applicable``; ``tag`` optionally classifies the configuration (which
shape or which example matched) and is tallied by the sweep.
"""
from __future__ import annotations

import itertools
import zlib
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .config import DistanceConfiguration
from .isometry import (_least_ordering, is_closed, m_set, m_set_by_definition, profile,
                       triangle_types)
from .structure import (as_matching, classify_a3, classify_a3_eq_2, match_cor40,
                        verify_thm_a1, verify_thm_a2, verify_thm_a4)


@dataclass
class Outcome:
    status: str
    tag: str | None = None
    details: dict = field(default_factory=dict)


PASS, FAIL, NA = "passed", "failed", "not_applicable"


def _ok(cond: bool, tag=None, **details) -> Outcome:
    return Outcome(PASS if cond else FAIL, tag, details if not cond else {})


class Analysis:
    """Lazily computed data shared by the checks of one configuration."""

    def __init__(self, config: DistanceConfiguration):
        self.config = config

    @cached_property
    def keys(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        n, mat = self.config.n, self.config.mat
        return {s: _least_ordering(mat, s)
                for k in range(1, n + 1) for s in itertools.combinations(range(n), k)}

    @cached_property
    def seq(self) -> tuple[int, ...]:
        buckets = [set() for _ in range(self.config.n + 1)]
        for s, key in self.keys.items():
            buckets[len(s)].add(key)
        return tuple(len(b) for b in buckets[1:])

    @cached_property
    def triangles(self):
        return triangle_types(self.config)

    @cached_property
    def rng(self) -> np.random.Generator:
        seed = zlib.crc32(bytes(c + 1 for c in self.config.edge_vector()) + bytes([self.config.n]))
        return np.random.default_rng(seed)

    def m(self, k: int) -> frozenset[int]:
        return m_set(self.config, k)


# --------------------------------------------------------------------------
# lemma checks


def check_lem_st(an: Analysis) -> Outcome:
    cfg = an.config
    n = cfg.n
    # (iii) exhaustively: isometric subsets have equal v(S, S)
    seen: dict = {}
    for s, key in an.keys.items():
        v = profile(cfg, s, s)
        if seen.setdefault((len(s), key), v) != v:
            return Outcome(FAIL, details={"part": "iii", "subset": list(s)})
    # (i), (ii) on sampled subsets
    rng = an.rng
    for _ in range(20):
        lab = rng.integers(0, 3, size=n)      # 0: S, 1: T, 2: neither
        S = [x for x in range(n) if lab[x] == 0]
        T = [x for x in range(n) if lab[x] == 1]
        U = [x for x in range(n) if rng.random() < 0.5]
        if profile(cfg, S, U) != profile(cfg, U, S):
            return Outcome(FAIL, details={"part": "i", "S": S, "T": U})
        if profile(cfg, S + T, U) != profile(cfg, S, U) + profile(cfg, T, U):
            return Outcome(FAIL, details={"part": "ii", "S": S, "T": T, "U": U})
    return Outcome(PASS)


def check_lem_ss(an: Analysis) -> Outcome:
    cfg = an.config
    n, seq = cfg.n, an.seq
    everything = range(n)
    selfprof: list[set] = [set() for _ in range(n + 1)]
    for s in an.keys:
        selfprof[len(s)].add(profile(cfg, s, s))
    for k in range(1, n + 1):
        if len(selfprof[k]) > seq[k - 1]:
            return Outcome(FAIL, details={"part": "i", "k": k})
    for k in range(2, n + 1):
        for s in itertools.combinations(everything, k - 1):
            vs = {profile(cfg, [x], s) for x in everything if x not in s}
            if len(vs) > seq[k - 1]:
                return Outcome(FAIL, details={"part": "ii", "k": k, "S": list(s)})
    for s in an.keys:
        rest = [x for x in everything if x not in s]
        total = profile(cfg, rest, s)
        per = [profile(cfg, rest, [y]) for y in s]
        for a in range(cfg.num_colors):
            if not any(p[a] * len(s) >= total[a] for p in per):
                return Outcome(FAIL, details={"part": "iii", "S": list(s), "color": cfg.colors[a]})
    return Outcome(PASS)


def check_lem_mk(an: Analysis) -> Outcome:
    cfg = an.config
    n = cfg.n
    chain = []
    for k in range(1, n + 1):
        a, b = an.m(k), m_set_by_definition(cfg, k)
        if a != b:
            return Outcome(FAIL, details={"k": k, "degree_form": sorted(a), "definition": sorted(b)})
        chain.append(a)
    ok = (chain[0] == frozenset(range(cfg.num_colors)) and not chain[-1]
          and all(chain[i + 1] <= chain[i] for i in range(n - 1)))
    return _ok(ok, chain=[sorted(c) for c in chain])


def check_lem_major(an: Analysis) -> Outcome:
    bad = [k for k in range(2, an.config.n + 1) if len(an.m(k - 1)) > an.seq[k - 1]]
    return _ok(not bad, k=bad)


def _forest_edges(edges, pts) -> int:
    parent = {x: x for x in pts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    count = 0
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            count += 1
    return count


def check_lem_bound(an: Analysis) -> Outcome:
    cfg = an.config
    n = cfg.n
    ks = [k for k in range(2, n + 1) if k * k - k <= n]
    if not ks:
        return Outcome(NA)
    for k in ks:
        outside = [g for g in range(cfg.num_colors) if g not in an.m(k - 1)]
        for g in outside:
            for s in itertools.combinations(range(n), k):
                es = [(x, y) for x, y in itertools.combinations(s, 2) if cfg.mat[x][y] == g]
                f = _forest_edges(es, s)
                if f > an.seq[k - 1] - 1:
                    return Outcome(FAIL, details={"k": k, "color": cfg.colors[g], "S": list(s),
                                                  "forest_edges": f, "a_k": an.seq[k - 1]})
    return Outcome(PASS, tag=f"k<={max(ks)}")


def _preserves(mat, s, perm) -> bool:
    img = dict(zip(s, perm))
    return all(mat[x][y] == mat[img[x]][img[y]] for x, y in itertools.combinations(s, 2))


def check_lem_max(an: Analysis) -> Outcome:
    """Transpositions of the movable points generate every allowed permutation,
    so testing them is exhaustive; one random allowed permutation per case is
    also tested directly."""
    cfg = an.config
    mat, rng = cfg.mat, an.rng
    for s in an.keys:
        k = len(s)
        if k < 2:
            continue
        for a in range(cfg.num_colors):
            movable = [x for x in s if sum(mat[x][y] == a for y in s if y != x) >= k - 1]
            if len(movable) < 2:
                continue
            for x, y in itertools.combinations(movable, 2):
                perm = [y if z == x else x if z == y else z for z in s]
                if not _preserves(mat, s, perm):
                    return Outcome(FAIL, details={"S": list(s), "color": cfg.colors[a], "swap": [x, y]})
            shuffled = list(rng.permutation(movable))
            img = dict(zip(movable, shuffled))
            if not _preserves(mat, s, [img.get(z, z) for z in s]):
                return Outcome(FAIL, details={"S": list(s), "color": cfg.colors[a]})
    return Outcome(PASS)


def check_lem_closed(an: Analysis) -> Outcome:
    cfg = an.config
    for r in range(1, cfg.num_colors + 1):
        for gamma in itertools.combinations(range(cfg.num_colors), r):
            try:
                is_closed(cfg, gamma)
            except AssertionError:
                return Outcome(FAIL, details={"gamma": [cfg.colors[g] for g in gamma]})
    return Outcome(PASS)


def check_remark(an: Analysis) -> Outcome:
    cfg = an.config
    m2 = an.m(2) if cfg.n >= 2 else frozenset()
    for a in range(cfg.num_colors):
        edges = cfg.edges(a)
        if (a not in m2) != (as_matching(cfg.n, edges) is not None):
            return Outcome(FAIL, details={"part": "matching", "color": cfg.colors[a]})
        adj = cfg.adjacency(a)
        has_triangle = any(adj[x] & adj[y] for x, y in edges)
        if ((a, a, a) in an.triangles) != has_triangle:
            return Outcome(FAIL, details={"part": "triangle", "color": cfg.colors[a]})
    return Outcome(PASS)


# --------------------------------------------------------------------------
# theorem checks


def _from_report(rep, tag=None) -> Outcome:
    if not rep.applicable:
        return Outcome(NA)
    return Outcome(PASS if rep.holds else FAIL, tag if rep.holds else None,
                   {} if rep.holds else rep.witness)


def check_thm_a1(an):
    return _from_report(verify_thm_a1(an.config, an.seq))


def check_thm_a2(an):
    rep = verify_thm_a2(an.config)
    found = rep.witness.get("class")
    return _from_report(rep, found["shape"] if found else None)


def check_thm_3(an):
    return _from_report(classify_a3(an.config, an.seq), f"a2={an.seq[1]},a3={an.seq[2]}"
                        if an.config.n >= 5 else None)


def check_thm_25(an):
    rep = classify_a3_eq_2(an.config, an.seq)
    tag = None
    if rep.applicable and rep.holds:
        tag = rep.witness["shape"] + ("(complement)" if rep.witness["complement"] else "")
    return _from_report(rep, tag)


def check_cor_40(an):
    cfg = an.config
    if cfg.n < 5 or not (an.seq[1] == 3 and an.seq[2] == 3):
        return Outcome(NA)
    m = match_cor40(cfg, an.triangles)
    if m is None:
        return Outcome(FAIL, details={"A3": sorted(an.triangles)})
    return Outcome(PASS, f"shape{m[0]}")


def check_thm_a4(an):
    rep = verify_thm_a4(an.config, an.seq)
    return _from_report(rep, rep.witness.get("example") if rep.applicable else None)


CHECKS = {
    "lem:ST": check_lem_st,
    "lem:SS": check_lem_ss,
    "lem:mk": check_lem_mk,
    "lem:major": check_lem_major,
    "lem:bound": check_lem_bound,
    "lem:max": check_lem_max,
    "lem:closed": check_lem_closed,
    "remark": check_remark,
    "thm:a1": check_thm_a1,
    "thm:a2": check_thm_a2,
    "thm:3": check_thm_3,
    "thm:25": check_thm_25,
    "cor:40": check_cor_40,
    "thm:a4": check_thm_a4,
}

LEMMA_CHECKS = ("lem:ST", "lem:SS", "lem:mk", "lem:major", "lem:bound", "lem:max",
                "lem:closed", "remark")
THEOREM_CHECKS = ("thm:a1", "thm:a2", "thm:3", "thm:25", "cor:40", "thm:a4")


def run_checks(config: DistanceConfiguration, checks) -> dict[str, Outcome]:
    an = Analysis(config)
    return {name: CHECKS[name](an) for name in checks}
