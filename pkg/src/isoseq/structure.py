"""Shape recognition for colour classes and the classification theorem checks."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .canon import canonical_form, find_isomorphism
from .config import DistanceConfiguration, FamilySpec, construct_family
from .isometry import count_classes, isometric_sequence, triangle_types

# Recognition order; the first shape that fits wins.
PRIORITY = ("pentagon", "star", "complete_bipartite", "complement_of_matching",
            "matching", "union_of_cliques", "kn_minus_k2", "other")


@dataclass(frozen=True)
class ShapeVerdict:
    shape: str
    witness: dict = field(default_factory=dict)


@dataclass
class TheoremReport:
    theorem: str
    applicable: bool
    holds: bool
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "applicable": self.applicable,
                "holds": self.holds if self.applicable else "n/a",
                "witness": self.witness}


def _na(theorem: str, reason: str) -> TheoremReport:
    return TheoremReport(theorem, False, True, {"reason": reason})


# --------------------------------------------------------------------------
# graph predicates on a set of pairs over n vertices


def _adj(n: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _components(adj: list[set[int]]) -> list[list[int]]:
    seen, comps = set(), []
    for s in range(len(adj)):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u] - seen:
                seen.add(w)
                stack.append(w)
        comps.append(sorted(comp))
    return comps


def _complement(n: int, edges) -> list[tuple[int, int]]:
    es = {tuple(sorted(e)) for e in edges}
    return [(i, j) for i, j in itertools.combinations(range(n), 2) if (i, j) not in es]


def as_pentagon(n, edges):
    adj = _adj(n, edges)
    if n != 5 or len(edges) != 5 or any(len(a) != 2 for a in adj) or len(_components(adj)) != 1:
        return None
    cycle, prev = [0], None
    while len(cycle) < 5:
        nxt = min(w for w in adj[cycle[-1]] if w != prev and w not in cycle)
        prev = cycle[-1]
        cycle.append(nxt)
    return {"cycle": cycle}


def as_star(n, edges):
    if len(edges) != n - 1:
        return None
    adj = _adj(n, edges)
    centers = [v for v in range(n) if len(adj[v]) == n - 1]
    return {"center": centers[0]} if centers else None


def as_complete_bipartite(n, edges):
    adj = _adj(n, edges)
    if not edges or len(_components(adj)) != 1:
        return None
    side = {0: 0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in side:
                side[w] = 1 - side[u]
                stack.append(w)
            elif side[w] == side[u]:
                return None
    y = sorted(v for v in range(n) if side[v] == 0)
    z = sorted(v for v in range(n) if side[v] == 1)
    if len(edges) != len(y) * len(z):
        return None
    return {"parts": [y, z], "sizes": sorted([len(y), len(z)])}


def as_matching(n, edges):
    adj = _adj(n, edges)
    if not edges or any(len(a) > 1 for a in adj):
        return None
    return {"edges": sorted(tuple(sorted(e)) for e in edges), "size": len(edges)}


def as_complement_of_matching(n, edges, min_size=1):
    m = as_matching(n, _complement(n, edges))
    if m is None or m["size"] < min_size:
        return None
    return {"missing": m["edges"], "size": m["size"]}


def as_union_of_cliques(n, edges):
    adj = _adj(n, edges)
    comps = _components(adj)
    if any(len(adj[u]) != len(c) - 1 for c in comps for u in c):
        return None
    return {"cliques": comps}


def as_kn_minus_k2(n, edges):
    miss = _complement(n, edges)
    return {"missing": miss[0]} if len(miss) == 1 else None


def recognize_shape(config: DistanceConfiguration, color: int | str) -> ShapeVerdict:
    """First shape in :data:`PRIORITY` that the colour class fits.

    ``complement_of_matching`` is reported for complements of matchings with
    at least two edges, so that the complement of a single edge reaches the
    dedicated ``kn_minus_k2`` tag.
    """
    c = config.color_index(color)
    n, edges = config.n, config.edges(c)
    tests = {
        "pentagon": as_pentagon,
        "star": as_star,
        "complete_bipartite": as_complete_bipartite,
        "complement_of_matching": lambda n, e: as_complement_of_matching(n, e, min_size=2),
        "matching": as_matching,
        "union_of_cliques": as_union_of_cliques,
        "kn_minus_k2": as_kn_minus_k2,
    }
    for shape in PRIORITY[:-1]:
        w = tests[shape](n, edges)
        if w is not None:
            return ShapeVerdict(shape, w)
    return ShapeVerdict("other", {})


def validate_verdict(config: DistanceConfiguration, color: int | str, verdict: ShapeVerdict) -> bool:
    """Re-check a verdict's witness directly against the colour class."""
    c = config.color_index(color)
    n = config.n
    E = {tuple(sorted(e)) for e in config.edges(c)}
    w, s = verdict.witness, verdict.shape
    allpairs = set(itertools.combinations(range(n), 2))
    if s == "pentagon":
        cyc = w["cycle"]
        return n == 5 and sorted(cyc) == list(range(5)) and \
            E == {tuple(sorted((cyc[i], cyc[(i + 1) % 5]))) for i in range(5)}
    if s == "star":
        x = w["center"]
        return E == {tuple(sorted((x, v))) for v in range(n) if v != x}
    if s == "complete_bipartite":
        y, z = w["parts"]
        return bool(y) and bool(z) and sorted(y + z) == list(range(n)) and \
            E == {tuple(sorted((a, b))) for a in y for b in z}
    if s in ("complement_of_matching", "kn_minus_k2"):
        miss = [tuple(w["missing"])] if s == "kn_minus_k2" else [tuple(e) for e in w["missing"]]
        flat = [v for e in miss for v in e]
        return len(flat) == len(set(flat)) and E == allpairs - set(miss)
    if s == "matching":
        es = [tuple(e) for e in w["edges"]]
        flat = [v for e in es for v in e]
        return len(flat) == len(set(flat)) and E == set(es)
    if s == "union_of_cliques":
        cl = w["cliques"]
        if sorted(v for q in cl for v in q) != list(range(n)):
            return False
        return E == {tuple(sorted(p)) for q in cl for p in itertools.combinations(q, 2)}
    return s == "other"


# --------------------------------------------------------------------------
# theorem checks


def verify_thm_a1(config: DistanceConfiguration, seq=None) -> TheoremReport:
    """a_k = 1 for some 2 <= k <= n-2 forces a_2 = 1."""
    n = config.n
    if n < 4:
        return _na("thm:a1", "n < 4: empty k-range")
    seq = seq or isometric_sequence(config)
    ks = [k for k in range(2, n - 1) if seq[k - 1] == 1]
    if not ks:
        return _na("thm:a1", "no k in [2, n-2] with a_k = 1")
    return TheoremReport("thm:a1", True, seq[1] == 1, {"k": ks, "a2": seq[1]})


def thm_a2_window(n: int) -> list[int]:
    top = (1 + math.sqrt(1 + 4 * n)) / 2
    return [k for k in range(4, n + 1) if k <= top + 1e-12]


def verify_thm_a2(config: DistanceConfiguration) -> TheoremReport:
    """a_k = 2 inside the window forces a_2 = 2 and a K_n - K_2 or K_{1,n-1} class."""
    n = config.n
    window = thm_a2_window(n)
    if not window:
        return _na("thm:a2", f"empty k-window for n = {n}")
    hits = [k for k in window if count_classes(config, k) == 2]
    if not hits:
        return _na("thm:a2", f"a_k != 2 for every k in {window}")
    a2 = config.num_colors
    found = None
    if a2 == 2:
        for c in range(a2):
            edges = config.edges(c)
            w = as_kn_minus_k2(n, edges)
            if w is not None:
                found = {"color": config.colors[c], "shape": "kn_minus_k2", **w}
                break
            w = as_star(n, edges)
            if w is not None:
                found = {"color": config.colors[c], "shape": "star", **w}
                break
    return TheoremReport("thm:a2", True, found is not None, {"k": hits, "a2": a2, "class": found})


COR40_SHAPES = {
    1: frozenset({(0, 0, 1), (0, 0, 2), (1, 1, 2)}),
    2: frozenset({(0, 0, 0), (0, 1, 2), (0, 1, 1)}),
    3: frozenset({(0, 0, 0), (0, 0, 1), (0, 0, 2)}),
    4: frozenset({(0, 0, 0), (0, 1, 1), (1, 1, 2)}),
}
SHAPE_TEXT = {1: "aab,aag,bbg", 2: "aaa,abg,bba", 3: "aaa,aab,aag", 4: "aaa,bba,bbg"}


def match_cor40(config: DistanceConfiguration, tri=None):
    """Find a colour ordering under which A_3 is one of the four listed shapes.

    Returns ``(shape_number, {"alpha": token, "beta": token, "gamma": token})``
    or None.  All 3! orderings are tried.
    """
    if config.num_colors != 3:
        return None
    tri = tri if tri is not None else triangle_types(config)
    for order in itertools.permutations(range(3)):
        role = {c: r for r, c in enumerate(order)}
        mapped = frozenset(tuple(sorted(role[x] for x in t)) for t in tri)
        for num, shape in COR40_SHAPES.items():
            if mapped == shape:
                names = dict(zip(("alpha", "beta", "gamma"), (config.colors[c] for c in order)))
                return num, names
    return None


def classify_a3(config: DistanceConfiguration, seq=None) -> TheoremReport:
    """a_3 <= 3 (n >= 5) gives a_2 <= a_3; for a_2 = a_3 = 3 name the A_3 shape."""
    n = config.n
    if n < 5:
        return _na("thm:3", "n < 5")
    seq = seq or isometric_sequence(config)
    a2, a3 = seq[1], seq[2]
    if a3 > 3:
        return _na("thm:3", f"a_3 = {a3} > 3")
    holds = a2 <= a3
    witness: dict = {"a2": a2, "a3": a3}
    if a2 == a3 == 3:
        m = match_cor40(config)
        witness["cor40"] = None if m is None else {"shape": m[0], "text": SHAPE_TEXT[m[0]], "colors": m[1]}
        holds = holds and m is not None
    return TheoremReport("thm:3", True, holds, witness)


def classify_a3_eq_2(config: DistanceConfiguration, seq=None) -> TheoremReport:
    """For a_3 = 2, n >= 5: some colour class (or its complement) is complete
    bipartite, the complement of a matching, or the pentagon."""
    n = config.n
    if n < 5:
        return _na("thm:25", "n < 5")
    a3 = seq[2] if seq else count_classes(config, 3)
    if a3 != 2:
        return _na("thm:25", f"a_3 = {a3} != 2")
    tests = (("complete_bipartite", as_complete_bipartite),
             ("complement_of_matching", as_complement_of_matching),
             ("pentagon", as_pentagon))
    for use_complement in (False, True):
        for c in range(config.num_colors):
            edges = config.edges(c)
            if use_complement:
                edges = _complement(n, edges)
            for shape, test in tests:
                w = test(n, edges)
                if w is not None:
                    return TheoremReport("thm:25", True, True, {
                        "color": config.colors[c], "complement": use_complement,
                        "shape": shape, **w})
    return TheoremReport("thm:25", True, False, {"a3": a3})


# --------------------------------------------------------------------------
# thm:a4: isomorphism onto Examples 1-4


@lru_cache(maxsize=None)
def example_candidates(n: int) -> tuple[tuple[str, dict, DistanceConfiguration], ...]:
    """Every member of Examples 1-4 on n points with three colours, one per isomorphism type."""
    out: list[tuple[str, dict, DistanceConfiguration]] = []
    seen: set = set()

    def add(label, params, cfg):
        if cfg.num_colors != 3:
            return
        key = canonical_form(cfg).code
        if key not in seen:
            seen.add(key)
            out.append((label, params, cfg))

    if 5 <= n <= 8:
        full = construct_family(FamilySpec("example1", {"n": 8}))
        for sub in itertools.combinations(range(8), n):
            add("example1", {"subset": list(sub)}, full.induced(sub))
    for y in range(n - 1, 0, -1):
        z = n - y
        if y < z:
            break
        for m in range(1, z + 1):
            if y * z > m:
                add("example2", {"y": y, "z": z, "m": m},
                    construct_family(FamilySpec("example2", {"y": y, "z": z, "m": m})))
    for p in range(1, n // 2 + 1):
        for q in range(1, p + 1):
            if 2 * (p + q) <= n:
                add("example3", {"p": p, "q": q, "n": n},
                    construct_family(FamilySpec("example3", {"p": p, "q": q, "n": n})))
    if n >= 4:
        add("example4", {"n": n}, construct_family(FamilySpec("example4", {"n": n})))
    return tuple(out)


def verify_thm_a4(config: DistanceConfiguration, seq=None) -> TheoremReport:
    """a_2 = a_3 = 3 and n >= 5: exhibit an isomorphism onto one of Examples 1-4."""
    n = config.n
    if n < 5:
        return _na("thm:a4", "n < 5")
    a2 = config.num_colors
    a3 = seq[2] if seq else count_classes(config, 3)
    if not (a2 == 3 and a3 == 3):
        return _na("thm:a4", f"(a_2, a_3) = ({a2}, {a3}) != (3, 3)")
    code = canonical_form(config).code
    for label, params, cand in example_candidates(n):
        if canonical_form(cand).code != code:
            continue
        vmap, cmap = find_isomorphism(config, cand)
        return TheoremReport("thm:a4", True, True, {
            "example": label, "params": params, "vertex_map": vmap, "color_map": cmap})
    return TheoremReport("thm:a4", True, False, {"a2": a2, "a3": a3})
