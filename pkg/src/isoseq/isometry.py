"""Isometry classes of k-subsets, isometric sequences and profile vectors."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import ConfigError, DistanceConfiguration

MAX_SUBSET = 12


@dataclass(frozen=True, order=True)
class SubsetKey:
    """Least colex-ordered colour sequence over all orderings of a subset.

    Two subsets are isometric (a colour preserving bijection exists) iff
    their keys are equal.
    """
    k: int
    key: tuple[int, ...]


def _least_ordering(mat, pts: Sequence[int]) -> tuple[int, ...]:
    k = len(pts)
    if k < 2:
        return ()
    best: list[int] | None = None
    version = 0
    cur: list[int] = []
    order: list[int] = []
    used = [False] * k
    # twins (same colour to every other point) are swapped by an automorphism
    # fixing the prefix, so one branch per twin class per depth suffices
    twin = list(range(k))
    for a in range(k):
        if twin[a] != a:
            continue
        ra = mat[pts[a]]
        for b in range(a + 1, k):
            rb = mat[pts[b]]
            if twin[b] == b and all(ra[pts[w]] == rb[pts[w]] for w in range(k) if w != a and w != b):
                twin[b] = a

    def rec(depth: int, tied: bool):
        # tied: the current prefix equals the prefix of ``best``
        nonlocal best, version
        if depth == k:
            if best is None or not tied:
                best = cur.copy()
                version += 1
            return
        start = len(cur)
        tried = set()
        for t in range(k):
            if used[t] or twin[t] in tried:
                continue
            tried.add(twin[t])
            v = pts[t]
            row = [mat[u][v] for u in order]
            still_tied = tied
            if best is not None and tied:
                ref = best[start:start + depth]
                if row > ref:
                    continue
                still_tied = row == ref
            used[t] = True
            order.append(v)
            cur.extend(row)
            before = version
            rec(depth + 1, still_tied)
            if version != before:
                tied = True  # best now extends our prefix
            del cur[start:]
            order.pop()
            used[t] = False

    rec(0, True)
    return tuple(best)


def canonical_key(config: DistanceConfiguration, subset: Iterable[int]) -> SubsetKey:
    pts = sorted(set(subset))
    if not pts:
        raise ConfigError("empty subset")
    if len(pts) > MAX_SUBSET:
        raise ConfigError(f"subset keys are limited to k <= {MAX_SUBSET}")
    if pts[0] < 0 or pts[-1] >= config.n:
        raise ConfigError("subset has points outside the configuration")
    return SubsetKey(len(pts), _least_ordering(config.mat, pts))


def isometric(config: DistanceConfiguration, s: Iterable[int], t: Iterable[int]) -> bool:
    return canonical_key(config, s) == canonical_key(config, t)


def classes(config: DistanceConfiguration, k: int) -> dict[SubsetKey, list[tuple[int, ...]]]:
    """All k-subsets grouped by isometry class (keys sorted, subsets lexicographic)."""
    if not 1 <= k <= config.n:
        raise ConfigError(f"k must satisfy 1 <= k <= n = {config.n}")
    out: dict[SubsetKey, list[tuple[int, ...]]] = {}
    for s in itertools.combinations(range(config.n), k):
        out.setdefault(canonical_key(config, s), []).append(s)
    return dict(sorted(out.items()))


def count_classes(config: DistanceConfiguration, k: int) -> int:
    if not 1 <= k <= config.n:
        raise ConfigError(f"k must satisfy 1 <= k <= n = {config.n}")
    return len({canonical_key(config, s) for s in itertools.combinations(range(config.n), k)})


def isometric_sequence(config: DistanceConfiguration) -> tuple[int, ...]:
    """(a_1, ..., a_n): one pass over every nonempty subset, bucketed by size."""
    n = config.n
    seen: list[set] = [set() for _ in range(n + 1)]
    for k in range(1, n + 1):
        for s in itertools.combinations(range(n), k):
            seen[k].add(_least_ordering(config.mat, s))
    return tuple(len(seen[k]) for k in range(1, n + 1))


def triangle_types(config: DistanceConfiguration) -> set[tuple[int, int, int]]:
    """A_3 as a set of sorted colour triples (a 3-subset class is its colour multiset)."""
    m = config.mat
    return {tuple(sorted((m[x][y], m[y][z], m[x][z])))
            for x, y, z in itertools.combinations(range(config.n), 3)}


# --------------------------------------------------------------------------
# profile vectors


@dataclass(frozen=True)
class ProfileVector:
    counts: tuple[int, ...]

    def __add__(self, other: "ProfileVector") -> "ProfileVector":
        return ProfileVector(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __getitem__(self, color: int) -> int:
        return self.counts[color]

    def as_dict(self, config: DistanceConfiguration) -> dict[str, int]:
        return dict(zip(config.colors, self.counts))


def profile(config: DistanceConfiguration, s: Iterable[int], t: Iterable[int]) -> ProfileVector:
    """Counts of ordered pairs (x, y) in S x T, x != y, per colour."""
    counts = [0] * config.num_colors
    t = list(t)
    m = config.mat
    for x in s:
        row = m[x]
        for y in t:
            if x != y:
                counts[row[y]] += 1
    return ProfileVector(tuple(counts))


def degree(config: DistanceConfiguration, x: int, color: int) -> int:
    row = config.mat[x]
    return sum(1 for y in range(config.n) if y != x and row[y] == color)


def m_set(config: DistanceConfiguration, k: int) -> frozenset[int]:
    """Colours with some vertex incident to at least k pairs of that colour."""
    if not 1 <= k <= config.n:
        raise ConfigError(f"k must satisfy 1 <= k <= n = {config.n}")
    return frozenset(a for a in range(config.num_colors)
                     if any(degree(config, x, a) >= k for x in range(config.n)))


def m_set_by_definition(config: DistanceConfiguration, k: int) -> frozenset[int]:
    """M_k straight from its subset definition: v(X\\S, S)_a >= k|S| for some S."""
    n = config.n
    out = set()
    for r in range(1, n + 1):
        for s in itertools.combinations(range(n), r):
            rest = [x for x in range(n) if x not in s]
            v = profile(config, rest, s)
            out.update(a for a in range(config.num_colors) if v[a] >= k * r)
    return frozenset(out)


# --------------------------------------------------------------------------
# closed colour sets


def _closed_by_triangles(config: DistanceConfiguration, gamma: frozenset[int]) -> bool:
    for a, b, c in triangle_types(config):
        for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
            if x in gamma and y in gamma and z not in gamma:
                return False
    return True


def _union_is_cliques(config: DistanceConfiguration, gamma: frozenset[int]) -> bool:
    adj = config.adjacency(gamma)
    seen = [False] * config.n
    for s in range(config.n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if any(len(adj[u]) != len(comp) - 1 for u in comp):
            return False
    return True


def is_closed(config: DistanceConfiguration, gamma: Iterable[int | str]) -> bool:
    """Closedness of a colour set, computed by both characterisations.

    The triangle-closure definition and the clique-components test are
    evaluated independently; disagreement raises AssertionError.
    """
    g = frozenset(config.color_index(c) for c in gamma)
    if not g:
        raise ConfigError("colour set must be nonempty")
    by_def = _closed_by_triangles(config, g)
    by_cliques = _union_is_cliques(config, g)
    if by_def != by_cliques:
        raise AssertionError(f"closedness characterisations disagree for {sorted(g)}")
    return by_def
