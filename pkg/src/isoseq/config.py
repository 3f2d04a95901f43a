"""Distance configurations, metric realizations and named families.

A :class:`DistanceConfiguration` is an edge colouring of the complete graph
on ``n`` points.  Colours are opaque tokens; internally every routine works
with the colour *index* (position in ``config.colors``), so all of the
combinatorics is exact and float-free.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Iterable, Mapping, Sequence

import numpy as np


class ConfigError(ValueError):
    """Raised for malformed configurations, realizations or family parameters."""


def colex_pairs(n: int) -> list[tuple[int, int]]:
    """Pairs (i, j), i < j, ordered (0,1), (0,2), (1,2), (0,3), ...

    The first C(m, 2) pairs are exactly the pairs inside {0..m-1}; the
    canonical forms and the orderly generator rely on that.
    """
    return [(i, j) for j in range(1, n) for i in range(j)]


@dataclass(frozen=True)
class DistanceConfiguration:
    n: int
    colors: tuple[str, ...]
    mat: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise ConfigError("n must be >= 1")
        if len(self.mat) != n or any(len(row) != n for row in self.mat):
            raise ConfigError("colour matrix has the wrong shape")
        if len(set(self.colors)) != len(self.colors):
            raise ConfigError("duplicate colour identifiers")
        used = set()
        for i in range(n):
            if self.mat[i][i] != -1:
                raise ConfigError("diagonal must be -1")
            for j in range(i + 1, n):
                c = self.mat[i][j]
                if c != self.mat[j][i]:
                    raise ConfigError("colour matrix is not symmetric")
                if not 0 <= c < len(self.colors):
                    raise ConfigError(f"pair ({i},{j}) has an unknown colour index {c}")
                used.add(c)
        if len(used) != len(self.colors):
            raise ConfigError("every colour must be used by at least one pair")

    @classmethod
    def from_matrix(cls, mat: Sequence[Sequence[int]], colors: Sequence[str] | None = None):
        n = len(mat)
        m = tuple(tuple(-1 if i == j else int(mat[i][j]) for j in range(n)) for i in range(n))
        if colors is None:
            ncol = 1 + max((m[i][j] for i, j in colex_pairs(n)), default=-1)
            colors = [f"c{i}" for i in range(ncol)]
        return cls(n, tuple(colors), m)

    @classmethod
    def from_vector(cls, n: int, vec: Sequence[int], colors: Sequence[str] | None = None):
        """Build from pair colours listed in :func:`colex_pairs` order."""
        pairs = colex_pairs(n)
        if len(vec) != len(pairs):
            raise ConfigError("edge vector has the wrong length")
        mat = [[-1] * n for _ in range(n)]
        for (i, j), c in zip(pairs, vec):
            mat[i][j] = mat[j][i] = int(c)
        return cls.from_matrix(mat, colors)

    @property
    def num_colors(self) -> int:
        return len(self.colors)

    def color(self, i: int, j: int) -> int:
        return self.mat[i][j]

    def edge_vector(self) -> tuple[int, ...]:
        return tuple(self.mat[i][j] for i, j in colex_pairs(self.n))

    @property
    def edge_color(self) -> dict[tuple[int, int], str]:
        return {(i, j): self.colors[self.mat[i][j]]
                for i in range(self.n) for j in range(i + 1, self.n)}

    def edges(self, color: int) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)
                if self.mat[i][j] == color]

    def adjacency(self, colors: int | Iterable[int]) -> list[set[int]]:
        """Neighbour sets of the graph formed by one colour or a union of colours."""
        cs = {colors} if isinstance(colors, int) else set(colors)
        return [{j for j in range(self.n) if j != i and self.mat[i][j] in cs}
                for i in range(self.n)]

    def color_index(self, token: str | int) -> int:
        if isinstance(token, int):
            if not 0 <= token < self.num_colors:
                raise ConfigError(f"colour index {token} out of range")
            return token
        try:
            return self.colors.index(token)
        except ValueError:
            raise ConfigError(f"unknown colour {token!r}") from None

    def relabel(self, perm: Sequence[int]) -> "DistanceConfiguration":
        """Configuration in which new vertex ``i`` is old vertex ``perm[i]``."""
        if sorted(perm) != list(range(self.n)):
            raise ConfigError("not a permutation")
        m = [[-1 if i == j else self.mat[perm[i]][perm[j]] for j in range(self.n)]
             for i in range(self.n)]
        return DistanceConfiguration.from_matrix(m, self.colors)

    def rename_colors(self, mapping: Mapping[str, str]) -> "DistanceConfiguration":
        return DistanceConfiguration(self.n, tuple(mapping.get(c, c) for c in self.colors), self.mat)

    def induced(self, subset: Iterable[int]) -> "DistanceConfiguration":
        """Induced subconfiguration; unused colours are dropped, order kept."""
        idx = sorted(set(subset))
        if not idx:
            raise ConfigError("empty subset")
        present = sorted({self.mat[a][b] for a, b in itertools.combinations(idx, 2)})
        remap = {c: k for k, c in enumerate(present)}
        m = [[-1 if a == b else remap[self.mat[a][b]] for b in idx] for a in idx]
        return DistanceConfiguration.from_matrix(m, [self.colors[c] for c in present])

    def same_partition(self, other: "DistanceConfiguration") -> bool:
        """True if both colourings induce the same partition of the pairs (vertex labels fixed)."""
        if self.n != other.n or self.num_colors != other.num_colors:
            return False
        fwd: dict[int, int] = {}
        bwd: dict[int, int] = {}
        for i, j in colex_pairs(self.n):
            a, b = self.mat[i][j], other.mat[i][j]
            if fwd.setdefault(a, b) != b or bwd.setdefault(b, a) != a:
                return False
        return True


def make_config(n: int, pairs: Iterable[tuple[int, int, str]]) -> DistanceConfiguration:
    """Build a configuration from ``(i, j, color)`` triples.

    Colours are ordered by first occurrence along :func:`colex_pairs`.
    """
    if n < 1:
        raise ConfigError("n must be >= 1")
    given: dict[tuple[int, int], str] = {}
    for i, j, c in pairs:
        if not (0 <= i < j < n):
            raise ConfigError(f"pair ({i},{j}) out of range or not ordered i < j < n")
        if (i, j) in given:
            raise ConfigError(f"duplicate pair ({i},{j})")
        given[(i, j)] = str(c)
    missing = [p for p in colex_pairs(n) if p not in given]
    if missing:
        raise ConfigError(f"missing pair {missing[0]}")
    colors: list[str] = []
    for p in colex_pairs(n):
        if given[p] not in colors:
            colors.append(given[p])
    mat = [[-1] * n for _ in range(n)]
    for (i, j), c in given.items():
        mat[i][j] = mat[j][i] = colors.index(c)
    return DistanceConfiguration.from_matrix(mat, colors)


# --------------------------------------------------------------------------
# Metric realizations and point sets


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class MetricRealization:
    config: DistanceConfiguration
    values: tuple  # distance per colour index; Fraction/int where exact, else float

    def __post_init__(self):
        vals = self.values
        if len(vals) != self.config.num_colors:
            raise ConfigError("one value per colour is required")
        for v in vals:
            if not isinstance(v, Real) or not v > 0 or not math.isfinite(v):
                raise ConfigError(f"distance values must be positive and finite, got {v!r}")
        if len(set(vals)) != len(vals):
            raise ConfigError("values must be injective (distinct colours need distinct distances)")
        bad = _triangle_violation(self.config, vals)
        if bad is not None:
            raise ConfigError("triangle inequality violated at points %s" % (bad,))

    def value(self, color: str | int):
        return self.values[self.config.color_index(color)]

    @property
    def value_map(self) -> dict[str, object]:
        return dict(zip(self.config.colors, self.values))

    def distance(self, i: int, j: int):
        return 0 if i == j else self.values[self.config.mat[i][j]]

    def squared_matrix(self) -> np.ndarray:
        n = self.config.n
        v = np.array([float(x) for x in self.values], dtype=float)
        idx = np.array(self.config.mat)
        D = np.where(idx >= 0, v[np.maximum(idx, 0)] ** 2, 0.0)
        D[np.arange(n), np.arange(n)] = 0.0
        return D

    def induced(self, subset: Iterable[int]) -> "MetricRealization":
        sub = self.config.induced(subset)
        return MetricRealization(sub, tuple(self.value(c) for c in sub.colors))


def _triangle_violation(config: DistanceConfiguration, vals: Sequence):
    if not vals:
        return None
    exact = all(_is_exact(v) for v in vals)
    lo, hi = min(vals), max(vals)
    if hi <= 2 * lo:
        return None  # no triangle can fail
    slack = 0 if exact else 1e-12 * float(hi)
    m = config.mat
    for x, y, z in itertools.combinations(range(config.n), 3):
        a, b, c = vals[m[x][y]], vals[m[y][z]], vals[m[x][z]]
        if a > b + c + slack or b > a + c + slack or c > a + b + slack:
            return (x, y, z)
    return None


def default_values(num_colors: int) -> tuple[Fraction, ...]:
    """Colour ``i`` gets 1 + (i+1)/(2c): all values lie in (1, 1.5]."""
    c = num_colors
    return tuple(1 + Fraction(i + 1, 2 * c) for i in range(c))


def realize(config: DistanceConfiguration, values: Mapping | Sequence | None = None) -> MetricRealization:
    """Attach distances to the colours of ``config``.

    ``values`` may be a mapping keyed by colour token (or index) or a sequence
    aligned with ``config.colors``.  When omitted the default scheme of
    :func:`default_values` is used, which satisfies the triangle inequality
    for any configuration.
    """
    if values is None:
        return MetricRealization(config, default_values(config.num_colors))
    if isinstance(values, Mapping):
        vals = [None] * config.num_colors
        for key, v in values.items():
            vals[config.color_index(key)] = v
        if any(v is None for v in vals):
            missing = [c for c, v in zip(config.colors, vals) if v is None]
            raise ConfigError(f"no value given for colours {missing}")
    else:
        vals = list(values)
    return MetricRealization(config, tuple(vals))


@dataclass(frozen=True)
class PointSet:
    dim: int
    coords: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coords, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, max(self.dim, 1)) if self.dim else arr.reshape(-1, 0)
        if arr.ndim != 2 or arr.shape[1] != self.dim:
            raise ConfigError("coordinate vectors must all have length dim")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @classmethod
    def of(cls, coords) -> "PointSet":
        arr = np.atleast_2d(np.asarray(coords, dtype=float))
        return cls(arr.shape[1], arr)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    def squared_distances(self) -> np.ndarray:
        X = self.coords
        G = X @ X.T
        sq = np.diag(G)
        D = sq[:, None] + sq[None, :] - 2 * G
        np.fill_diagonal(D, 0.0)
        return np.maximum(D, 0.0)


def from_points(pts: PointSet, tol: float = 1e-9) -> MetricRealization:
    """Group pairwise Euclidean distances into colours.

    Sorted distances are merged single-linkage style: a new colour starts
    whenever the relative gap to the previous distance exceeds ``tol``.
    Colours are named ``d0, d1, ...`` in increasing distance; each colour's
    value is the mean of its group.
    """
    if tol <= 0:
        raise ConfigError("tol must be positive")
    n = pts.n
    if n < 1:
        raise ConfigError("need at least one point")
    if n == 1:
        return MetricRealization(DistanceConfiguration.from_matrix([[-1]], []), ())
    X = pts.coords
    pairs = colex_pairs(n)
    dist = np.array([np.linalg.norm(X[i] - X[j]) for i, j in pairs])
    scale = dist.max()
    if scale == 0 or dist.min() <= tol * scale:
        raise ConfigError("coincident points")
    order = np.argsort(dist, kind="stable")
    group = np.empty(len(pairs), dtype=int)
    g = 0
    prev = dist[order[0]]
    for pos in order:
        d = dist[pos]
        if (d - prev) > tol * prev:
            g += 1
        group[pos] = g
        prev = d
    ncol = g + 1
    means = tuple(float(dist[group == k].mean()) for k in range(ncol))
    mat = [[-1] * n for _ in range(n)]
    for (i, j), k in zip(pairs, group):
        mat[i][j] = mat[j][i] = int(k)
    cfg = DistanceConfiguration.from_matrix(mat, [f"d{k}" for k in range(ncol)])
    return MetricRealization(cfg, means)


# --------------------------------------------------------------------------
# Named families

GREEK = ("alpha", "beta", "gamma", "delta")

FAMILIES = (
    "complete", "complete_bipartite", "star", "matching_complement", "pentagon",
    "kn_minus_k2", "graph_metric", "example1", "example2", "example3", "example4",
    "cross_polytope", "cube", "half_cube5", "johnson_J52", "discrete",
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        object.__setattr__(self, "params", dict(self.params))


def _from_pair_classes(n: int, classes: Sequence[Iterable[tuple[int, int]]],
                       rest: str | None, names: Sequence[str]) -> DistanceConfiguration:
    """Colour the listed pair classes in order, then everything else as ``rest``.

    Empty classes are dropped so that the result always satisfies the
    no-empty-colour invariant.
    """
    mat = [[-1] * n for _ in range(n)]
    colors: list[str] = []
    for name, pairs in zip(names, classes):
        pairs = list(pairs)
        if not pairs:
            continue
        colors.append(name)
        for i, j in pairs:
            if mat[i][j] != -1:
                raise ConfigError(f"pair ({i},{j}) coloured twice")
            mat[i][j] = mat[j][i] = len(colors) - 1
    leftover = [(i, j) for i, j in colex_pairs(n) if mat[i][j] == -1]
    if leftover:
        if rest is None:
            raise ConfigError("uncoloured pairs remain")
        colors.append(rest)
        for i, j in leftover:
            mat[i][j] = mat[j][i] = len(colors) - 1
    return DistanceConfiguration.from_matrix(mat, colors)


def _by_key(n: int, key, label) -> DistanceConfiguration:
    """Colour pair (i, j) by ``key(i, j)``; colours sorted by key value."""
    keys = {(i, j): key(i, j) for i, j in colex_pairs(n)}
    order = sorted(set(keys.values()))
    mat = [[-1] * n for _ in range(n)]
    for (i, j), k in keys.items():
        mat[i][j] = mat[j][i] = order.index(k)
    return DistanceConfiguration.from_matrix(mat, [label(k) for k in order])


def _need(cond: bool, msg: str):
    if not cond:
        raise ConfigError(msg)


def _int(params: Mapping, name: str, default=None) -> int:
    if name not in params:
        if default is None:
            raise ConfigError(f"missing parameter {name!r}")
        return default
    v = params[name]
    if isinstance(v, bool) or int(v) != v:
        raise ConfigError(f"parameter {name!r} must be an integer")
    return int(v)


def graph_distances(n: int, edges: Iterable[tuple[int, int]]) -> list[list[int]]:
    adj = [set() for _ in range(n)]
    for a, b in edges:
        if a == b or not (0 <= a < n and 0 <= b < n):
            raise ConfigError(f"bad edge ({a},{b})")
        adj[a].add(b)
        adj[b].add(a)
    dist = []
    for s in range(n):
        d = [-1] * n
        d[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if d[w] < 0:
                    d[w] = d[u] + 1
                    q.append(w)
        if min(d) < 0:
            raise ConfigError("graph_metric needs a connected graph")
        dist.append(d)
    return dist


EXAMPLE1_GAMMA = ((0, 2), (1, 3), (4, 6), (5, 7))
EXAMPLE1_BETA = ((0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7))


def construct_family(spec: FamilySpec | str, **params) -> DistanceConfiguration:
    """Configuration of a named family.

    Colour order is alpha, beta, gamma as in the corresponding example of the
    classification; families coloured by a numeric invariant (graph distance,
    Hamming distance) list colours by increasing invariant.

    Vertex layouts match the coordinate generators in :mod:`isoseq.embed`:

    - ``complete_bipartite(m, k)``: parts ``0..m-1`` and ``m..m+k-1``; alpha = cross pairs.
    - ``star(n)``: centre 0; alpha = the star, beta = the clique on the leaves.
    - ``matching_complement(n, m)``: beta = pairs ``(j, n-m+j)``, ``j < m``.
    - ``kn_minus_k2(n)``: beta = the single pair ``(0, 1)``.
    - ``example1(n)``: first ``n`` points of the 8-point layout ``Y = 0..3``,
      ``Z = 4..7``, gamma = ``(0,2),(1,3),(4,6),(5,7)``, beta = the two 4-cycles.
    - ``example2(y, z, m)``: alpha inside the parts, gamma = ``(i, y+i)``, ``i < m``.
    - ``example3(p, q[, n])``: beta = ``(i, p+i)``, gamma = ``(2p+j, 2p+q+j)``;
      without ``n`` the matchings are perfect and ``p >= max(2, q)`` is required.
    - ``example4(n)``: ``Y = 0..n-3``, ``Z = {n-2, n-1}``.
    """
    if isinstance(spec, str):
        spec = FamilySpec(spec, params)
    elif params:
        raise TypeError("pass parameters either in the FamilySpec or as keywords")
    f, p = spec.family, spec.params
    a, b, g = GREEK[:3]

    if f == "complete":
        n = _int(p, "n")
        _need(n >= 2, "complete needs n >= 2")
        return _from_pair_classes(n, [], a, [])

    if f == "discrete":
        n = _int(p, "n")
        _need(n >= 2, "discrete needs n >= 2")
        pairs = colex_pairs(n)
        return _from_pair_classes(n, [[e] for e in pairs], None, [f"e{k}" for k in range(len(pairs))])

    if f == "complete_bipartite":
        m, k = _int(p, "m"), _int(p, "k")
        _need(m >= 1 and k >= 1 and max(m, k) >= 2, "complete_bipartite needs m, k >= 1 and max(m, k) >= 2")
        n = m + k
        cross = [(i, j) for i in range(m) for j in range(m, n)]
        return _from_pair_classes(n, [cross], b, [a])

    if f == "star":
        n = _int(p, "n")
        _need(n >= 3, "star needs n >= 3")
        return _from_pair_classes(n, [[(0, j) for j in range(1, n)]], b, [a])

    if f == "matching_complement":
        n, m = _int(p, "n"), _int(p, "m")
        _need(m >= 1 and 2 * m <= n and n >= 3, "matching_complement needs 1 <= m, 2m <= n, n >= 3")
        matching = [(j, n - m + j) for j in range(m)]
        rest = [e for e in colex_pairs(n) if e not in matching]
        return _from_pair_classes(n, [rest, matching], None, [a, b])

    if f == "cross_polytope":
        m = _int(p, "m")
        _need(m >= 2, "cross_polytope needs m >= 2")
        return construct_family(FamilySpec("matching_complement", {"n": 2 * m, "m": m}))

    if f == "kn_minus_k2":
        n = _int(p, "n")
        _need(n >= 3, "kn_minus_k2 needs n >= 3")
        rest = [e for e in colex_pairs(n) if e != (0, 1)]
        return _from_pair_classes(n, [rest, [(0, 1)]], None, [a, b])

    if f == "pentagon":
        cycle = [(i, (i + 1) % 5) for i in range(5)]
        cycle = [tuple(sorted(e)) for e in cycle]
        return _from_pair_classes(5, [cycle], b, [a])

    if f == "graph_metric":
        n = _int(p, "n")
        edges = [tuple(e) for e in p.get("edges", ())]
        _need(n >= 2, "graph_metric needs n >= 2")
        dist = graph_distances(n, edges)
        return _by_key(n, lambda i, j: dist[i][j], str)

    if f == "example1":
        n = _int(p, "n", 8)
        _need(5 <= n <= 8, "example1 is defined for 5 <= n <= 8")
        full = _from_pair_classes(8, [EXAMPLE1_BETA, EXAMPLE1_GAMMA], a, [b, g])
        return _reorder_colors(full.induced(range(n)), [a, b, g])

    if f == "example2":
        y, z, m = _int(p, "y"), _int(p, "z"), _int(p, "m")
        _need(y >= 1 and z >= 1 and max(y, z) >= 2, "example2 needs parts y, z >= 1 with max(y, z) >= 2")
        _need(1 <= m <= min(y, z) and y * z > m, "example2 needs 1 <= m <= min(y, z) and y*z > m")
        n = y + z
        inside = [(i, j) for i, j in colex_pairs(n) if (i < y) == (j < y)]
        gamma = [(i, y + i) for i in range(m)]
        beta = [(i, j) for i, j in colex_pairs(n) if (i < y) != (j < y) and (i, j) not in gamma]
        return _from_pair_classes(n, [inside, beta, gamma], None, [a, b, g])

    if f == "example3":
        pp, q = _int(p, "p"), _int(p, "q")
        _need(pp >= 1 and q >= 1, "example3 needs p, q >= 1")
        if "n" in p:
            n = _int(p, "n")
            _need(n >= 2 * (pp + q), "example3 needs n >= 2(p+q)")
        else:
            _need(pp >= max(2, q), "example3 with perfect matchings needs p >= max(2, q)")
            n = 2 * (pp + q)
        beta = [(i, pp + i) for i in range(pp)]
        gamma = [(2 * pp + j, 2 * pp + q + j) for j in range(q)]
        rest = [e for e in colex_pairs(n) if e not in beta and e not in gamma]
        return _from_pair_classes(n, [rest, beta, gamma], None, [a, b, g])

    if f == "example4":
        n = _int(p, "n")
        _need(n >= 4, "example4 needs n >= 4")
        alpha = [(i, j) for i, j in colex_pairs(n) if j < n - 2]
        cfg = _from_pair_classes(n, [alpha, [(n - 2, n - 1)]], b, [a, g])
        return _reorder_colors(cfg, [a, b, g])

    if f == "cube":
        d = _int(p, "d", 3)
        _need(d >= 1, "cube needs d >= 1")
        pts = list(itertools.product((0, 1), repeat=d))
        return _by_key(len(pts), lambda i, j: sum(x != y for x, y in zip(pts[i], pts[j])),
                       lambda k: f"h{k}")

    if f == "half_cube5":
        pts = [v for v in itertools.product((0, 1), repeat=5) if sum(v) % 2 == 0]
        return _by_key(len(pts), lambda i, j: sum(x != y for x, y in zip(pts[i], pts[j])),
                       lambda k: f"h{k}")

    if f == "johnson_J52":
        subs = list(itertools.combinations(range(5), 2))
        return _by_key(len(subs), lambda i, j: 2 - len(set(subs[i]) & set(subs[j])),
                       lambda k: GREEK[k - 1])

    raise ConfigError(f"unknown family {f!r}")  # pragma: no cover


def _reorder_colors(cfg: DistanceConfiguration, order: Sequence[str]) -> DistanceConfiguration:
    present = [c for c in order if c in cfg.colors]
    perm = {cfg.colors.index(c): k for k, c in enumerate(present)}
    mat = [[-1 if i == j else perm[cfg.mat[i][j]] for j in range(cfg.n)] for i in range(cfg.n)]
    return DistanceConfiguration.from_matrix(mat, present)
