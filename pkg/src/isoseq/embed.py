"""Euclidean embeddability via the centred Gram matrix, and explicit embeddings.

``G = -(I - J/n) D (I - J/n)`` with ``D`` the squared distance matrix.  The
space embeds in Euclidean space iff ``G`` is positive semidefinite, and the
smallest dimension is ``rank(G)``.  The verdicts use ``G`` without the usual
factor 1/2 (sign pattern and rank do not care); coordinate recovery uses
``G/2`` so that recovered distances are the input distances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import (ConfigError, DistanceConfiguration, FamilySpec, MetricRealization,
                     PointSet, construct_family, from_points)
from .isometry import count_classes

DEFAULT_RTOL = 1e-9


@dataclass(frozen=True)
class GramAnalysis:
    G: np.ndarray
    eigenvalues: np.ndarray   # ascending
    tol: float                # absolute cutoff

    @property
    def rank(self) -> int:
        return int(np.sum(self.eigenvalues > self.tol))

    @property
    def is_psd(self) -> bool:
        return bool(self.eigenvalues[0] >= -self.tol)


@dataclass(frozen=True)
class EmbedReport:
    is_euclidean: bool
    m_X: int | None
    negative_mass: float
    eigenvalues: tuple[float, ...] = ()

    def to_json(self) -> dict:
        return {"is_euclidean": self.is_euclidean, "m_X": self.m_X,
                "negative_mass": self.negative_mass, "eigenvalues": list(self.eigenvalues)}


def gram_matrix(D2: np.ndarray) -> np.ndarray:
    D2 = np.asarray(D2, dtype=float)
    n = D2.shape[0]
    P = np.eye(n) - np.full((n, n), 1.0 / n)
    G = -P @ D2 @ P
    return (G + G.T) / 2


def _squared(obj) -> np.ndarray:
    if isinstance(obj, PointSet):
        return obj.squared_distances()
    if isinstance(obj, MetricRealization):
        return obj.squared_matrix()
    return np.asarray(obj, dtype=float)


def gram(obj, rtol: float = DEFAULT_RTOL) -> GramAnalysis:
    """Gram analysis of a realization, a point set or a squared distance matrix."""
    G = gram_matrix(_squared(obj))
    ev = np.linalg.eigvalsh(G)
    tol = rtol * max(1.0, float(np.max(np.abs(ev))) if ev.size else 1.0)
    return GramAnalysis(G, ev, tol)


def embeddability(obj, rtol: float = DEFAULT_RTOL) -> EmbedReport:
    if rtol <= 0:
        raise ConfigError("tolerance must be positive")
    ga = gram(obj, rtol)
    ok = ga.is_psd
    # eigenvalues within the cutoff are reported as exact zeros
    ev = tuple(0.0 if abs(x) <= ga.tol else float(x) for x in ga.eigenvalues)
    return EmbedReport(ok, ga.rank if ok else None, min(0.0, ev[0]), ev)


def coordinates(obj, rtol: float = DEFAULT_RTOL) -> PointSet:
    """Points in R^{m_X} realizing the distances (classical scaling)."""
    D2 = _squared(obj)
    ga = gram(D2, rtol)
    if not ga.is_psd:
        raise ConfigError("not Euclidean: the Gram matrix has a negative eigenvalue "
                          f"{ga.eigenvalues[0]:.3g}")
    w, V = np.linalg.eigh(ga.G / 2)
    keep = np.flatnonzero(2 * w > ga.tol)[::-1]
    X = V[:, keep] * np.sqrt(w[keep])
    X[np.abs(X) <= 1e-12 * max(1.0, float(np.abs(X).max(initial=0.0)))] = 0.0
    return PointSet(len(keep), X)


# --------------------------------------------------------------------------
# coordinate generators


def _centered(n: int) -> np.ndarray:
    return np.eye(n) - np.full((n, n), 1.0 / n) if n else np.zeros((0, 0))


def _dsum(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    out = np.zeros((P.shape[0] + Q.shape[0], P.shape[1] + Q.shape[1]))
    out[:P.shape[0], :P.shape[1]] = P
    out[P.shape[0]:, P.shape[1]:] = Q
    return out


def circle(m: int) -> np.ndarray:
    """C_m: row i is (cos 2 pi i/m, sin 2 pi i/m), i = 1..m."""
    i = np.arange(1, m + 1)
    return np.column_stack([np.cos(2 * np.pi * i / m), np.sin(2 * np.pi * i / m)])


def cp_matrix(p: int, c: float) -> np.ndarray:
    """CP_{2p,c} as printed: (1/2p) [[p s I - 2 s J, c p I], [p s I - 2 s J, -c p I]], s = sqrt(2 - c^2)."""
    s = math.sqrt(max(0.0, 2 - c * c))
    top = p * s * np.eye(p) - 2 * s * np.ones((p, p))
    return np.block([[top, c * p * np.eye(p)], [top, -c * p * np.eye(p)]]) / (2 * p)


def cp_t_matrix(q: int, c: float, t: float) -> np.ndarray:
    """CP^t_{2q,c} = CP_{2q,c} + (t/q) [[J, O], [J, O]]."""
    shift = np.zeros((2 * q, 2 * q))
    shift[:, :q] = t / q
    return cp_matrix(q, c) + shift


KINDS = ("simplex_i", "bipartite_iia", "oneedge_iib", "matchingcomp_iic", "pentagon_iid",
         "example1_iiia", "crosslike_iiib", "cp_iiic", "example4_iiid", "circle_Cm",
         "half_cube5", "johnson_J52")


@dataclass(frozen=True)
class EmbeddingKind:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown embedding kind {self.kind!r}")


def _p(params, name, default=None, cast=int):
    if name in params:
        return cast(params[name])
    if default is None:
        raise ConfigError(f"missing parameter {name!r}")
    return default


def _need(cond, msg):
    if not cond:
        raise ConfigError(msg)


def generate_embedding(kind: EmbeddingKind | str, **params) -> PointSet:
    """Row vectors of the matrices of the explicit embeddings.

    Parameters per kind:

    - ``simplex_i(n)``: ``I_n - J_n/n``.
    - ``bipartite_iia(n, m)``: ``(I_m - J_m/m) + (I_{n-m} - J_{n-m}/(n-m))`` (direct sum).
    - ``oneedge_iib(n, literal=False)``: ``(h; I_{n-1} - J_{n-1}/(n-1))``.  With
      ``literal`` ``h`` is the negated first row as printed; by default it is
      that vector scaled by ``n/(n-2)``, the only choice giving two distances.
    - ``matchingcomp_iic(n, m)``: ``(I_{n-m}; (-I_m, O))``.
    - ``pentagon_iid``: ``C_5``.  ``circle_Cm(m)``: ``C_m``.
    - ``example1_iiia(lift=0)``: ``C_4 + C_4``; ``lift > 0`` appends a fifth
      coordinate equal to ``lift`` on the second square.
    - ``crosslike_iiib(m)``: ``(I_m - J_m/m; -I_m + J_m/m)``.
    - ``cp_iiic(p, q, c=1.2, t=None)``: ``CP_{2p,sqrt 2} + CP^t_{2q,c}`` with the
      printed ``t = sqrt((2 - c)/(4q))`` unless ``t`` is given.
    - ``example4_iiid(n)``: ``(I_{n-2} - J_{n-2}/(n-2)) + C_2``.
    - ``half_cube5``: even weight vectors of ``{0,1}^5``.  ``johnson_J52``: ``e_i + e_j``.
    """
    if isinstance(kind, str):
        kind = EmbeddingKind(kind, params)
    elif params:
        raise TypeError("pass parameters either in the EmbeddingKind or as keywords")
    k, p = kind.kind, kind.params

    if k == "simplex_i":
        n = _p(p, "n")
        _need(n >= 2, "simplex_i needs n >= 2")
        X = _centered(n)
    elif k == "bipartite_iia":
        n, m = _p(p, "n"), _p(p, "m")
        _need(1 <= m < n and max(m, n - m) >= 2, "bipartite_iia needs 1 <= m < n, max(m, n-m) >= 2")
        X = _dsum(_centered(m), _centered(n - m))
    elif k == "oneedge_iib":
        n = _p(p, "n")
        _need(n >= 4, "oneedge_iib needs n >= 4")
        B = _centered(n - 1)
        scale = 1.0 if p.get("literal", False) else n / (n - 2)
        X = np.vstack([-scale * B[0], B])
    elif k == "matchingcomp_iic":
        n, m = _p(p, "n"), _p(p, "m")
        _need(m >= 1 and 2 * m <= n and n >= 3, "matchingcomp_iic needs 1 <= m, 2m <= n, n >= 3")
        low = np.hstack([-np.eye(m), np.zeros((m, n - 2 * m))])
        X = np.vstack([np.eye(n - m), low])
    elif k == "pentagon_iid":
        X = circle(5)
    elif k == "circle_Cm":
        m = _p(p, "m")
        _need(m >= 2, "circle_Cm needs m >= 2")
        X = circle(m)
    elif k == "example1_iiia":
        lift = _p(p, "lift", 0.0, float)
        X = _dsum(circle(4), circle(4))
        if lift:
            X = np.hstack([X, np.r_[np.zeros(4), np.full(4, lift)][:, None]])
    elif k == "crosslike_iiib":
        m = _p(p, "m")
        _need(m >= 3, "crosslike_iiib needs m >= 3")
        C = _centered(m)
        X = np.vstack([C, -C])
    elif k == "cp_iiic":
        pp, q = _p(p, "p"), _p(p, "q")
        c = _p(p, "c", 1.2, float)
        _need(pp >= max(2, q) and q >= 1, "cp_iiic needs p >= max(2, q) >= 1")
        _need(0 < c < math.sqrt(2) and c != 1, "cp_iiic needs 0 < c < sqrt 2 and c != 1")
        t = p.get("t")
        t = math.sqrt((2 - c) / (4 * q)) if t is None else float(t)
        X = _dsum(cp_matrix(pp, math.sqrt(2)), cp_t_matrix(q, c, t))
    elif k == "example4_iiid":
        n = _p(p, "n")
        _need(n >= 5, "example4_iiid needs n >= 5")
        X = _dsum(_centered(n - 2), circle(2))
    elif k == "half_cube5":
        X = np.array([v for v in np.ndindex(*(2,) * 5) if sum(v) % 2 == 0], dtype=float)
    elif k == "johnson_J52":
        rows = []
        for i in range(5):
            for j in range(i + 1, 5):
                r = np.zeros(5)
                r[[i, j]] = 1
                rows.append(r)
        X = np.array(rows)
    else:  # pragma: no cover
        raise ConfigError(k)
    return PointSet.of(X)


def intended(kind: EmbeddingKind) -> tuple[DistanceConfiguration, int, tuple | None]:
    """Target configuration, claimed m_X and the NS partition (or None) for a kind."""
    k, p = kind.kind, kind.params
    fam = lambda name, **kw: construct_family(FamilySpec(name, kw))  # noqa: E731
    if k == "simplex_i":
        n = int(p["n"])
        return fam("complete", n=n), n - 1, None
    if k == "bipartite_iia":
        n, m = int(p["n"]), int(p["m"])
        return fam("complete_bipartite", m=m, k=n - m), n - 2, (tuple(range(m)), tuple(range(m, n)))
    if k == "oneedge_iib":
        n = int(p["n"])
        return fam("kn_minus_k2", n=n), n - 2, None
    if k == "matchingcomp_iic":
        n, m = int(p["n"]), int(p["m"])
        return fam("matching_complement", n=n, m=m), n - m, None
    if k == "pentagon_iid":
        return fam("pentagon"), 2, None
    if k == "circle_Cm":
        m = int(p["m"])
        edges = [(i, (i + 1) % m) for i in range(m)]
        return fam("graph_metric", n=m, edges=edges), 2 if m > 2 else 1, None
    if k == "example1_iiia":
        return fam("example1", n=8), 4, (tuple(range(4)), tuple(range(4, 8)))
    if k == "crosslike_iiib":
        m = int(p["m"])
        return fam("example2", y=m, z=m, m=m), m - 1, None
    if k == "cp_iiic":
        pp, q = int(p["p"]), int(p["q"])
        return fam("example3", p=pp, q=q), pp + 2 * q, None
    if k == "example4_iiid":
        n = int(p["n"])
        return fam("example4", n=n), n - 2, (tuple(range(n - 2)), (n - 2, n - 1))
    if k == "half_cube5":
        return fam("half_cube5"), 5, None
    if k == "johnson_J52":
        return fam("johnson_J52"), 4, None
    raise ConfigError(k)  # pragma: no cover


# --------------------------------------------------------------------------
# lower bound from a constant cross distance


def ns_bound(real: MetricRealization, A: Sequence[int], B: Sequence[int],
             rtol: float = DEFAULT_RTOL) -> int:
    """m_A + m_B for a split whose cross distances are all equal.

    This is a lower bound for the embedding dimension of the whole space.
    """
    A, B = sorted(set(A)), sorted(set(B))
    n = real.config.n
    if not A or not B or set(A) & set(B) or sorted(A + B) != list(range(n)):
        raise ConfigError("A and B must be disjoint, nonempty and cover all points")
    cross = {real.config.mat[a][b] for a in A for b in B}
    if len(cross) != 1:
        raise ConfigError("cross distances between A and B are not constant")
    dims = []
    for part in (A, B):
        rep = embeddability(real.induced(part), rtol)
        if not rep.is_euclidean:
            raise ConfigError("a part is not Euclidean")
        dims.append(rep.m_X)
    return dims[0] + dims[1]


@dataclass
class GeneratorCheck:
    kind: str
    params: dict
    n: int
    intended_colors: int
    observed_colors: int
    match: bool
    rank: int | None
    claimed: int
    ns: int | None
    discrepancy: str | None = None

    @property
    def ok(self) -> bool:
        return self.match and self.rank == self.claimed and (self.ns is None or self.ns == self.rank)

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": self.params, "n": self.n,
                "intended_colors": self.intended_colors, "observed_colors": self.observed_colors,
                "match": self.match, "rank": self.rank, "claimed": self.claimed,
                "ns_bound": self.ns, "ok": self.ok, "discrepancy": self.discrepancy}


def self_check(kind: EmbeddingKind | str, rtol: float = DEFAULT_RTOL, **params) -> GeneratorCheck:
    """Rebuild the configuration from the generated points and compare.

    Checks that the pair partition equals the intended one (vertex labels
    fixed), that the Gram rank equals the claimed dimension, and, where a
    split with constant cross distance is designated, that the lower bound
    equals the rank.  Any mismatch is described in ``discrepancy``.
    """
    if isinstance(kind, str):
        kind = EmbeddingKind(kind, params)
    pts = generate_embedding(kind)
    target, claimed, split = intended(kind)
    real = from_points(pts)
    rep = embeddability(pts, rtol)
    match = real.config.same_partition(target)
    ns = None
    notes = []
    if split is not None and match:
        ns = ns_bound(real, *split, rtol=rtol)
    if not match:
        sq = sorted({round(float(v) ** 2, 9) for v in real.values})
        notes.append(f"generated points have {real.config.num_colors} distinct distances "
                     f"(squared: {sq}), intended configuration has {target.num_colors} colours")
        if kind.kind == "cp_iiic":
            c = float(kind.params.get("c", 1.2))
            s = math.sqrt(2 - c * c)
            notes.append("cross distance is 1 only for t = 0 or t = sqrt(2 - c^2) = "
                         f"{s:.12g}; printed t = {math.sqrt((2 - c) / (4 * int(kind.params['q']))):.12g}")
    if rep.m_X != claimed:
        notes.append(f"Gram rank {rep.m_X} differs from claimed dimension {claimed}")
    if ns is not None and ns != rep.m_X:
        notes.append(f"constant-cross lower bound {ns} differs from rank {rep.m_X}")
    return GeneratorCheck(kind.kind, dict(kind.params), pts.n, target.num_colors,
                          real.config.num_colors, match, rep.m_X, claimed, ns,
                          "; ".join(notes) or None)


# --------------------------------------------------------------------------
# search over value assignments


@dataclass
class DimSearch:
    values: tuple[float, ...] | None
    report: EmbedReport | None
    boundary: list[tuple[tuple[float, ...], int]]
    message: str = ""


def _grid_values(res: int) -> np.ndarray:
    return np.arange(1, res + 1) * (2.0 / res)


def _eval(config: DistanceConfiguration, vals, rtol):
    v = np.asarray(vals, dtype=float)
    idx = np.array(config.mat)
    D2 = np.where(idx >= 0, v[np.maximum(idx, 0)] ** 2, 0.0)
    np.fill_diagonal(D2, 0.0)
    return embeddability(D2, rtol)


def search_min_dim(config: DistanceConfiguration, grid_resolution: int = 32,
                   rtol: float = DEFAULT_RTOL) -> DimSearch:
    """Smallest embedding dimension over distance assignments.

    The first colour is fixed to 1, the others range over the grid
    ``2k/r, k = 1..r`` with distinct values.  Along every grid edge where the
    least eigenvalue changes sign the PSD boundary is located by 40
    bisection steps; boundary points are where the rank drops.  Ties in the
    minimal dimension go to the lexicographically least assignment.
    """
    c = config.num_colors
    if c > 3:
        raise ConfigError("search_min_dim supports at most 3 colours")
    if grid_resolution < 8:
        raise ConfigError("grid_resolution must be >= 8")
    if c == 0:
        return DimSearch((), embeddability(np.zeros((1, 1)), rtol), [])
    grid = _grid_values(grid_resolution)
    axes = [grid] * (c - 1)
    points: dict[tuple[float, ...], EmbedReport] = {}
    for rest in np.ndindex(*(len(a) for a in axes)) if axes else [()]:
        vals = (1.0,) + tuple(float(axes[d][i]) for d, i in enumerate(rest))
        if len(set(vals)) < c:
            continue
        points[vals] = _eval(config, vals, rtol)

    boundary: list[tuple[tuple[float, ...], int]] = []
    for vals, rep in list(points.items()):
        for d in range(1, c):
            step = list(vals)
            step[d] = vals[d] + 2.0 / grid_resolution
            nxt = points.get(tuple(step))
            if nxt is None or rep.is_euclidean == nxt.is_euclidean:
                continue
            lo, hi = vals[d], step[d]          # lo side PSD status = rep
            good_lo = rep.is_euclidean
            for _ in range(40):
                mid = (lo + hi) / 2
                probe = list(vals)
                probe[d] = mid
                if _eval(config, probe, rtol).is_euclidean == good_lo:
                    lo = mid
                else:
                    hi = mid
            probe = list(vals)
            probe[d] = lo if good_lo else hi
            probe = tuple(probe)
            if len(set(probe)) < c:
                continue
            r = _eval(config, probe, rtol)
            if r.is_euclidean:
                boundary.append((probe, r.m_X))
                points[probe] = r

    psd = [(r.m_X, v) for v, r in points.items() if r.is_euclidean]
    boundary.sort()
    if not psd:
        return DimSearch(None, None, boundary, "no PSD assignment found on the grid")
    m, best = min(psd)
    return DimSearch(best, points[best], boundary)


# --------------------------------------------------------------------------
# F_m(3, t) lower bounds


F_CLAIMED = {3: {2: 6, 3: 8, 4: 10, 5: 16}}


@dataclass
class FTableEntry:
    m: int
    k: int
    t: int
    claimed: int
    witness: PointSet
    label: str
    size: int
    a_k: int
    rank: int | None

    @property
    def ok(self) -> bool:
        return self.size == self.claimed and self.a_k == self.t and \
            self.rank is not None and self.rank <= self.m

    def to_json(self) -> dict:
        return {"m": self.m, "k": self.k, "t": self.t, "claimed": self.claimed,
                "label": self.label, "size": self.size, "a_k": self.a_k,
                "rank": self.rank, "ok": self.ok,
                "witness": {"dim": self.witness.dim, "points": self.witness.coords.tolist()}}


def f_table(m: int, t: int, rtol: float = DEFAULT_RTOL) -> FTableEntry:
    """Constructive witness for the value of F_m(3, t), t in {2, 3}."""
    if t == 2 and m >= 2:
        if m == 2:
            claimed, label, pts = 5, "pentagon", generate_embedding("pentagon_iid")
        else:
            claimed, label = 2 * m, f"cross polytope in R^{m}"
            pts = generate_embedding("matchingcomp_iic", n=2 * m, m=m)
    elif t == 3 and 2 <= m <= 5:
        claimed = F_CLAIMED[3][m]
        if m == 5:
            label, pts = "half cube", generate_embedding("half_cube5")
        else:
            label = {2: "regular hexagon", 3: "cube", 4: "10 points"}[m] + f" (crosslike m={m + 1})"
            pts = generate_embedding("crosslike_iiib", m=m + 1)
    else:
        raise ConfigError(f"F_m(3, t) is covered for t = 2, m >= 2 and t = 3, 2 <= m <= 5; got m={m}, t={t}")
    real = from_points(pts)
    return FTableEntry(m, 3, t, claimed, pts, label, pts.n, count_classes(real.config, 3),
                       embeddability(pts, rtol).m_X)
