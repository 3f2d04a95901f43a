"""Canonical forms of whole configurations under vertex and colour relabeling.

The canonical form is the lexicographically least edge vector (pairs in
colex order) over all ``n!`` vertex permutations and all ``c!`` colour
permutations.  Everything is vectorised with numpy over precomputed
permutation tables, which is fast enough up to n = 8.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import ConfigError, DistanceConfiguration, colex_pairs

MAX_N = 8


@lru_cache(maxsize=None)
def vertex_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int16).reshape(-1, n)


@lru_cache(maxsize=None)
def edge_perms(n: int) -> np.ndarray:
    """``out[s, e]`` = position of pair ``(perm[i], perm[j])`` for pair ``e = (i, j)``.

    Applying row ``s`` to an edge vector gives the vector of the relabeled
    configuration in which new vertex ``i`` is old vertex ``perm_s[i]``.
    """
    pairs = colex_pairs(n)
    pos = {p: k for k, p in enumerate(pairs)}
    perms = vertex_perms(n)
    out = np.empty((len(perms), len(pairs)), dtype=np.int32)
    for s, perm in enumerate(perms):
        for e, (i, j) in enumerate(pairs):
            a, b = perm[i], perm[j]
            out[s, e] = pos[(a, b) if a < b else (b, a)]
    return out


@lru_cache(maxsize=None)
def _cheap_rows(n: int) -> np.ndarray:
    """Rows of :func:`edge_perms` for the transpositions and 3-cycles."""
    perms = vertex_perms(n)
    moved = (perms != np.arange(n)).sum(axis=1)
    return np.flatnonzero((moved >= 2) & (moved <= 3))


@lru_cache(maxsize=None)
def color_perms(c: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(c))), dtype=np.int8).reshape(-1, max(c, 0))


def _weights(base: int, length: int) -> np.ndarray | None:
    if base ** length >= 2 ** 62:
        return None
    return np.array([base ** (length - 1 - e) for e in range(length)], dtype=np.int64)


@dataclass(frozen=True)
class CanonicalForm:
    code: tuple[int, ...]
    vertex_perm: tuple[int, ...]   # canonical vertex i is original vertex vertex_perm[i]
    color_perm: tuple[int, ...]    # original colour k becomes canonical colour color_perm[k]


def canonical_form(config: DistanceConfiguration) -> CanonicalForm:
    n, c = config.n, config.num_colors
    if n > MAX_N:
        raise ConfigError(f"canonical forms are limited to n <= {MAX_N}")
    if n < 2:
        return CanonicalForm((), tuple(range(n)), tuple(range(c)))
    vec = np.array(config.edge_vector(), dtype=np.int8)
    eperm = edge_perms(n)
    cperm = color_perms(c)
    R = cperm[:, vec[eperm]]                      # (c!, n!, E)
    flat = R.reshape(-1, R.shape[-1])
    w = _weights(c, flat.shape[1])
    if w is not None:
        k = int(np.argmin(flat.astype(np.int64) @ w))
    else:
        k = int(np.lexsort(flat.T[::-1])[0])
    ci, si = divmod(k, eperm.shape[0])
    return CanonicalForm(tuple(int(x) for x in flat[k]),
                         tuple(int(x) for x in vertex_perms(n)[si]),
                         tuple(int(x) for x in cperm[ci]))


def canonical_config(config: DistanceConfiguration) -> DistanceConfiguration:
    cf = canonical_form(config)
    return DistanceConfiguration.from_vector(config.n, cf.code,
                                             [f"c{k}" for k in range(config.num_colors)])


def find_isomorphism(a: DistanceConfiguration, b: DistanceConfiguration):
    """Return ``(vertex_map, color_map)`` carrying ``a`` onto ``b``, or None.

    ``vertex_map[x]`` is the vertex of ``b`` matched with vertex ``x`` of
    ``a``; ``color_map`` maps colour tokens of ``a`` to tokens of ``b``.
    """
    if a.n != b.n or a.num_colors != b.num_colors:
        return None
    fa, fb = canonical_form(a), canonical_form(b)
    if fa.code != fb.code:
        return None
    vmap = [0] * a.n
    for i in range(a.n):
        vmap[fa.vertex_perm[i]] = fb.vertex_perm[i]
    inv_b = {v: k for k, v in enumerate(fb.color_perm)}
    cmap = {a.colors[k]: b.colors[inv_b[fa.color_perm[k]]] for k in range(a.num_colors)}
    for x, y in itertools.combinations(range(a.n), 2):
        if cmap[a.colors[a.mat[x][y]]] != b.colors[b.mat[vmap[x]][vmap[y]]]:
            raise AssertionError("canonical forms agree but the derived map is not an isomorphism")
    return vmap, cmap


def canonical_mask(vectors: np.ndarray, n: int, ncolors: int, chunk: int = 0) -> np.ndarray:
    """Which rows of ``vectors`` (edge vectors, colours < ncolors) are canonical.

    A row is canonical when no vertex/colour relabeling gives a
    lexicographically smaller vector.
    """
    vectors = np.asarray(vectors, dtype=np.int8)
    B, E = vectors.shape
    if B == 0:
        return np.zeros(0, dtype=bool)
    w = _weights(max(ncolors, 2), E)
    if w is None:
        raise ConfigError("edge vectors too long for integer encoding")
    eperm = edge_perms(n)
    cperm = color_perms(ncolors)
    own = vectors.astype(np.int64) @ w
    out = np.ones(B, dtype=bool)
    # cheap rejection with small permutations first, then the full group
    for rows in (eperm[_cheap_rows(n)], eperm):
        idx = np.flatnonzero(out)
        if idx.size == 0 or rows.size == 0:
            continue
        step = chunk if chunk > 0 else max(1, 4_000_000 // (len(rows) * len(cperm) * max(E, 1)))
        for lo in range(0, idx.size, step):
            sel = idx[lo:lo + step]
            R = cperm[:, vectors[sel][:, rows]]       # (c!, b, perms, E)
            codes = R.astype(np.int64) @ w            # (c!, b, perms)
            out[sel] = codes.min(axis=(0, 2)) >= own[sel]
    return out
