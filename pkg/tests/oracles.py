"""Independent brute-force oracles used by the tests.

Nothing here reuses the package's search code: isometry is decided by
trying every bijection, Euclidean rank by the anchored form of the
distance matrix, orbit counts by Burnside's lemma.
"""
import itertools
from math import factorial

import numpy as np


def colour(mat, x, y):
    return mat[x][y]


def brute_isometric(mat, s, t):
    """Is there a bijection s -> t preserving every pair colour?"""
    s, t = list(s), list(t)
    if len(s) != len(t):
        return False
    for img in itertools.permutations(t):
        f = dict(zip(s, img))
        if all(mat[a][b] == mat[f[a]][f[b]] for a, b in itertools.combinations(s, 2)):
            return True
    return False


def brute_count(mat, n, k):
    reps = []
    for s in itertools.combinations(range(n), k):
        if not any(brute_isometric(mat, s, r) for r in reps):
            reps.append(s)
    return len(reps)


def brute_sequence(mat, n):
    return tuple(brute_count(mat, n, k) for k in range(1, n + 1))


def anchored_rank(D2, rtol=1e-9):
    """Rank and PSD verdict of F_ij = (D_0i + D_0j - D_ij)/2 (point 0 as origin)."""
    D2 = np.asarray(D2, dtype=float)
    F = (D2[0][:, None] + D2[0][None, :] - D2) / 2
    ev = np.linalg.eigvalsh(F)
    tol = rtol * max(1.0, np.abs(ev).max())
    return bool(ev.min() >= -tol), int((ev > tol).sum())


def burnside_orbits(n, c):
    """Colourings of the C(n,2) pairs with colours 0..c-1 (all used) up to
    vertex and colour permutations, counted by averaging fixed points."""
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    pos = {p: k for k, p in enumerate(pairs)}
    total = 0
    for vp in itertools.permutations(range(n)):
        edge_img = [pos[tuple(sorted((vp[i], vp[j])))] for i, j in pairs]
        for cp in itertools.permutations(range(c)):
            # a colouring is fixed iff col[edge_img[e]] == cp[col[e]] for all e
            for col in itertools.product(range(c), repeat=len(pairs)):
                if len(set(col)) == c and all(col[edge_img[e]] == cp[col[e]] for e in range(len(pairs))):
                    total += 1
    return total // (factorial(n) * factorial(c))


def pair_distances(X):
    X = np.asarray(X, dtype=float)
    return np.array([np.linalg.norm(X[i] - X[j]) for i, j in itertools.combinations(range(len(X)), 2)])
