"""JSON and CSV formats for configurations, realizations and point sets.

Output is byte-stable: keys are sorted and floats are written with 12
significant digits.
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .config import (ConfigError, DistanceConfiguration, MetricRealization, PointSet,
                     colex_pairs, from_points, make_config)


def fmt_float(x: float) -> float:
    """Round to 12 significant digits (what ``dumps`` writes)."""
    x = float(x)
    if x == 0 or not math.isfinite(x):
        return 0.0 if x == 0 else x
    return float(f"{x:.12g}")


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else fmt_float(obj)
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    return obj


def dumps(obj, pretty: bool = False) -> str:
    return json.dumps(_plain(obj), sort_keys=True, indent=2 if pretty else None,
                      separators=None if pretty else (",", ":"))


# --------------------------------------------------------------------------
# configurations and realizations


def config_to_json(config: DistanceConfiguration) -> dict:
    return {"n": config.n, "colors": list(config.colors),
            "edges": [[i, j, config.mat[i][j]] for i, j in colex_pairs(config.n)]}


def config_from_json(data: dict) -> DistanceConfiguration:
    try:
        n = int(data["n"])
        colors = [str(c) for c in data["colors"]]
        pairs = []
        for e in data["edges"]:
            i, j, c = (int(x) for x in e)
            if not 0 <= c < len(colors):
                raise ConfigError(f"colour index {c} out of range")
            pairs.append((min(i, j), max(i, j), colors[c]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"malformed configuration JSON: {exc}") from None
    cfg = make_config(n, pairs)
    # keep the declared colour order rather than first occurrence
    order = [c for c in colors if c in cfg.colors]
    if len(order) != len(colors):
        raise ConfigError("every colour must be used by at least one pair")
    perm = {cfg.colors.index(c): k for k, c in enumerate(order)}
    mat = [[-1 if i == j else perm[cfg.mat[i][j]] for j in range(n)] for i in range(n)]
    return DistanceConfiguration.from_matrix(mat, order)


def realization_to_json(real: MetricRealization) -> dict:
    out = config_to_json(real.config)
    out["values"] = dict(real.value_map)
    return out


def realization_from_json(data: dict) -> MetricRealization:
    from .config import realize
    cfg = config_from_json(data)
    vals = data.get("values")
    if vals is None:
        return realize(cfg)
    return realize(cfg, {str(k): _number(v) for k, v in vals.items()})


def _number(v):
    if isinstance(v, bool):
        raise ConfigError("distance values must be numbers")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            raise ConfigError(f"not a number: {v!r}") from None
    return float(v)


# --------------------------------------------------------------------------
# CSV distance matrices


def realization_from_csv(text: str, tol: float = 1e-9) -> MetricRealization:
    """n rows of n comma separated distances (symmetric, zero diagonal).

    Equal entries (up to relative ``tol``) become one colour, named
    ``d0, d1, ...`` in increasing distance.
    """
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(x.strip() for x in r)]
    n = len(rows)
    if n == 0:
        raise ConfigError("empty distance matrix")
    if any(len(r) != n for r in rows):
        raise ConfigError("distance matrix must be square")
    try:
        M = np.array([[float(x) for x in r] for r in rows], dtype=float)
    except ValueError as exc:
        raise ConfigError(f"malformed CSV distance matrix: {exc}") from None
    if np.any(M < 0) or not np.all(np.isfinite(M)):
        raise ConfigError("distances must be finite and nonnegative")
    if np.any(np.diag(M) != 0):
        raise ConfigError("distance matrix must have a zero diagonal")
    if not np.allclose(M, M.T, rtol=tol, atol=0):
        raise ConfigError("distance matrix must be symmetric")
    if n == 1:
        return MetricRealization(DistanceConfiguration.from_matrix([[-1]], []), ())
    pairs = colex_pairs(n)
    dist = np.array([M[i, j] for i, j in pairs])
    if dist.min() <= 0:
        raise ConfigError("off-diagonal distances must be positive")
    order = np.argsort(dist, kind="stable")
    group = np.empty(len(pairs), dtype=int)
    g, prev = 0, dist[order[0]]
    for pos in order:
        if dist[pos] - prev > tol * prev:
            g += 1
        group[pos] = g
        prev = dist[pos]
    vals = tuple(float(dist[group == k].mean()) for k in range(g + 1))
    mat = [[-1] * n for _ in range(n)]
    for (i, j), k in zip(pairs, group):
        mat[i][j] = mat[j][i] = int(k)
    cfg = DistanceConfiguration.from_matrix(mat, [f"d{k}" for k in range(g + 1)])
    return MetricRealization(cfg, vals)


# --------------------------------------------------------------------------
# point sets


def points_to_json(pts: PointSet) -> dict:
    return {"dim": pts.dim, "points": pts.coords.tolist()}


def points_from_json(data: dict) -> PointSet:
    try:
        dim = int(data["dim"])
        return PointSet(dim, np.array(data["points"], dtype=float).reshape(-1, dim))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"malformed point set JSON: {exc}") from None


def points_to_csv(pts: PointSet) -> str:
    return "".join(",".join(f"{fmt_float(x):.12g}" for x in row) + "\n" for row in pts.coords)


def load_input(path: str | Path, tol: float = 1e-9):
    """Read a configuration, realization or point set from a file.

    ``.csv`` files are distance matrices.  JSON with ``"points"`` is a point
    set (converted with :func:`from_points`); JSON with ``"values"`` is a
    realization; any other JSON is a bare configuration.  Returns either a
    :class:`MetricRealization` or a :class:`DistanceConfiguration`.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    if path.suffix.lower() == ".csv":
        return realization_from_csv(text, tol)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    if "points" in data:
        return from_points(points_from_json(data), tol)
    if "values" in data:
        return realization_from_json(data)
    return config_from_json(data)
