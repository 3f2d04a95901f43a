"""Isomorph-free enumeration of distance configurations and theorem sweeps.

Enumeration is orderly generation, vertex by vertex.  Canonical forms are
lexicographically least edge vectors with pairs in colex order, so the
restriction of a canonical colouring to its first ``m`` vertices is again
canonical.  Hence every canonical configuration on ``n`` points extends a
canonical one on ``n - 1`` points by one new row of colours; each candidate
row is kept iff the extended vector is canonical.  No isomorph lookup table
is needed and every orbit is produced exactly once.
"""
from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .canon import canonical_mask
from .config import ConfigError, DistanceConfiguration


class BudgetExceeded(ConfigError):
    """The requested enumeration is larger than the desk-scale budget."""


@dataclass(frozen=True)
class EnumSpec:
    n: int
    max_colors: int
    exact_colors: int | None = None

    def __post_init__(self):
        n, c = self.n, self.max_colors
        if n < 2:
            raise ConfigError("enumeration needs n >= 2")
        if c < 1:
            raise ConfigError("max_colors must be >= 1")
        if self.exact_colors is not None and not 1 <= self.exact_colors <= c:
            raise ConfigError("exact_colors must lie in 1..max_colors")
        ok = n <= 4 or (c <= 2 and n <= 7) or (c <= 3 and n <= 6)
        if not ok:
            raise BudgetExceeded(
                f"n={n} with up to {c} colours exceeds the budget "
                "(n <= 7 for 2 colours, n <= 6 for 3 colours, any colours for n <= 4)")


def _rows(prefix_colors: int, length: int, cmax: int):
    """Colour rows that respect first-occurrence order of colours."""
    def rec(i, used, row):
        if i == length:
            yield tuple(row)
            return
        for c in range(min(used + 1, cmax)):
            row.append(c)
            yield from rec(i + 1, max(used, c + 1), row)
            row.pop()
    yield from rec(0, prefix_colors, [])


def _extend(vectors: list[tuple[int, ...]], m: int, cmax: int) -> list[tuple[int, ...]]:
    """Canonical colourings on m points extending canonical ones on m - 1."""
    out: list[tuple[int, ...]] = []
    for parent in vectors:
        used = 1 + max(parent, default=-1)
        kids = [parent + row for row in _rows(used, m - 1, cmax)]
        if not kids:
            continue
        mask = canonical_mask(np.array(kids, dtype=np.int8), m, cmax)
        out.extend(k for k, keep in zip(kids, mask) if keep)
    return out


@lru_cache(maxsize=16)
def canonical_vectors(n: int, cmax: int) -> tuple[tuple[int, ...], ...]:
    """Canonical edge vectors on n points with at most cmax colours."""
    if n <= 2:
        return ((),) if n == 1 else ((0,),)
    return tuple(_extend(list(canonical_vectors(n - 1, cmax)), n, cmax))


def enumerate_configs(spec: EnumSpec) -> Iterator[DistanceConfiguration]:
    """One canonical representative per (vertex x colour permutation) orbit."""
    for vec in canonical_vectors(spec.n, spec.max_colors):
        c = 1 + max(vec)
        if spec.exact_colors is not None and c != spec.exact_colors:
            continue
        yield DistanceConfiguration.from_vector(spec.n, vec, [f"c{k}" for k in range(c)])


# --------------------------------------------------------------------------
# sweeps


@dataclass
class SweepReport:
    n: int
    max_colors: int
    exact_colors: int | None
    total: int = 0
    counts: dict[str, dict[str, int]] = field(default_factory=dict)
    tallies: dict[str, dict[str, int]] = field(default_factory=dict)
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "n": self.n, "max_colors": self.max_colors, "exact_colors": self.exact_colors,
            "total": self.total, "ok": self.ok,
            "counts": self.counts, "tallies": self.tallies,
            "counterexamples": self.counterexamples,
        }


def _run_chunk(args):
    from .checks import run_checks
    vectors, n, checks = args
    results = []
    for vec in vectors:
        c = 1 + max(vec)
        cfg = DistanceConfiguration.from_vector(n, vec, [f"c{k}" for k in range(c)])
        results.append(run_checks(cfg, checks))
    return results


def default_jobs() -> int:
    env = os.environ.get("ISOSEQ_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def sweep(spec: EnumSpec, checks: Sequence[str], jobs: int = 1) -> SweepReport:
    """Run the named checks on every enumerated configuration.

    The result does not depend on ``jobs``: configurations are split into
    contiguous chunks, results come back in order and are merged in order.
    """
    from .checks import CHECKS
    checks = list(checks)
    if not checks:
        raise ConfigError("at least one check is required")
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ConfigError(f"unknown check identifiers: {unknown}")
    vectors = [v for v in canonical_vectors(spec.n, spec.max_colors)
               if spec.exact_colors is None or 1 + max(v) == spec.exact_colors]
    report = SweepReport(spec.n, spec.max_colors, spec.exact_colors, total=len(vectors))
    for name in checks:
        report.counts[name] = {"passed": 0, "failed": 0, "not_applicable": 0}
    chunk = max(1, len(vectors) // (4 * max(jobs, 1)) or 1)
    parts = [(vectors[i:i + chunk], spec.n, checks) for i in range(0, len(vectors), chunk)]
    if jobs > 1 and len(parts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_run_chunk, parts))
    else:
        chunks = [_run_chunk(p) for p in parts]
    for (vecs, _, _), results in zip(parts, chunks):
        for vec, res in zip(vecs, results):
            for name in checks:
                outcome = res[name]
                status = outcome.status
                report.counts[name][status] += 1
                if outcome.tag is not None:
                    t = report.tallies.setdefault(name, {})
                    t[outcome.tag] = t.get(outcome.tag, 0) + 1
                if status == "failed":
                    c = 1 + max(vec)
                    cfg = DistanceConfiguration.from_vector(spec.n, vec, [f"c{k}" for k in range(c)])
                    from .io import config_to_json
                    report.counterexamples.append(
                        {"check": name, "config": config_to_json(cfg), "details": outcome.details})
    for name in report.tallies:
        report.tallies[name] = dict(sorted(report.tallies[name].items()))
    report.counterexamples.sort(key=lambda r: (r["check"], json.dumps(r["config"], sort_keys=True)))
    return report


def naive_orbit_count(n: int, exact_colors: int) -> int:
    """Orbit count by brute force over all colourings (independent test oracle)."""
    from .config import colex_pairs
    pairs = colex_pairs(n)
    pos = {p: k for k, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    seen = set()
    for vec in itertools.product(range(exact_colors), repeat=len(pairs)):
        if len(set(vec)) != exact_colors:
            continue
        images = []
        for perm in perms:
            w = tuple(vec[pos[tuple(sorted((perm[i], perm[j])))]] for i, j in pairs)
            for cp in itertools.permutations(range(exact_colors)):
                images.append(tuple(cp[x] for x in w))
        seen.add(min(images))
    return len(seen)
