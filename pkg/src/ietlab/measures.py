"""Empirical invariant measures: Birkhoff averages, orbit histograms and a
census of distinct measures seen from many starting points.

The census is an estimate, not a certification: empirical measures from
N-step orbits are clustered by L1 distance and the cluster count is compared
against the closed-form bounds on the number of ergodic invariant measures.
When the dynamics is visibly non-minimal (two starts exploring disjoint
regions) the bound comparison is reported informationally only, since the
bounds concern minimal transformations.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional, Sequence

from .dimension_group import measure_bounds
from .errors import DomainError
from .iet import IETSpec, evaluate

DEFAULT_BINS = 64
DEFAULT_CLUSTER_TOL = 0.05
_COARSE_BINS = 8


@dataclass(frozen=True)
class EmpiricalMeasure:
    bin_edges: tuple[float, ...]
    masses: tuple[float, ...]
    start: float
    iterates: int


@dataclass(frozen=True)
class MeasureCensus:
    clusters: tuple[tuple[EmpiricalMeasure, int], ...]
    estimated_count: int
    bound: int
    bound_respected: Optional[bool]   # None when the bound check is informational
    non_minimal_flag: bool


def _step_tables(spec: IETSpec):
    """Per-interval affine data for the float hot loop: (sign, offset, left
    endpoint, target edges)."""
    rows = []
    for i in range(spec.n):
        j = spec.pi[i]
        left = float(spec.beta[i])
        if spec.signs[i] == 1:
            rows.append((1.0, float(spec.beta_pi[j - 1]) - left, left,
                         float(spec.beta_pi[j - 1]), float(spec.beta_pi[j])))
        else:
            rows.append((-1.0, float(spec.beta_pi[j]) + left, left,
                         float(spec.beta_pi[j - 1]), float(spec.beta_pi[j])))
    return rows


def _orbit_histogram(spec: IETSpec, x0: float, n_steps: int,
                     edges: Sequence[float]) -> list[int]:
    """Bin counts of x0, phi(x0), ..., phi^{n_steps-1}(x0).

    Float arithmetic throughout; the loop is kept allocation-free because
    censuses run millions of steps.
    """
    beta = [float(b) for b in spec.beta[1:-1]]
    rows = _step_tables(spec)
    counts = [0] * (len(edges) - 1)
    last_bin = len(counts) - 1
    x = float(x0)
    br = bisect_right
    nxt = math.nextafter
    for _ in range(n_steps):
        b = br(edges, x) - 1
        counts[b if b <= last_bin else last_bin] += 1
        sign, off, left, tgt_lo, tgt_hi = rows[br(beta, x)]
        if sign > 0:
            x = x + off
        elif x == left:
            x = tgt_lo      # flipped branch keeps images half-open
        else:
            x = off - x
            if x >= tgt_hi:
                x = nxt(tgt_hi, 0.0)
            elif x < tgt_lo:
                x = tgt_lo      # rounding undershot the target interval
    return counts


def birkhoff_average(spec: IETSpec, x0, target_interval, n_steps: int) -> float:
    """Time average of the indicator of [lo, hi) over the first n_steps
    iterates of x0."""
    lo, hi = target_interval
    if not (0 <= lo < hi <= 1):
        raise DomainError(f"target interval [{lo}, {hi}) not inside [0, 1]")
    if n_steps < 1:
        raise DomainError("need at least one iterate")
    if spec.mode == "float":
        lo_f, hi_f = float(lo), float(hi)
        counts = _orbit_histogram(spec, float(x0), n_steps,
                                  [0.0, lo_f, hi_f, 1.0] if lo > 0
                                  else [0.0, hi_f, 1.0])
        hit = counts[1] if lo > 0 else counts[0]
        return hit / n_steps
    hits = 0
    x = x0
    for _ in range(n_steps):
        if lo <= x < hi:
            hits += 1
        x = evaluate(spec, x)
    return hits / n_steps


def _bin_edges(spec: IETSpec, bins: int) -> tuple[float, ...]:
    """Uniform grid refined by the discontinuity points beta_i."""
    grid = {i / bins for i in range(bins + 1)}
    grid.update(float(b) for b in spec.beta)
    return tuple(sorted(grid))


def empirical_measure(spec: IETSpec, x0, n_steps: int,
                      bins: int = DEFAULT_BINS) -> EmpiricalMeasure:
    """Normalized orbit histogram over a partition refining v_1..v_n."""
    if bins < spec.n:
        raise DomainError(f"need at least {spec.n} bins")
    if n_steps < 1:
        raise DomainError("need at least one iterate")
    edges = _bin_edges(spec, bins)
    if spec.mode == "float":
        counts = _orbit_histogram(spec, float(x0), n_steps, list(edges))
    else:
        counts = [0] * (len(edges) - 1)
        x = x0
        for _ in range(n_steps):
            b = min(bisect_right(edges, float(x)) - 1, len(counts) - 1)
            counts[b] += 1
            x = evaluate(spec, x)
    masses = tuple(c / n_steps for c in counts)
    return EmpiricalMeasure(edges, masses, float(x0), n_steps)


def _l1(a: EmpiricalMeasure, b: EmpiricalMeasure) -> float:
    return sum(abs(x - y) for x, y in zip(a.masses, b.masses))


def _misses_a_bin(m: EmpiricalMeasure, min_width: float = 1e-6) -> bool:
    """True when the orbit never visited some bin of non-negligible width.

    Minimal transformations have dense orbits, so after enough iterates every
    bin is hit; an untouched bin is the signature of a periodic component or
    an invariant subregion.
    """
    return any(mass == 0 and hi - lo > min_width
               for lo, hi, mass in zip(m.bin_edges, m.bin_edges[1:],
                                       m.masses))


def _coarse_support(m: EmpiricalMeasure, eps: float = 1e-9) -> frozenset:
    """Indices of coarse uniform cells carrying mass."""
    occupied = set()
    for (lo, hi), mass in zip(zip(m.bin_edges, m.bin_edges[1:]), m.masses):
        if mass > eps:
            mid = (lo + hi) / 2
            occupied.add(min(int(mid * _COARSE_BINS), _COARSE_BINS - 1))
    return frozenset(occupied)


def estimate_ergodic_count(spec: IETSpec, starts: Sequence, n_steps: int,
                           cluster_tol: float = DEFAULT_CLUSTER_TOL,
                           bins: int = DEFAULT_BINS) -> MeasureCensus:
    """Cluster the empirical measures from the given starts by single-linkage
    L1 distance and compare the cluster count to the measure-count bound.

    The bound comparison is skipped (bound_respected None) when the run looks
    non-minimal: some start never visits a bin, or two starts have disjoint
    coarse supports.
    """
    if len(starts) < 2:
        raise DomainError("need at least two starting points")
    ordered = sorted(starts, key=float)   # deterministic aggregation order
    measures = [empirical_measure(spec, x0, n_steps, bins) for x0 in ordered]

    # single-linkage union-find
    parent = list(range(len(measures)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(measures)):
        for j in range(i + 1, len(measures)):
            if _l1(measures[i], measures[j]) <= cluster_tol:
                parent[find(i)] = find(j)

    groups: dict = {}
    for i in range(len(measures)):
        groups.setdefault(find(i), []).append(i)
    clusters = tuple((measures[members[0]], len(members))
                     for _, members in sorted(groups.items(),
                                              key=lambda kv: min(kv[1])))

    supports = [_coarse_support(m) for m in measures]
    non_minimal = (any(_misses_a_bin(m) for m in measures)
                   or any(not (supports[i] & supports[j])
                          for i in range(len(supports))
                          for j in range(i + 1, len(supports))))

    bound = measure_bounds(spec.n, not spec.oriented) if spec.n >= 2 else 1
    respected = None if non_minimal else len(clusters) <= bound
    return MeasureCensus(clusters, len(clusters), bound, respected,
                         non_minimal)
