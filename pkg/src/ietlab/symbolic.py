"""Symbolic coding of orbits, the path-space metric and the Morse-Hedlund
transitivity/covering indices.

Rays are finite prefixes of itineraries through the interval partition.
"Admissible" blocks are taken relative to the observed language of the
analyzed prefix: all indices here are prefix-relative surrogates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import PrefixTooShort
from .iet import IETSpec, orbit


@dataclass(frozen=True)
class Ray:
    symbols: tuple[int, ...]

    def __len__(self):
        return len(self.symbols)


@dataclass(frozen=True)
class ForbiddenPairs:
    pairs: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class BlockStats:
    N: int
    distinct_blocks: int
    transitivity: Optional[int]
    covering: Optional[int]


def code_orbit(spec: IETSpec, x0, n_steps: int) -> Ray:
    """Itinerary of the forward orbit through the partition v_1..v_n."""
    return Ray(orbit(spec, x0, n_steps).interval_indices)


def path_distance(x: Ray, y: Ray) -> float:
    """1 / 2^k with k the longest common prefix length.

    Returns 0.0 when the rays agree on the whole available common prefix;
    that value is only a lower bound, since longer prefixes might differ.
    """
    limit = min(len(x), len(y))
    k = 0
    while k < limit and x.symbols[k] == y.symbols[k]:
        k += 1
    if k == limit:
        return 0.0
    return 0.5 ** k


def is_admissible(block: Sequence[int], forbidden: ForbiddenPairs) -> bool:
    """True iff no adjacent ordered pair of the block is forbidden."""
    return all((a, b) not in forbidden.pairs for a, b in zip(block, block[1:]))


def _factors(symbols: Sequence[int], n: int) -> set:
    return {tuple(symbols[i:i + n]) for i in range(len(symbols) - n + 1)}


def block_complexity(ray: Ray, n: int) -> int:
    """Number of distinct length-n factors of the prefix, p(n)."""
    if n < 1 or len(ray) < n:
        raise PrefixTooShort(f"need a prefix of length >= {n}")
    return len(_factors(ray.symbols, n))


def transitivity_index(ray: Ray, n: int) -> Optional[int]:
    """Length of the shortest initial segment containing every observed
    length-n factor of the prefix."""
    if n < 1 or len(ray) < n:
        raise PrefixTooShort(f"need a prefix of length >= {n}")
    wanted = _factors(ray.symbols, n)
    seen = set()
    for i in range(len(ray) - n + 1):
        seen.add(tuple(ray.symbols[i:i + n]))
        if len(seen) == len(wanted):
            return i + n
    return None


def covering_index(ray: Ray, n: int) -> Optional[int]:
    """Length of the shortest window anywhere in the prefix containing every
    observed length-n factor."""
    if n < 1 or len(ray) < n:
        raise PrefixTooShort(f"need a prefix of length >= {n}")
    symbols = ray.symbols
    wanted = _factors(symbols, n)
    p = len(wanted)

    def window_covers(length: int) -> bool:
        counts: dict = {}
        distinct = 0
        m = len(symbols) - n + 1
        span = length - n + 1   # factors starting inside one window
        for i in range(m):
            f = tuple(symbols[i:i + n])
            counts[f] = counts.get(f, 0) + 1
            if counts[f] == 1:
                distinct += 1
            if i >= span:
                g = tuple(symbols[i - span:i - span + n])
                counts[g] -= 1
                if counts[g] == 0:
                    distinct -= 1
            if i >= span - 1 and distinct == p:
                return True
        return False

    lo, hi = p + n - 1, len(symbols)
    if not window_covers(hi):
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        if window_covers(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def uniformity_ratio(ray: Ray, n_max: int) -> list[float]:
    """Ratios phi(N)/theta(N) for N = 1..n_max where both are defined."""
    if len(ray) < n_max:
        raise PrefixTooShort(f"need a prefix of length >= {n_max}")
    ratios = []
    for n in range(1, n_max + 1):
        phi = transitivity_index(ray, n)
        theta = covering_index(ray, n)
        if phi is not None and theta is not None:
            ratios.append(phi / theta)
    return ratios


def uniform_distribution_test(ray: Ray, n: int) -> bool:
    """True iff phi(N) equals k*N with k the number of observed blocks."""
    phi = transitivity_index(ray, n)
    if phi is None:
        raise PrefixTooShort("prefix is not transitive at this length")
    return phi == block_complexity(ray, n) * n


def block_stats(ray: Ray, n: int) -> BlockStats:
    return BlockStats(n, block_complexity(ray, n), transitivity_index(ray, n),
                      covering_index(ray, n))


def surface_parameters(n: int) -> list[tuple[int, int]]:
    """All (genus, boundary components) with 2g + m - 1 = n, g, m >= 1 and
    negative Euler characteristic."""
    if n < 2:
        raise ValueError("need n >= 2")
    out = []
    for g in range(1, n // 2 + 1):
        m = n + 1 - 2 * g
        if m >= 1 and 2 - 2 * g - m < 0:
            out.append((g, m))
    return out
