"""Interval exchange transformations with flips.

An IET is the triple (lambda, pi, epsilon): interval lengths summing to 1,
a permutation of {1..n} and orientation signs.  Domain intervals are the
half-open v_i = [beta_{i-1}, beta_i); the map sends v_i isometrically onto
the pi(i)-th target interval, reversing orientation when epsilon_i = -1.

A flipped branch maps x to beta_pi[pi(i)] - (x - beta[i-1]), with the left
endpoint of v_i remapped to the left endpoint of the target so the image
of every branch is again half-open and the map is a bijection of [0, 1).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (DomainError, LengthSumError, NonBijectivePermutation,
                     NonPositiveLength)
from .numbers import Quadratic, is_exact

FLOAT_SUM_TOL = 1e-12
KEANE_FLOAT_TOL = 1e-10  # collision tolerance, below drift of 1e4 isometry steps


def is_irreducible(pi: Sequence[int]) -> bool:
    """True iff no proper initial segment {1..k} is pi-invariant."""
    n = len(pi)
    top = 0
    for k in range(1, n):
        top = max(top, pi[k - 1])
        if top == k:
            return False
    return True


def _check_permutation(pi) -> tuple[int, ...]:
    pi = tuple(int(p) for p in pi)
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise NonBijectivePermutation(f"not a permutation of 1..{len(pi)}: {pi}")
    return pi


@dataclass(frozen=True)
class IETSpec:
    lengths: tuple
    pi: tuple[int, ...]
    signs: tuple[int, ...]
    mode: str                      # "exact" | "float"
    beta: tuple = field(repr=False)
    beta_pi: tuple = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.lengths)

    @property
    def oriented(self) -> bool:
        return all(s == 1 for s in self.signs)

    def pi_inverse(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, p in enumerate(self.pi, start=1):
            inv[p - 1] = i
        return tuple(inv)


def _cumulative(lengths, mode):
    beta = [0 if mode == "exact" else 0.0]
    acc = beta[0]
    for lam in lengths:
        acc = acc + lam
        beta.append(acc)
    if mode == "float":
        beta[-1] = 1.0  # pin the right endpoint against rounding
    return tuple(beta)


def validate(lengths, pi, signs=None, mode: Optional[str] = None) -> IETSpec:
    """Check and normalize raw (lengths, permutation, signs) into an IETSpec."""
    lengths = tuple(lengths)
    if len(lengths) < 1:
        raise NonPositiveLength("need at least one interval")
    pi = _check_permutation(pi)
    if len(pi) != len(lengths):
        raise NonBijectivePermutation("permutation size differs from lengths")
    if signs is None:
        signs = (1,) * len(lengths)
    signs = tuple(int(s) for s in signs)
    if len(signs) != len(lengths) or any(s not in (1, -1) for s in signs):
        raise NonBijectivePermutation("signs must be +1/-1, one per interval")

    if mode is None:
        mode = "exact" if all(is_exact(x) for x in lengths) else "float"
    if mode == "exact":
        lengths = tuple(Fraction(x) if isinstance(x, int) else x for x in lengths)
    else:
        lengths = tuple(float(x) for x in lengths)

    for lam in lengths:
        if not lam > 0:
            raise NonPositiveLength(f"non-positive length {lam!r}")
    total = sum(lengths)
    if mode == "exact":
        if total != 1:
            raise LengthSumError(f"lengths sum to {total}, expected 1")
    elif abs(total - 1.0) > FLOAT_SUM_TOL:
        raise LengthSumError(f"lengths sum to {total!r}, expected 1")

    beta = _cumulative(lengths, mode)
    inv = [0] * len(pi)
    for i, p in enumerate(pi, start=1):
        inv[p - 1] = i
    lengths_pi = tuple(lengths[j - 1] for j in inv)
    beta_pi = _cumulative(lengths_pi, mode)
    return IETSpec(lengths, pi, signs, mode, beta, beta_pi)


def interval_index(spec: IETSpec, x) -> int:
    """1-based index i with x in v_i = [beta_{i-1}, beta_i)."""
    if not (0 <= x < 1):
        raise DomainError(f"point {x!r} outside [0, 1)")
    i = bisect_right(spec.beta, x)
    return min(i, spec.n)


def evaluate(spec: IETSpec, x):
    """Apply the transformation to a point of [0, 1)."""
    if spec.mode == "float":
        x = float(x)
    elif isinstance(x, float):
        x = Fraction(x)
    i = interval_index(spec, x)
    j = spec.pi[i - 1]
    if spec.signs[i - 1] == 1:
        return x - spec.beta[i - 1] + spec.beta_pi[j - 1]
    if x == spec.beta[i - 1]:
        return spec.beta_pi[j - 1]
    r = spec.beta_pi[j] - (x - spec.beta[i - 1])
    if spec.mode == "float" and r >= spec.beta_pi[j]:
        r = math.nextafter(spec.beta_pi[j], 0.0)  # rounding pushed r onto the edge
    return r


def inverse(spec: IETSpec) -> IETSpec:
    """The inverse IET: exchanged lengths, inverted permutation, carried signs."""
    inv = spec.pi_inverse()
    lengths = tuple(spec.lengths[j - 1] for j in inv)
    signs = tuple(spec.signs[j - 1] for j in inv)
    return validate(lengths, inv, signs, mode=spec.mode)


@dataclass(frozen=True)
class Orbit:
    start: object
    points: tuple
    interval_indices: tuple[int, ...]


def orbit(spec: IETSpec, x0, n_steps: int) -> Orbit:
    """Forward orbit of length n_steps + 1 with per-step interval indices."""
    if n_steps < 0:
        raise DomainError("orbit length must be nonnegative")
    if spec.mode == "float":
        x0 = float(x0)
    elif isinstance(x0, float):
        x0 = Fraction(x0)
    pts = [x0]
    idx = []
    x = x0
    for _ in range(n_steps):
        idx.append(interval_index(spec, x))
        x = evaluate(spec, x)
        pts.append(x)
    idx.append(interval_index(spec, x))
    return Orbit(x0, tuple(pts), tuple(idx))


class KeaneStatus(Enum):
    HOLDS = "Holds"
    FAILS = "FailsAt"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class KeaneVerdict:
    status: KeaneStatus
    depth: int
    step: Optional[int] = None
    points: tuple = ()


def keane_condition(spec: IETSpec, depth: int,
                    tol: float = KEANE_FLOAT_TOL) -> KeaneVerdict:
    """Finite-depth i.d.o.c. check.

    Iterates the discontinuities beta_1..beta_{n-1} forward and reports a
    collision when an iterate lands on (exact mode) or within `tol` of
    (float mode) another discontinuity.  Step s means the (s+1)-th image
    collides.  Float-mode collisions are reported Inconclusive because
    rounding cannot distinguish a true hit from a near miss.
    """
    disc = list(spec.beta[1:-1])
    if not disc:
        return KeaneVerdict(KeaneStatus.HOLDS, depth)
    exact = spec.mode == "exact"
    pts = list(disc)
    for s in range(depth):
        pts = [evaluate(spec, p) for p in pts]
        for p in pts:
            if exact:
                if p in disc:
                    return KeaneVerdict(KeaneStatus.FAILS, depth, s, tuple(pts))
            else:
                if any(abs(p - d) <= tol for d in disc):
                    return KeaneVerdict(KeaneStatus.INCONCLUSIVE, depth, s,
                                        tuple(pts))
    return KeaneVerdict(KeaneStatus.HOLDS, depth)
