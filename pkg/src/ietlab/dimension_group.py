"""State-simplex iteration, Perron-Frobenius certificates and ergodicity
verdicts.

The state space of the dimension group attached to a multiplicity-matrix
sequence is approximated by the nested simplices spanned by the normalized
images of the dual basis vectors; its affine dimension counts linearly
independent invariant ergodic measures, and dimension one is unique
ergodicity.  Stationary sequences with a primitive block product are
certified strictly ergodic through an exact Collatz-Wielandt bracket around
the Perron eigenvalue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import intmat
from .errors import (FlipUnsupported, KeaneViolation, MaxIterExceeded,
                     NotIrreducible, NotPrimitive, Reducible,
                     SequenceTooShort, ZeroLine, ZeroVector)
from .iet import IETSpec
from .induction import (MatrixSequence, StationarityWitness,
                        detect_stationarity, induce)
from .intmat import IntMatrix


def collatz_wielandt(p: IntMatrix, x: Sequence):
    """min over supported coordinates of (Px)_i / x_i; coordinates with
    x_i = 0 are excluded.  A guaranteed lower bound on the Perron root."""
    if all(v == 0 for v in x):
        raise ZeroVector("Collatz-Wielandt needs a nonzero vector")
    px = intmat.mat_vec(p, x)
    ratios = []
    for num, den in zip(px, x):
        if den > 0:
            if isinstance(num, int) and isinstance(den, int):
                ratios.append(Fraction(num, den))
            else:
                ratios.append(num / den)
    return min(ratios)


def _max_ratio(p: IntMatrix, x: Sequence):
    px = intmat.mat_vec(p, x)
    return max(Fraction(num, den) for num, den in zip(px, x) if den > 0)


# ---------------------------------------------------------------------------
# cyclic structure / primitivity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicStructure:
    period: int
    block_permutation: tuple[tuple[int, ...], ...]   # 1-based vertex classes
    peripheral_spectrum_moduli: tuple[float, ...]


def _strongly_connected(p: IntMatrix) -> bool:
    n = len(p)

    def reach(transposed):
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in range(n):
                edge = p[v][u] if transposed else p[u][v]
                if edge and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    return len(reach(False)) == n and len(reach(True)) == n


def cyclic_structure(p: IntMatrix) -> CyclicStructure:
    """Period r = gcd of cycle lengths of the digraph of P, with the vertex
    classes of the cyclic normal form; r = 1 iff P is primitive."""
    n = len(p)
    if not _strongly_connected(p):
        raise NotIrreducible("digraph of P is not strongly connected")
    # BFS levels from vertex 0; the period is the gcd of the level defects
    level = {0: 0}
    queue = [0]
    order = []
    while queue:
        u = queue.pop(0)
        order.append(u)
        for v in range(n):
            if p[u][v] and v not in level:
                level[v] = level[u] + 1
                queue.append(v)
    r = 0
    for u in range(n):
        for v in range(n):
            if p[u][v]:
                r = math.gcd(r, level[u] + 1 - level[v])
    r = abs(r) or 1
    classes = tuple(tuple(v + 1 for v in range(n) if level[v] % r == c)
                    for c in range(r))
    eigs = np.linalg.eigvals(np.array(p, dtype=float))
    lam = float(np.max(np.abs(eigs)))
    peripheral = tuple(sorted(float(abs(e)) for e in eigs
                              if abs(e) >= lam * (1 - 1e-8)))
    return CyclicStructure(r, classes, peripheral)


def is_primitive(p: IntMatrix) -> bool:
    try:
        return cyclic_structure(p).period == 1
    except NotIrreducible:
        return False


# ---------------------------------------------------------------------------
# Perron-Frobenius with exact brackets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PFResult:
    eigenvalue: float
    eigenvector: tuple[float, ...]
    lower_cw: Fraction
    upper_cw: Fraction
    iterations: int
    residual: float
    history: tuple[tuple[Fraction, Fraction], ...] = ()


def perron_frobenius(p: IntMatrix, tol: float = 1e-12,
                     max_iter: int = 2000) -> PFResult:
    """Power iteration from the all-ones vector on exact integer vectors.

    The Collatz-Wielandt minimum and the max-ratio dual are computed as exact
    rationals at every step, so lower <= Perron root <= upper is guaranteed;
    iteration stops when the bracket width drops below tol.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not is_primitive(p):
        raise NotPrimitive("no power of P is strictly positive")
    n = len(p)
    x = (1,) * n
    history = []
    tol_f = Fraction(tol).limit_denominator(10 ** 18)
    for it in range(1, max_iter + 1):
        lower = collatz_wielandt(p, x)
        upper = _max_ratio(p, x)
        history.append((lower, upper))
        if upper - lower <= tol_f:
            total = sum(x)
            vec = tuple(v / total for v in map(float, x))
            lam = float((lower + upper) / 2)
            pv = intmat.mat_vec(p, vec)
            residual = float(sum(abs(a - lam * b) for a, b in zip(pv, vec)))
            return PFResult(lam, vec, lower, upper, it, residual,
                            tuple(history))
        x = intmat.mat_vec(p, x)
        g = math.gcd(*x)
        if g > 1:
            x = tuple(v // g for v in x)
    raise MaxIterExceeded(f"bracket wider than {tol} after {max_iter} iterations")


# ---------------------------------------------------------------------------
# state-simplex iteration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StateSpaceApprox:
    k: int
    columns: tuple[tuple[Fraction, ...], ...]   # L1-normalized, exact
    diameter: Fraction
    numeric_rank: int


def _simplex_columns(seq: MatrixSequence, k: int) -> list[tuple]:
    n = len(seq.matrices[0]) if seq.matrices else None
    if k > len(seq.matrices):
        raise SequenceTooShort(f"need {k} matrices, have {len(seq.matrices)}")
    if n is None:
        raise SequenceTooShort("empty sequence")
    v = intmat.identity(n)
    for m in seq.matrices[:k]:
        intmat.check_no_zero_line(m)
        v = intmat.mat_mul(v, intmat.transpose(m))
    cols = []
    for j in range(n):
        col = tuple(v[i][j] for i in range(n))
        total = sum(col)
        if total == 0:
            raise ZeroLine("zero column in the iterated product")
        cols.append(tuple(Fraction(c, total) for c in col))
    return cols


def _l1_diameter(cols) -> Fraction:
    diam = Fraction(0)
    for a in range(len(cols)):
        for b in range(a + 1, len(cols)):
            d = sum(abs(x - y) for x, y in zip(cols[a], cols[b]))
            diam = max(diam, d)
    return diam


def _affine_rank(cols, tol: float) -> int:
    arr = np.array([[float(x) for x in col] for col in cols], dtype=float).T
    centered = arr - arr.mean(axis=1, keepdims=True)
    s = np.linalg.svd(centered, compute_uv=False)
    return int(np.sum(s > tol))


def state_simplex(seq: MatrixSequence, k: int,
                  rank_tol: float = 1e-8) -> StateSpaceApprox:
    """Simplex spanned by the normalized images of the dual basis after the
    first k matrices; diameter is the exact maximal pairwise L1 distance."""
    cols = _simplex_columns(seq, k)
    diam = _l1_diameter(cols)
    rank = _affine_rank(cols, rank_tol) + 1
    return StateSpaceApprox(k, tuple(cols), diam, min(rank, len(cols)))


def estimate_state_dim(seq: MatrixSequence, k_max: int,
                       tol: float = 1e-8) -> int:
    """Numeric affine dimension of the column set at depth k_max: the number
    of independent invariant ergodic measures seen by the approximation."""
    k = min(k_max, len(seq.matrices))
    cols = _simplex_columns(seq, k)
    n = len(cols)
    if _l1_diameter(cols) < tol:
        return 1
    return min(_affine_rank(cols, tol) + 1, n)


# ---------------------------------------------------------------------------
# verdicts and closed-form counts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ErgodicityCertificate:
    witness: Optional[StationarityWitness]
    pf: Optional[PFResult]
    final_diameter: Optional[float]


@dataclass(frozen=True)
class ErgodicityVerdict:
    status: str          # StrictlyErgodic | LikelyErgodic | Inconclusive
    certificate: Optional[ErgodicityCertificate]
    state_dim_estimate: Optional[int]
    diagnostics: tuple[str, ...] = ()


def strict_ergodicity_verdict(spec: IETSpec, induction_depth: int = 40,
                              max_block: int = 12, min_repeats: int = 3,
                              tol: float = 1e-8,
                              pf_tol: float = 1e-12) -> ErgodicityVerdict:
    """Induce, look for a stationarity witness, certify via Perron-Frobenius;
    otherwise fall back to the state-dimension estimate.

    Only the stationary => strictly ergodic direction is proved, so
    non-stationary runs are never labeled beyond LikelyErgodic.
    """
    try:
        seq = induce(spec, induction_depth)
    except (KeaneViolation, Reducible, FlipUnsupported) as exc:
        step = getattr(exc, "step", None)
        diag = f"{type(exc).__name__} at step {step}: {exc}"
        return ErgodicityVerdict("Inconclusive", None, None, (diag,))

    witness = None
    try:
        witness = detect_stationarity(seq, max_block, min_repeats)
    except SequenceTooShort:
        pass

    diam = float(state_simplex(seq, len(seq.matrices)).diameter)
    if witness is not None and is_primitive(witness.block_product):
        pf = perron_frobenius(witness.block_product, pf_tol)
        cert = ErgodicityCertificate(witness, pf, diam)
        return ErgodicityVerdict("StrictlyErgodic", cert, 1)

    dim = estimate_state_dim(seq, len(seq.matrices), tol)
    cert = ErgodicityCertificate(witness, None, diam)
    if dim == 1:
        return ErgodicityVerdict("LikelyErgodic", cert, dim)
    return ErgodicityVerdict("Inconclusive", cert, dim,
                             (f"state dimension estimate {dim} > 1",))


def k_groups(n: int) -> tuple[int, int]:
    """Free ranks of (K0, K1) for the algebra of an n-interval exchange."""
    if n < 2:
        raise ValueError("need n >= 2 intervals")
    return (n, 1)


def measure_bounds(n: int, has_flips: bool) -> int:
    """Upper bound on the number of ergodic invariant measures: n + 2 with
    flips (Keane), floor(n / 2) for oriented transformations (Veech)."""
    if n < 2:
        raise ValueError("need n >= 2 intervals")
    return n + 2 if has_flips else n // 2
