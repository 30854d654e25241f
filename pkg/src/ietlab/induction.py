"""Rauzy-Veech induction, multiplicity-matrix sequences and Bratteli diagrams.

Induction is performed on a two-row state (top order, bottom order, lengths
per letter).  Working in letter coordinates keeps every emitted multiplicity
matrix elementary (identity plus a single off-diagonal 1) and makes the
length-recovery relation

    lambda_original  proportional to  M_1 * ... * M_K * lambda_K

hold exactly, with lambda_K the final lengths in letter order
(``MatrixSequence.final_lengths``).  ``rauzy_step`` additionally reports the
matrix in the positional convention of the returned spec, so that
old-lambda = M * new-lambda holds against the new spec's length vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import intmat
from .errors import (BadCutPoints, FlipUnsupported, KeaneViolation, Reducible,
                     SequenceTooShort, ZeroLine)
from .iet import IETSpec, is_irreducible, validate
from .intmat import IntMatrix


@dataclass(frozen=True)
class MatrixSequence:
    """Ordered multiplicity matrices with per-step Rauzy type tags."""
    matrices: tuple[IntMatrix, ...]
    tags: tuple[str, ...]
    final_lengths: Optional[tuple] = None     # letter order, normalized
    final_top: Optional[tuple[int, ...]] = None
    final_bottom: Optional[tuple[int, ...]] = None

    def __len__(self):
        return len(self.matrices)


@dataclass(frozen=True)
class StationarityWitness:
    start: int
    block_length: int
    block_product: IntMatrix
    repetitions_verified: int


class _RauzyState:
    """Two-row induction state over letters 1..n."""

    def __init__(self, spec: IETSpec):
        if not spec.oriented:
            raise FlipUnsupported("Rauzy induction needs an oriented IET")
        if not is_irreducible(spec.pi):
            raise Reducible(f"permutation {spec.pi} is reducible")
        n = spec.n
        self.n = n
        self.top = list(range(1, n + 1))
        self.bottom = [0] * n
        for i, p in enumerate(spec.pi, start=1):
            self.bottom[p - 1] = i
        self.lengths = {i: spec.lengths[i - 1] for i in self.top}
        self.mode = spec.mode

    def step(self) -> tuple[IntMatrix, str]:
        t, b = self.top[-1], self.bottom[-1]
        if t == b:
            raise Reducible("last letters coincide")
        lt, lb = self.lengths[t], self.lengths[b]
        if lt == lb:
            raise KeaneViolation("competing lengths are equal")
        if lt > lb:
            tag = "a"
            self.lengths[t] = lt - lb
            self.bottom.pop()
            self.bottom.insert(self.bottom.index(t) + 1, b)
            m = intmat.elementary(self.n, t - 1, b - 1)
        else:
            tag = "b"
            self.lengths[b] = lb - lt
            self.top.pop()
            self.top.insert(self.top.index(b) + 1, t)
            m = intmat.elementary(self.n, b - 1, t - 1)
        total = sum(self.lengths.values())
        for k in self.lengths:
            self.lengths[k] = self.lengths[k] / total
        return m, tag

    def to_spec(self) -> IETSpec:
        lengths = tuple(self.lengths[ell] for ell in self.top)
        pi = tuple(self.bottom.index(ell) + 1 for ell in self.top)
        return validate(lengths, pi, mode=self.mode)

    def letter_lengths(self) -> tuple:
        return tuple(self.lengths[ell] for ell in range(1, self.n + 1))


def rauzy_step(spec: IETSpec) -> tuple[IETSpec, IntMatrix, str]:
    """One induction step: induced spec, positional matrix, type tag."""
    state = _RauzyState(spec)
    m_letter, tag = state.step()
    new_spec = state.to_spec()
    # relabeling matrix: letter vector = R * positional vector of the new spec
    n = spec.n
    relabel = tuple(tuple(1 if state.top[i] == ell + 1 else 0 for i in range(n))
                    for ell in range(n))
    return new_spec, intmat.mat_mul(m_letter, relabel), tag


def induce(spec: IETSpec, steps: int) -> MatrixSequence:
    """Run `steps` Rauzy steps, emitting the elementary matrix sequence.

    Failures are re-raised with `.step` and `.partial` (the sequence built so
    far) attached.
    """
    state = _RauzyState(spec)
    matrices: list[IntMatrix] = []
    tags: list[str] = []
    for k in range(steps):
        try:
            m, tag = state.step()
        except (KeaneViolation, Reducible) as exc:
            exc.step = k
            exc.partial = MatrixSequence(tuple(matrices), tuple(tags),
                                         state.letter_lengths(),
                                         tuple(state.top), tuple(state.bottom))
            raise
        matrices.append(m)
        tags.append(tag)
    return MatrixSequence(tuple(matrices), tuple(tags), state.letter_lengths(),
                          tuple(state.top), tuple(state.bottom))


def telescope(seq: MatrixSequence, cut_points: Sequence[int]) -> MatrixSequence:
    """Group the sequence into blocks ending at the given cut points and
    replace each block by its ordered product.  A trailing partial block is
    kept so the total product is conserved."""
    cuts = list(cut_points)
    if any(c2 <= c1 for c1, c2 in zip(cuts, cuts[1:])):
        raise BadCutPoints("cut points must be strictly increasing")
    if cuts and (cuts[0] < 1 or cuts[-1] > len(seq)):
        raise BadCutPoints(f"cut points must lie in 1..{len(seq)}")
    if not cuts or cuts[-1] < len(seq):
        cuts.append(len(seq))
    matrices, tags = [], []
    lo = 0
    for hi in cuts:
        matrices.append(intmat.product(seq.matrices[lo:hi]))
        tags.append("".join(seq.tags[lo:hi]))
        lo = hi
    return MatrixSequence(tuple(matrices), tuple(tags), seq.final_lengths,
                          seq.final_top, seq.final_bottom)


def detect_stationarity(seq: MatrixSequence, max_block: int = 12,
                        min_repeats: int = 3) -> Optional[StationarityWitness]:
    """Search for a repeating block product.

    Exhaustive over block lengths 1..max_block and phases 0..L-1; returns the
    witness with the smallest block length, earliest start on ties, or None.
    """
    if min_repeats < 1 or max_block < 1:
        raise SequenceTooShort("max_block and min_repeats must be >= 1")
    effective_max = min(max_block, len(seq) // min_repeats)
    if effective_max < 1:
        raise SequenceTooShort(
            f"{len(seq)} matrices cannot hold {min_repeats} blocks")
    for length in range(1, effective_max + 1):
        best = None
        for phase in range(length):
            products = [intmat.product(seq.matrices[s:s + length])
                        for s in range(phase, len(seq) - length + 1, length)]
            if min_repeats == 1 and products:
                cand = StationarityWitness(phase, length, products[0], 1)
                if best is None or cand.start < best.start:
                    best = cand
                continue
            run_start, run = 0, 1
            for i in range(1, len(products)):
                if products[i] == products[i - 1]:
                    run += 1
                else:
                    run_start, run = i, 1
                if run >= min_repeats:
                    # extend the run to its full length
                    while (i + 1 < len(products)
                           and products[i + 1] == products[i]):
                        i += 1
                        run += 1
                    cand = StationarityWitness(phase + run_start * length,
                                               length, products[run_start], run)
                    if best is None or cand.start < best.start:
                        best = cand
                    break
        if best is not None:
            return best
    return None


def simplicity_check(seq: MatrixSequence, window: int) -> bool:
    """True iff some product of <= window consecutive matrices is strictly
    positive (primitivity surrogate for simplicity)."""
    if not seq.matrices:
        raise SequenceTooShort("empty sequence")
    for start in range(len(seq)):
        acc = None
        for w in range(1, min(window, len(seq) - start) + 1):
            m = seq.matrices[start + w - 1]
            acc = m if acc is None else intmat.mat_mul(acc, m)
            if intmat.is_strictly_positive(acc):
                return True
    return False


# ---------------------------------------------------------------------------
# 0/1 factorization and Bratteli diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BratteliDiagram:
    """Explicit 0/1 edge matrices, grouped per input multiplicity matrix."""
    blocks: tuple[tuple[IntMatrix, ...], ...]
    level_sizes: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        sizes = [len(self.blocks[0][0])]
        for block in self.blocks:
            for f in block:
                sizes.append(len(f[0]))
        object.__setattr__(self, "level_sizes", tuple(sizes))

    def all_factors(self) -> tuple[IntMatrix, ...]:
        return tuple(f for block in self.blocks for f in block)

    def block_products(self) -> tuple[IntMatrix, ...]:
        return tuple(intmat.product(block) for block in self.blocks)

    def to_dot(self) -> str:
        lines = ["digraph bratteli {", "  rankdir=TB;"]
        factors = self.all_factors()
        for lvl, size in enumerate(self.level_sizes):
            for v in range(size):
                lines.append(f'  "L{lvl}_{v}" [label="{v + 1}"];')
        for lvl, f in enumerate(factors):
            for i, row in enumerate(f):
                for j, e in enumerate(row):
                    if e:
                        lines.append(f'  "L{lvl}_{i}" -> "L{lvl + 1}_{j}";')
        lines.append("}")
        return "\n".join(lines)


def _peel_elementary(m: IntMatrix) -> tuple[list[IntMatrix], IntMatrix]:
    """Split off factors I + E_{ij} (subtract row j from row i) greedily."""
    n = len(m)
    rows = [list(r) for r in m]
    factors: list[IntMatrix] = []
    while True:
        if all(v in (0, 1) for r in rows for v in r):
            break
        best = None
        for i in range(n):
            for j in range(n):
                if i == j or rows[i] == rows[j]:
                    continue
                if all(x >= y for x, y in zip(rows[i], rows[j])):
                    weight = sum(rows[j])
                    if best is None or weight > best[0]:
                        best = (weight, i, j)
        if best is None:
            break
        _, i, j = best
        factors.append(intmat.elementary(n, i, j))
        rows[i] = [x - y for x, y in zip(rows[i], rows[j])]
    return factors, tuple(tuple(r) for r in rows)


def _binary_split(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Write m = B * C with B a 0/1 matrix and C of roughly half the height
    of m's entries.  Both factors keep nonzero rows and columns."""
    n, p = len(m), len(m[0])
    low = [[v & 1 for v in row] for row in m]
    high = [[v >> 1 for v in row] for row in m]
    keep_low_cols = [j for j in range(p) if any(low[i][j] for i in range(n))]
    keep_high_rows = [i for i in range(n) if any(high[i])]
    b_rows = []
    for i in range(n):
        row = [low[i][j] for j in keep_low_cols]
        row += [1 if i == r else 0 for r in keep_high_rows]
        row += [1 if i == r else 0 for r in keep_high_rows]
        b_rows.append(row)
    c_rows = [[1 if j == k else 0 for k in range(p)] for j in keep_low_cols]
    c_rows += [list(high[i]) for i in keep_high_rows]
    c_rows += [list(high[i]) for i in keep_high_rows]
    return (tuple(tuple(r) for r in b_rows), tuple(tuple(r) for r in c_rows))


def factor_zero_one(m: IntMatrix) -> list[IntMatrix]:
    """Factor a nonnegative integer matrix without zero lines into 0/1
    matrices whose ordered product equals it.

    Elementary row peeling is tried first (it keeps all factors square and
    handles every product of Rauzy matrices); the rectangular doubling
    construction covers the rest.
    """
    intmat.check_no_zero_line(m)
    factors, rest = _peel_elementary(m)
    while not intmat.is_zero_one(rest):
        b, rest = _binary_split(rest)
        factors.append(b)
    factors.append(rest)
    return factors


def to_bratteli(seq: MatrixSequence) -> BratteliDiagram:
    """Replace each multiplicity matrix by explicit 0/1 edge factors."""
    blocks = []
    for m in seq.matrices:
        blocks.append(tuple(factor_zero_one(m)))
    return BratteliDiagram(tuple(blocks))
