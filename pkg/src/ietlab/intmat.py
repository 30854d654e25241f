"""Small exact integer matrix helpers (arbitrary precision, tuple-based).

Matrices are tuples of row tuples of Python ints; sizes here are tiny
(n <= a few dozen), so exactness beats vectorization.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ZeroLine

IntMatrix = tuple[tuple[int, ...], ...]


def mat(rows: Sequence[Sequence[int]], nonnegative: bool = True) -> IntMatrix:
    m = tuple(tuple(int(v) for v in row) for row in rows)
    if not m or any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged or empty matrix")
    if nonnegative and any(v < 0 for row in m for v in row):
        raise ValueError("negative entry in nonnegative matrix")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def elementary(n: int, i: int, j: int) -> IntMatrix:
    """Identity plus a single 1 at (i, j), 0-based, i != j."""
    return tuple(tuple((1 if r == c else 0) + (1 if (r, c) == (i, j) else 0)
                       for c in range(n)) for r in range(n))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def mat_vec(a: IntMatrix, v: Sequence) -> tuple:
    if len(a[0]) != len(v):
        raise ValueError("dimension mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a))


def product(ms: Sequence[IntMatrix]) -> IntMatrix:
    if not ms:
        raise ValueError("empty product")
    acc = ms[0]
    for m in ms[1:]:
        acc = mat_mul(acc, m)
    return acc


def is_strictly_positive(a: IntMatrix) -> bool:
    return all(v > 0 for row in a for v in row)


def is_zero_one(a: IntMatrix) -> bool:
    return all(v in (0, 1) for row in a for v in row)


def check_no_zero_line(a: IntMatrix) -> None:
    for i, row in enumerate(a):
        if not any(row):
            raise ZeroLine(f"row {i} is zero")
    for j in range(len(a[0])):
        if not any(row[j] for row in a):
            raise ZeroLine(f"column {j} is zero")
