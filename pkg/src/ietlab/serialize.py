"""JSON / CSV interchange for specs, matrix sequences and results.

Exact rationals travel as "p/q" strings and matrix entries as decimal
strings, so arbitrary precision survives the round trip; float-mode values
use Python's shortest round-trip repr.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Sequence, Union

from .iet import IETSpec, Orbit, validate
from .induction import MatrixSequence
from .intmat import mat
from .numbers import Quadratic, quad


def scalar_to_json(x) -> Union[str, float, dict]:
    if isinstance(x, Quadratic):
        return {"a": str(x.a), "b": str(x.b), "d": x.d}
    if isinstance(x, (Fraction, int)):
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}"
    return float(x)


def scalar_from_json(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, dict):
        return quad(Fraction(v["a"]), Fraction(v["b"]), int(v["d"]))
    return float(v)


def spec_to_dict(spec: IETSpec) -> dict:
    return {
        "lambda": [scalar_to_json(x) for x in spec.lengths],
        "pi": list(spec.pi),
        "epsilon": list(spec.signs),
        "mode": spec.mode,
    }


def spec_from_dict(data: dict) -> IETSpec:
    lengths = [scalar_from_json(v) for v in data["lambda"]]
    return validate(lengths, data["pi"], data.get("epsilon"),
                    mode=data.get("mode"))


def load_spec(path: str) -> IETSpec:
    with open(path) as fh:
        return spec_from_dict(json.load(fh))


def save_spec(spec: IETSpec, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(spec_to_dict(spec), fh, indent=2, sort_keys=True)
        fh.write("\n")


def matrix_to_json(m) -> list:
    return [[str(v) for v in row] for row in m]


def matrix_from_json(rows) -> tuple:
    return mat([[int(v) for v in row] for row in rows])


def sequence_to_dict(seq: MatrixSequence) -> dict:
    out = {
        "matrices": [matrix_to_json(m) for m in seq.matrices],
        "tags": list(seq.tags),
    }
    if seq.final_lengths is not None:
        out["final_lengths"] = [scalar_to_json(x) for x in seq.final_lengths]
    return out


def sequence_from_dict(data: dict) -> MatrixSequence:
    matrices = tuple(matrix_from_json(m) for m in data["matrices"])
    tags = tuple(data.get("tags") or ("?",) * len(matrices))
    return MatrixSequence(matrices, tags)


def load_matrices(path: str) -> MatrixSequence:
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, list):       # bare array of matrices
        data = {"matrices": data}
    return sequence_from_dict(data)


def orbit_to_csv(orb: Orbit) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["step", "x", "interval_index"])
    for step, (x, idx) in enumerate(zip(orb.points, orb.interval_indices)):
        w.writerow([step, float(x), idx])
    return buf.getvalue()


def block_stats_to_csv(rows: Sequence) -> str:
    """BlockStats rows as (N, p, phi, theta, ratio) CSV."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["N", "p", "phi", "theta", "ratio"])
    for s in rows:
        ratio = (s.transitivity / s.covering
                 if s.transitivity is not None and s.covering else "")
        w.writerow([s.N, s.distinct_blocks,
                    "" if s.transitivity is None else s.transitivity,
                    "" if s.covering is None else s.covering, ratio])
    return buf.getvalue()


def histogram_to_csv(measure) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["bin_lo", "bin_hi", "mass"])
    for lo, hi, mass in zip(measure.bin_edges, measure.bin_edges[1:],
                            measure.masses):
        w.writerow([lo, hi, mass])
    return buf.getvalue()
