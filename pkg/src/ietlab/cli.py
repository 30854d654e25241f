"""Command-line front end.

Every run emits a single result document embedding the fully resolved
configuration (seed included), so identical invocations replay to
byte-identical JSON.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import dimension_group as dg
from . import induction, iet, measures, rotation, serialize, symbolic
from .errors import IETLabError


def _fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _point(text: str):
    """Parse --x values: 'p/q' stays exact, otherwise float."""
    if "/" in text:
        return Fraction(text)
    return float(text)


def _matrix_arg(text: str):
    return serialize.matrix_from_json(json.loads(text))


# ---------------------------------------------------------------------------
# result builders, one per subcommand
# ---------------------------------------------------------------------------

def _run_eval(args):
    spec = serialize.load_spec(args.spec)
    x = _point(args.x)
    return {
        "x": float(x),
        "value": float(iet.evaluate(spec, x)),
        "interval_index": iet.interval_index(spec, x),
    }


def _run_orbit(args):
    spec = serialize.load_spec(args.spec)
    orb = iet.orbit(spec, _point(args.x), args.steps)
    return {
        "start": float(orb.start),
        "points": [float(p) for p in orb.points],
        "interval_indices": list(orb.interval_indices),
    }, orb


def _run_code(args):
    spec = serialize.load_spec(args.spec)
    ray = symbolic.code_orbit(spec, _point(args.x), args.steps)
    result = {"symbols": list(ray.symbols)}
    stats = None
    if args.stats_n:
        stats = [symbolic.block_stats(ray, n)
                 for n in range(1, args.stats_n + 1)]
        result["block_stats"] = [
            {"N": s.N, "p": s.distinct_blocks, "phi": s.transitivity,
             "theta": s.covering} for s in stats]
    return result, ray, stats


def _run_induce(args):
    spec = serialize.load_spec(args.spec)
    seq = induction.induce(spec, args.steps)
    return serialize.sequence_to_dict(seq)


def _run_stationary(args):
    spec = serialize.load_spec(args.spec)
    seq = induction.induce(spec, args.steps)
    w = induction.detect_stationarity(seq, args.max_block, args.min_repeats)
    if w is None:
        return {"witness": None}
    return {"witness": {
        "start": w.start,
        "block_length": w.block_length,
        "block_product": serialize.matrix_to_json(w.block_product),
        "repetitions_verified": w.repetitions_verified,
    }}


def _verdict_to_dict(v, seq=None):
    out = {"status": v.status, "state_dim_estimate": v.state_dim_estimate,
           "diagnostics": list(v.diagnostics)}
    if v.certificate is not None:
        c = v.certificate
        cert = {"final_diameter": c.final_diameter}
        if c.witness is not None:
            cert["witness"] = {
                "start": c.witness.start,
                "block_length": c.witness.block_length,
                "block_product": serialize.matrix_to_json(
                    c.witness.block_product),
                "repetitions_verified": c.witness.repetitions_verified,
            }
        if c.pf is not None:
            cert["pf"] = {
                "eigenvalue": c.pf.eigenvalue,
                "eigenvector": list(c.pf.eigenvector),
                "lower": _fraction_str(c.pf.lower_cw),
                "upper": _fraction_str(c.pf.upper_cw),
                "iterations": c.pf.iterations,
            }
        if seq is not None:
            cert["diameters"] = [
                float(dg.state_simplex(seq, k).diameter)
                for k in range(1, len(seq.matrices) + 1)]
        out["certificate"] = cert
    return out


def _run_ergodic(args):
    spec = serialize.load_spec(args.spec)
    verdict = dg.strict_ergodicity_verdict(
        spec, args.depth, args.max_block, tol=args.tol)
    seq = None
    if verdict.certificate is not None:
        try:
            seq = induction.induce(spec, args.depth)
        except IETLabError:
            seq = None
    return _verdict_to_dict(verdict, seq)


def _load_sequence(args):
    if args.matrices:
        return serialize.load_matrices(args.matrices)
    spec = serialize.load_spec(args.spec)
    return induction.induce(spec, args.depth)


def _run_simplex(args):
    seq = _load_sequence(args)
    k = args.k if args.k is not None else len(seq.matrices)
    approx = dg.state_simplex(seq, k)
    return {
        "k": approx.k,
        "columns": [[_fraction_str(x) for x in col] for col in approx.columns],
        "diameter": _fraction_str(approx.diameter),
        "diameter_float": float(approx.diameter),
        "numeric_rank": approx.numeric_rank,
    }


def _run_pf(args):
    m = _matrix_arg(args.matrix)
    res = dg.perron_frobenius(m, args.tol)
    return {
        "eigenvalue": res.eigenvalue,
        "eigenvector": list(res.eigenvector),
        "lower": _fraction_str(res.lower_cw),
        "upper": _fraction_str(res.upper_cw),
        "iterations": res.iterations,
        "residual": res.residual,
    }


def _run_rotation(args):
    seq = serialize.load_matrices(args.matrices)
    for m in seq.matrices:
        if len(m) != 2 or len(m[0]) != 2:
            raise IETLabError("rotation numbers need 2x2 matrices")
    mats = [rotation.MoebiusMatrix.from_rows(m) for m in seq.matrices]
    rn = rotation.rotation_number(mats, args.depth)
    result = {
        "convergents": [_fraction_str(c) for c in rn.convergents],
        "value": rn.value,
        "converged": rn.converged,
        "depth": rn.depth,
    }
    if args.surd:
        surd = rotation.detect_quadratic_surd(mats)
        result["surd"] = {
            "coefficients": list(surd.coefficients),
            "root_sign": surd.root_sign,
            "approx": surd.approx,
        }
    return result


def _run_measures(args, rng):
    spec = serialize.load_spec(args.spec)
    starts = [rng.random() for _ in range(args.starts)]
    census = measures.estimate_ergodic_count(
        spec, starts, args.steps, args.cluster_tol, args.bins)
    return {
        "starts": starts,
        "estimated_count": census.estimated_count,
        "bound": census.bound,
        "bound_respected": census.bound_respected,
        "non_minimal_flag": census.non_minimal_flag,
        "clusters": [
            {"members": count,
             "representative": {
                 "start": m.start,
                 "bin_edges": list(m.bin_edges),
                 "masses": list(m.masses),
             }} for m, count in census.clusters],
    }, census


def _run_bounds(args):
    return {"bound": dg.measure_bounds(args.n, args.flips)}


def _run_kgroups(args):
    k0, k1 = dg.k_groups(args.n)
    return {"k0_rank": k0, "k1_rank": k1}


def _run_surface(args):
    return {"parameters": [{"genus": g, "boundary_components": m}
                           for g, m in symbolic.surface_parameters(args.n)]}


# ---------------------------------------------------------------------------
# argument grammar
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ietlab",
        description="interval exchange transformations: orbits, induction, "
                    "ergodicity certificates, rotation numbers")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("--spec", required=True, help="IETSpec JSON file")
        p.add_argument("--out", help="output file (default: stdout, or "
                       "$IETLAB_OUT_DIR/<subcommand>.json)")
        p.add_argument("--format", choices=["json", "csv", "text"],
                       default="json")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("eval", help="apply the map to one point")
    common(p)
    p.add_argument("--x", required=True)

    p = sub.add_parser("orbit", help="iterate a point")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--steps", type=int, default=100)

    p = sub.add_parser("code", help="symbolic itinerary and block statistics")
    common(p)
    p.add_argument("--x", required=True)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--stats-n", type=int, default=0,
                   help="also report block stats for N = 1..this")

    p = sub.add_parser("induce", help="run renormalization steps")
    common(p)
    p.add_argument("--steps", type=int, default=40)

    p = sub.add_parser("stationary", help="search for a repeating block")
    common(p)
    p.add_argument("--steps", type=int, default=40)
    p.add_argument("--max-block", type=int, default=12)
    p.add_argument("--min-repeats", type=int, default=3)

    p = sub.add_parser("ergodic", help="strict-ergodicity verdict")
    common(p)
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--max-block", type=int, default=12)
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("simplex", help="state-simplex approximation")
    common(p, spec=False)
    p.add_argument("--spec", help="IETSpec JSON file (induced first)")
    p.add_argument("--matrices", help="matrix-sequence JSON file")
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--k", type=int)

    p = sub.add_parser("pf", help="Perron-Frobenius data of one matrix")
    common(p, spec=False)
    p.add_argument("--matrix", required=True,
                   help='JSON rows, e.g. "[[2,1],[1,1]]"')
    p.add_argument("--tol", type=float, default=1e-12)

    p = sub.add_parser("rotation", help="matrix continued fraction")
    common(p, spec=False)
    p.add_argument("--matrices", required=True,
                   help="2x2 matrix-sequence JSON file")
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--surd", action="store_true",
                   help="treat the sequence as periodic and solve exactly")

    p = sub.add_parser("measures", help="empirical-measure census")
    common(p)
    p.add_argument("--starts", type=int, default=16)
    p.add_argument("--steps", type=int, default=10 ** 5)
    p.add_argument("--bins", type=int, default=measures.DEFAULT_BINS)
    p.add_argument("--cluster-tol", type=float,
                   default=measures.DEFAULT_CLUSTER_TOL)

    p = sub.add_parser("bounds", help="ergodic-measure count bound")
    common(p, spec=False)
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--oriented", dest="flips", action="store_false")
    g.add_argument("--flips", dest="flips", action="store_true")

    p = sub.add_parser("kgroups", help="K-group free ranks")
    common(p, spec=False)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("surface", help="compatible surface parameters")
    common(p, spec=False)
    p.add_argument("--n", type=int, required=True)

    return parser


def _csv_payload(args, extra) -> str:
    if args.subcommand == "orbit":
        return serialize.orbit_to_csv(extra)
    if args.subcommand == "code" and extra is not None:
        return serialize.block_stats_to_csv(extra)
    if args.subcommand == "measures":
        return "".join(serialize.histogram_to_csv(m)
                       for m, _ in extra.clusters)
    raise IETLabError(f"no CSV form for subcommand {args.subcommand!r}")


def _text_payload(doc: dict) -> str:
    lines = [f"{doc['subcommand']}:"]
    for key, value in sorted(doc["result"].items()):
        lines.append(f"  {key}: {value}")
    return "\n".join(lines) + "\n"


def _write(args, payload: str) -> None:
    out = args.out
    if out is None and os.environ.get("IETLAB_OUT_DIR"):
        ext = "csv" if args.format == "csv" else args.format.replace("json", "json")
        out = os.path.join(os.environ["IETLAB_OUT_DIR"],
                           f"{args.subcommand}.{ext}")
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    rng = random.Random(args.seed)
    config = {k: v for k, v in sorted(vars(args).items())
              if k not in ("out",) and not callable(v)}

    try:
        extra = None
        if args.subcommand == "eval":
            result = _run_eval(args)
        elif args.subcommand == "orbit":
            result, extra = _run_orbit(args)
        elif args.subcommand == "code":
            result, _, extra = _run_code(args)
        elif args.subcommand == "induce":
            result = _run_induce(args)
        elif args.subcommand == "stationary":
            result = _run_stationary(args)
        elif args.subcommand == "ergodic":
            result = _run_ergodic(args)
        elif args.subcommand == "simplex":
            if not (args.spec or args.matrices):
                parser.error("simplex needs --spec or --matrices")
            result = _run_simplex(args)
        elif args.subcommand == "pf":
            result = _run_pf(args)
        elif args.subcommand == "rotation":
            result = _run_rotation(args)
        elif args.subcommand == "measures":
            result, extra = _run_measures(args, rng)
        elif args.subcommand == "bounds":
            result = _run_bounds(args)
        elif args.subcommand == "kgroups":
            result = _run_kgroups(args)
        else:
            result = _run_surface(args)
    except IETLabError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2

    doc = {"subcommand": args.subcommand, "config": config, "result": result}
    if args.format == "json":
        payload = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        try:
            payload = _csv_payload(args, extra)
        except IETLabError as exc:
            sys.stderr.write(f"usage error: {exc}\n")
            return 2
    else:
        payload = _text_payload(doc)
    _write(args, payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
