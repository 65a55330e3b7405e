"""Command-line front end.

Exit codes: 0 success / inside, 1 outside or negative verdict, 2 usage or
parse error, 3 violated precondition, 4 numerical failure. Every run logs
its fully-resolved configuration as JSON to stderr, and file outputs carry
the tool version plus a hash of that configuration.
"""

import argparse
import hashlib
import json
import os
import sys

import numpy as np

from . import __version__
from .errors import (
    AmbiguousNullspace,
    ConditionViolated,
    DiscotopeError,
    NoEquation,
    NotConverged,
    SpecValidationError,
    Undersampled,
)
from .critical import load_cloud, sample_S, sample_join
from .faces import face_of_direction
from .fixtures import FIXTURES, verify_fixture
from .geometry import gradient_support, load_discotope, support_discotope
from .implicit import count_terms, find_implicit, save_polynomial
from .linalg import unit_direction
from .membership import project

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_NUMERICAL = 4

PARITY_MAP = {"none": "none", "even-total": "even_total", "even-each": "even_each_variable"}


def _apply_thread_cap():
    """Cap BLAS parallelism per DISCOKIT_THREADS (0 or unset = automatic)."""
    raw = os.environ.get("DISCOKIT_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        return None
    if n > 0:
        try:
            from threadpoolctl import threadpool_limits

            threadpool_limits(limits=n)
        except ImportError:
            for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
                os.environ.setdefault(var, str(n))
    return n


def _config_hash(cfg):
    blob = json.dumps({k: v for k, v in cfg.items() if k != "out"}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _log_config(cfg):
    print(json.dumps({"resolved_config": cfg, "version": __version__}, sort_keys=True),
          file=sys.stderr)


def _parse_vector(text):
    try:
        return np.array([float(v) for v in text.split(",")], dtype=float)
    except ValueError:
        raise SpecValidationError(f"cannot parse vector {text!r} (expected comma-separated floats)")


def _parse_seed(text):
    seed = int(text)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return seed


def build_parser():
    ap = argparse.ArgumentParser(prog="discokit", description=__doc__)
    ap.add_argument("--version", action="version", version=f"discokit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("support", help="support value and exposed point / face for a direction")
    p.add_argument("--spec", required=True)
    p.add_argument("--u", required=True, help="direction, comma-separated (normalized internally)")

    p = sub.add_parser("sample", help="sample the purely nonlinear part or the join")
    p.add_argument("--spec", required=True)
    p.add_argument("--count", type=int, default=1000, help="points per sheet (or total for --join)")
    p.add_argument("--sheets", choices=["boundary", "all"], default="all")
    p.add_argument("--seed", type=_parse_seed, default=0)
    p.add_argument("--join", action="store_true", help="sample sums of boundary points (join regime)")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("implicitize", help="recover an implicit equation from a cloud file")
    p.add_argument("--cloud", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--parity", choices=sorted(PARITY_MAP), default="none")
    p.add_argument("--out", default=None)

    p = sub.add_parser("member", help="decide point membership")
    p.add_argument("--spec", required=True)
    p.add_argument("--point", required=True, help="query point, comma-separated")
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--max-iter", type=int, default=20000)
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run a bundled fixture's pipeline and check invariants")
    p.add_argument("fixture")
    p.add_argument("--seed", type=_parse_seed, default=2024)
    return ap


def cmd_support(args):
    cfg = {"command": "support", "spec": args.spec, "u": args.u}
    _log_config(cfg)
    dt = load_discotope(args.spec)
    u = unit_direction(_parse_vector(args.u))
    if len(u) != dt.ambient_dim:
        print(f"error: direction has length {len(u)}, ambient dimension is {dt.ambient_dim}",
              file=sys.stderr)
        return EXIT_USAGE
    h = support_discotope(dt, u)
    face = face_of_direction(dt, u)
    out = {"support": h, "direction": u.tolist()}
    if face.is_point:
        out["exposed_point"] = gradient_support(dt, u).tolist()
    else:
        out["face"] = {
            "flat_disc_indices": list(face.flat_indices),
            "face_dim": face.face_dim,
            "point_part": face.point_part.tolist(),
        }
    print(json.dumps(out))
    return EXIT_OK


def cmd_sample(args):
    cfg = {"command": "sample", "spec": args.spec, "count": args.count,
           "sheets": args.sheets, "seed": args.seed, "join": args.join,
           "format": args.format, "out": args.out}
    _log_config(cfg)
    dt = load_discotope(args.spec)
    if args.join:
        cloud = sample_join(dt, args.count, args.seed)
    else:
        sheets = "boundary_only" if args.sheets == "boundary" else "all"
        cloud = sample_S(dt, args.count, args.seed, sheets=sheets)
    tag = f"discokit {__version__} config={_config_hash(cfg)}"
    if args.format == "csv":
        cloud.to_csv(args.out, header_comment=tag)
    else:
        cloud.meta["tool"] = tag
        cloud.to_json(args.out)
    print(f"wrote {len(cloud)} points to {args.out}")
    return EXIT_OK


def cmd_implicitize(args):
    parity = PARITY_MAP[args.parity]
    cfg = {"command": "implicitize", "cloud": args.cloud, "max_degree": args.max_degree,
           "parity": parity, "out": args.out}
    _log_config(cfg)
    cloud = load_cloud(args.cloud)
    found = find_implicit(cloud, args.max_degree, parity=parity)
    if found is None:
        print(f"no equation of degree <= {args.max_degree} (parity {args.parity})")
        return EXIT_NEGATIVE
    degree, poly = found
    terms = count_terms(poly, 1e-8)
    if args.out:
        save_polynomial(poly, args.out,
                        meta={"tool": f"discokit {__version__}",
                              "config": _config_hash(cfg)})
    print(f"degree={degree} terms={terms} residual={poly.fit_residual:.6e}")
    return EXIT_OK


def cmd_member(args):
    cfg = {"command": "member", "spec": args.spec, "point": args.point,
           "tol": args.tol, "max_iter": args.max_iter, "out": args.out}
    _log_config(cfg)
    dt = load_discotope(args.spec)
    p = _parse_vector(args.point)
    if len(p) != dt.ambient_dim:
        print(f"error: point has length {len(p)}, ambient dimension is {dt.ambient_dim}",
              file=sys.stderr)
        return EXIT_USAGE
    report = project(dt, p, tol=args.tol, max_iter=args.max_iter)
    out = {
        "point": p.tolist(),
        "inside": report.is_inside,
        "distance_estimate": report.distance_estimate,
        "iterations": report.iterations,
        "final_gap": report.final_gap,
    }
    if not report.is_inside:
        out["separating_direction"] = report.certificate.u.tolist()
        out["margin"] = report.certificate.margin
    text = json.dumps(out)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK if report.is_inside else EXIT_NEGATIVE


def cmd_verify(args):
    cfg = {"command": "verify", "fixture": args.fixture, "seed": args.seed}
    _log_config(cfg)
    if args.fixture not in FIXTURES:
        print(f"unknown fixture {args.fixture!r}; available: {', '.join(sorted(FIXTURES))}",
              file=sys.stderr)
        return EXIT_USAGE
    result = verify_fixture(args.fixture, seed=args.seed)
    for line in result.summary_lines():
        print(line)
    print(f"{'PASS' if result.passed else 'FAIL'} {result.name}")
    return EXIT_OK if result.passed else EXIT_NEGATIVE


def main(argv=None):
    _apply_thread_cap()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(exc.code) if exc.code else EXIT_OK
    handler = {
        "support": cmd_support,
        "sample": cmd_sample,
        "implicitize": cmd_implicitize,
        "member": cmd_member,
        "verify": cmd_verify,
    }[args.command]
    try:
        return handler(args)
    except SpecValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ConditionViolated as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Undersampled as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (NoEquation, AmbiguousNullspace, NotConverged) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except DiscotopeError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
