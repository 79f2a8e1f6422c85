"""Command-line interface: ``cstriang <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .complex import DisjointStarError, Involution, antipodal_quotient, f_vector
from .constructions import ConstructionError, DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_GAMMA
from .fileio import (
    ParseError,
    file_checksum,
    load_facets,
    load_float_points,
    load_points,
    save_facets,
    save_float_points,
    save_points,
)
from .graphs import DEFAULT_TIME_LIMIT
from .homology import betti_mod2, integer_homology
from .hull import DegenerateConfigurationError, NonSimplicialError, boundary_complex, facet_enumeration
from .ratmath import format_rational, parse_rational
from .report import THRESHOLD_TABLE, analyze, describe_complex, verify_rp5, verify_rp6
from .search import (
    AnnealingSchedule,
    edge_objective,
    l1_objective,
    l1_sparsify,
    minmax_edge_search,
    multi_start_search,
    near_zero_count,
    random_rotation,
    rationalize,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_PRECONDITION = 3

log = logging.getLogger("cstriang")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _write_json(path, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    Path(path).write_text(text + "\n")


def _finish_report(report, args) -> int:
    print(report.render())
    if args.json:
        _write_json(args.json, report.to_json())
    return EXIT_OK if report.verdict == "pass" else EXIT_CHECK_FAILED


def cmd_verify_rp5(args) -> int:
    params = (args.alpha, args.beta, args.gamma)
    if args.points and any(p is not None for p in params):
        raise _UsageError("--points cannot be combined with --alpha/--beta/--gamma")
    defaults = (DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_GAMMA)
    a, b, g = (p if p is not None else d for p, d in zip(params, defaults))
    points, inputs = None, {}
    if args.points:
        points = load_points(args.points)
        inputs["points"] = f"{args.points} sha256:{file_checksum(args.points)}"
    report = verify_rp5(a, b, g, points=points, integer_homology=args.integer_homology,
                        chromatic=args.chromatic, time_limit=args.time_limit, inputs=inputs)
    return _finish_report(report, args)


def cmd_verify_rp6(args) -> int:
    source, points, inputs = args.source, None, {}
    if args.points:
        if source not in (None, "points"):
            raise _UsageError("--points cannot be combined with --source " + source)
        source = "points"
        points = load_points(args.points)
        inputs["points"] = f"{args.points} sha256:{file_checksum(args.points)}"
    elif source in (None, "points"):
        if source == "points":
            raise _UsageError("--source points needs --points FILE")
        source = "builtin-p790"
    report = verify_rp6(source, points=points, integer_homology=args.integer_homology,
                        inputs=inputs)
    return _finish_report(report, args)


def cmd_analyze(args) -> int:
    if not args.points and not args.facets:
        raise _UsageError("analyze needs --points and/or --facets")
    payload: dict = {}
    if args.points:
        config = load_points(args.points)
        thresholds = args.threshold or [t for t, *_ in THRESHOLD_TABLE]
        rows = analyze(config, thresholds, chromatic=not args.no_chromatic,
                       time_limit=args.time_limit)
        print("t\tregular_degree\tedges\tchi\tstatus")
        table = []
        for t, deg, edges, chi, status in rows:
            deg_s = "irregular" if deg is None else str(deg)
            chi_s = "-" if chi is None else (str(chi) if isinstance(chi, int) else f"{chi[0]}..{chi[1]}")
            print(f"{format_rational(t)}\t{deg_s}\t{edges}\t{chi_s}\t{status}")
            table.append({"t": format_rational(t), "regular_degree": deg, "edges": edges,
                          "chi": chi, "status": status})
        payload["thresholds"] = table
    if args.facets:
        c = load_facets(args.facets)
        info = describe_complex(c)
        print(f"f-vector: {tuple(info['f_vector'])}")
        print(f"missing edges: {info['missing_edges']}")
        print(f"automorphism order: {info['automorphism_order']}")
        payload["complex"] = info
    if args.json:
        _write_json(args.json, payload)
    return EXIT_OK


def cmd_search(args) -> int:
    schedule = AnnealingSchedule(t_start=args.t_start, t_end=args.t_end, sigma_start=args.sigma)
    if args.points:
        warm = load_float_points(args.points)
        state = minmax_edge_search(args.n, args.dim, args.seed, args.iters, schedule, initial=warm)
    elif args.restarts > 1:
        seeds = [args.seed + k for k in range(args.restarts)]
        state = multi_start_search(args.n, args.dim, seeds, args.iters, schedule, args.workers)
    else:
        state = minmax_edge_search(args.n, args.dim, args.seed, args.iters, schedule)
    start = float(state.trace[0]) if len(state.trace) else state.best_so_far
    print(f"seed {state.seed}, {state.iterations} iterations, {state.accepted} accepted")
    print(f"objective: start {start:.6f} -> best {state.best_so_far:.6f}")
    if args.out:
        save_float_points(args.out, state.full_points(),
                          f"search n={args.n} d={args.dim} seed={state.seed} "
                          f"objective={state.best_so_far!r}")
    if args.json:
        _write_json(args.json, {"seed": state.seed, "iterations": state.iterations,
                                "objective_start": start, "objective_best": state.best_so_far,
                                "accepted": state.accepted})
    return EXIT_OK


def cmd_sparsify(args) -> int:
    x = load_float_points(args.points)
    if args.rotate_seed is not None:
        x = x @ random_rotation(x.shape[1], args.rotate_seed).T
    before = l1_objective(x)
    frame, f = l1_sparsify(x, seed=args.seed, sweeps=args.sweeps, restarts=args.restarts)
    y = frame.apply(x)
    zeros = near_zero_count(y)
    print(f"L1 objective: start {before:.10f} -> best {f:.10f}")
    print(f"near-zero coordinates: {zeros}; orthogonality error {frame.orthogonality_error():.1e}")
    if args.out:
        save_float_points(args.out, y, f"sparsified seed={args.seed} f={f!r}")
    if args.json:
        _write_json(args.json, {"f_start": before, "f_best": f, "near_zero": zeros,
                                "Q": frame.Q.tolist()})
    return EXIT_OK


def cmd_rationalize(args) -> int:
    x = load_float_points(args.points)
    config = rationalize(x, args.max_den)
    paired = "with" if config.pairing is not None else "without"
    print(f"{len(config)} points in R^{config.dim}, {paired} antipodal pairing")
    if args.out:
        save_points(args.out, config, f"rationalized with max denominator {args.max_den}")
    else:
        for p in config.points:
            print(" ".join(format_rational(v) for v in p))
    return EXIT_OK


def _complex_and_pairing(args):
    if args.facets:
        c = load_facets(args.facets)
        pairing = None
        if args.points:
            pairing = load_points(args.points).pairing
        return c, pairing
    if args.points:
        config = load_points(args.points)
        return boundary_complex(facet_enumeration(config)), config.pairing
    raise _UsageError("need --facets or --points")


def cmd_quotient(args) -> int:
    c, pairing = _complex_and_pairing(args)
    if pairing is None:
        n = c.n_vertices
        if n % 2:
            raise ConstructionError("no pairing available and an odd number of vertices")
        pairing = [(i + n // 2) % n for i in range(n)]
    q = antipodal_quotient(c, Involution(pairing))
    print(f"quotient: {q.n_vertices} vertices, f-vector {f_vector(q)}")
    if args.out:
        save_facets(args.out, q)
    return EXIT_OK


def cmd_homology(args) -> int:
    c, _ = _complex_and_pairing(args)
    betti = betti_mod2(c)
    print(f"mod-2 Betti numbers: {tuple(betti)}")
    payload: dict = {"betti_mod2": betti}
    if args.integer_homology:
        h = integer_homology(c)
        print("integer homology: " + ", ".join(h.describe()))
        payload["integer"] = h.describe()
    if args.json:
        _write_json(args.json, payload)
    return EXIT_OK


def cmd_automorphisms(args) -> int:
    from .canonical import automorphism_group

    c, _ = _complex_and_pairing(args)
    grp = automorphism_group(c)
    print(f"automorphism order: {grp.order} ({len(grp.generators)} generators)")
    if args.json:
        _write_json(args.json, {"order": grp.order, "generators": [list(g) for g in grp.generators]})
    return EXIT_OK


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cstriang",
                                     description="Exact tools for centrally symmetric polytopes "
                                                 "and projective-space triangulations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", metavar="PATH", help="write a machine-readable report")

    p = sub.add_parser("verify-rp5", help="verify the 48-point polytope and its RP^5 quotient")
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--beta", type=_rational)
    p.add_argument("--gamma", type=_rational)
    p.add_argument("--points", metavar="FILE", help="verify a 48-point file instead")
    p.add_argument("--integer-homology", action="store_true")
    p.add_argument("--chromatic", action="store_true", help="add exact chromatic numbers")
    p.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT, metavar="SECONDS")
    add_json(p)
    p.set_defaults(func=cmd_verify_rp5)

    p = sub.add_parser("verify-rp6", help="verify a 7-polytope and its RP^6 quotient")
    p.add_argument("--source", choices=["builtin-p790", "cone-cylinder", "points"])
    p.add_argument("--points", metavar="FILE")
    p.add_argument("--integer-homology", action="store_true")
    add_json(p)
    p.set_defaults(func=cmd_verify_rp6)

    p = sub.add_parser("analyze", help="threshold graphs of a points file; invariants of a facet list")
    p.add_argument("--points", metavar="FILE")
    p.add_argument("--facets", metavar="FILE")
    p.add_argument("--threshold", type=_rational, action="append", metavar="P/Q")
    p.add_argument("--no-chromatic", action="store_true")
    p.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT, metavar="SECONDS")
    add_json(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", help="anneal n centrally symmetric points on the sphere")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=_positive_int, default=20000)
    p.add_argument("--restarts", type=_positive_int, default=1)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--t-start", type=float, default=AnnealingSchedule.t_start)
    p.add_argument("--t-end", type=float, default=AnnealingSchedule.t_end)
    p.add_argument("--sigma", type=float, default=AnnealingSchedule.sigma_start)
    p.add_argument("--points", metavar="FILE", help="warm start")
    p.add_argument("--out", metavar="FILE")
    add_json(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sparsify", help="rotate a configuration to minimise its L1 norm")
    p.add_argument("--points", metavar="FILE", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sweeps", type=_positive_int, default=200)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--rotate-seed", type=int, help="scramble the input by a random rotation first")
    p.add_argument("--out", metavar="FILE")
    add_json(p)
    p.set_defaults(func=cmd_sparsify)

    p = sub.add_parser("rationalize", help="round a float configuration to exact rationals")
    p.add_argument("--points", metavar="FILE", required=True)
    p.add_argument("--max-den", type=_positive_int, required=True)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_rationalize)

    for name, func, hlp in (
        ("quotient", cmd_quotient, "antipodal quotient of a facet list or a polytope boundary"),
        ("homology", cmd_homology, "mod-2 (and optionally integer) homology"),
        ("automorphisms", cmd_automorphisms, "combinatorial automorphism group order"),
    ):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--facets", metavar="FILE")
        p.add_argument("--points", metavar="FILE")
        if name == "quotient":
            p.add_argument("--out", metavar="FILE")
        if name == "homology":
            p.add_argument("--integer-homology", action="store_true")
        if name != "quotient":
            add_json(p)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except (ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except (ConstructionError, DegenerateConfigurationError, NonSimplicialError,
            DisjointStarError, ValueError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
