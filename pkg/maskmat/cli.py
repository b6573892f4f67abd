# Copyright (C) 2024 The maskmat developers
#
# This file is part of maskmat.
#
# It is subject to the license terms in the LICENSE file found in the top-level
# directory of this distribution.
#
# No part of maskmat, including this file, may be copied,
# modified, propagated, or distributed except according to the terms contained
# in the LICENSE file.

"""Command line entry point.

Exit status: 0 for safe or success, 1 for unsafe (or a failed
self-test), 2 for usage and input errors.
"""

import argparse
import json
import logging
import sys

from . import __version__
from .analytic import eval_poly_system, explicit_construct, \
    load_poly_system, poly_values
from .catalog import DEFAULT_MAX_D, catalog_verify, compare_minima, \
    find_entry, load_catalog, select_entries
from .checker import METHODS, check, count_filtered_subsets
from .config import Settings, configure_logging
from .errors import MaskmatError
from .field import ctx_new
from .gadgets import count_identity_failures, exhaustive_inputs, \
    random_input
from .linalg import Mat
from .probes import ALG4, ALG5, GammaCandidate, build_probe_system
from .search import SAMPLERS, SearchConfig, precondition_census, \
    run_search, sample_candidate
from .structures import CauchySpec, check_precondition, \
    construct_precond41, construct_precond51
from .utils import derive_rng, parse_hex_list

logger = logging.getLogger(__name__)

EXIT_SAFE = 0
EXIT_UNSAFE = 1
EXIT_ERROR = 2

CHECK_METHODS = list(METHODS)


def _scheme(value):
    v = value.strip().lower()
    if v in ("4", "alg4"):
        return ALG4
    if v in ("5", "alg5"):
        return ALG5
    raise argparse.ArgumentTypeError("scheme must be alg4 or alg5")


def _hex_list(value):
    try:
        return parse_hex_list(value)
    except MaskmatError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="maskmat",
        description="Construct, verify and search instantiation matrices "
                    "of masked multiplication gadgets over F_2^k.")
    parser.add_argument("--version", action="version",
                        version="maskmat %s" % __version__)
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="more logging (repeatable)")
    parser.add_argument("--log-level", help="explicit logging level")
    parser.add_argument("--seed", type=lambda s: int(s, 0),
                        help="master seed (default: $MASKMAT_SEED)")
    parser.add_argument("--workers", type=int,
                        help="parallel workers (default: $MASKMAT_WORKERS)")
    parser.add_argument("-q", "--quiet", action="store_true",
                        help="no progress bars")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("verify", help="check a gamma matrix")
    p.add_argument("--scheme", type=_scheme, required=True)
    p.add_argument("--k", type=int, help="field degree (hex input)")
    p.add_argument("-d", type=int, help="masking order")
    p.add_argument("--gamma", default="-",
                   help="matrix file, '-' for stdin")
    p.add_argument("--format", choices=("hex", "json"), default="hex")
    p.add_argument("--method", choices=CHECK_METHODS, default="auto")
    p.add_argument("--json", action="store_true", help="JSON report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build gamma from Cauchy "
                                         "parameters and check it")
    p.add_argument("--scheme", type=_scheme, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--xs", type=_hex_list, required=True)
    p.add_argument("--ys", type=_hex_list, required=True)
    p.add_argument("--cs", type=_hex_list,
                   help="alg5 left-kernel vector to use")
    p.add_argument("--method", choices=CHECK_METHODS, default="auto")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="sample and check random candidates")
    p.add_argument("--scheme", type=_scheme, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--sampler", choices=SAMPLERS, default="cauchy")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--early-stop", type=int)
    p.add_argument("--columns", type=int,
                   help="sample only this many gamma columns (alg4)")
    p.add_argument("--method", choices=CHECK_METHODS, default="auto")
    p.add_argument("--census", action="store_true",
                   help="tabulate MDS/XMDS properties of (A, J - A)")
    p.add_argument("--out", help="write the JSON report to this file")
    p.add_argument("--stream", help="append one JSON line per safe matrix")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("analytic", help="order-3 polynomial conditions")
    asub = p.add_subparsers(dest="action", metavar="action")
    asub.required = True
    a = asub.add_parser("check", help="evaluate the polynomial list")
    a.add_argument("--scheme", type=_scheme, required=True)
    a.add_argument("--k", type=int, required=True)
    a.add_argument("--xs", type=_hex_list, required=True)
    a.add_argument("--ys", type=_hex_list, required=True)
    a.set_defaults(func=cmd_analytic_check)
    a = asub.add_parser("construct", help="the fixed order-3 instantiation")
    a.add_argument("--scheme", type=_scheme, required=True)
    a.add_argument("--k", type=int, required=True)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analytic_construct)

    p = sub.add_parser("catalog", help="the embedded matrix catalog")
    csub = p.add_subparsers(dest="action", metavar="action")
    csub.required = True
    c = csub.add_parser("verify", help="check catalog entries")
    c.add_argument("--scheme", type=_scheme)
    c.add_argument("-d", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--max-d", type=int, default=DEFAULT_MAX_D)
    c.add_argument("--method", choices=CHECK_METHODS, default="auto")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_catalog_verify)
    c = csub.add_parser("minima", help="smallest field per order")
    c.set_defaults(func=cmd_catalog_minima)
    c = csub.add_parser("list", help="print catalog entries")
    c.add_argument("--scheme", type=_scheme)
    c.add_argument("-d", type=int)
    c.add_argument("--k", type=int)
    c.set_defaults(func=cmd_catalog_list)

    p = sub.add_parser("filter-count", help="subsets kept by the support "
                                            "filter")
    p.add_argument("-d", type=int, required=True)
    p.set_defaults(func=cmd_filter_count)

    p = sub.add_parser("selftest", help="gadget correctness identities")
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("dump", help="print the probe matrices of gamma")
    p.add_argument("--scheme", type=_scheme, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-d", type=int)
    p.add_argument("--gamma", default="-")
    p.set_defaults(func=cmd_dump)
    return parser


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as f:
        return f.read()


def _load_candidate(args):
    text = _read(args.gamma)
    if getattr(args, "format", "hex") == "json":
        m = Mat.from_json(text, None if args.k is None else ctx_new(args.k))
        return GammaCandidate.from_matrix(args.scheme, m, args.d)
    if args.k is None:
        raise MaskmatError("--k is required for hex input")
    return GammaCandidate.parse(args.scheme, ctx_new(args.k), text, args.d)


def _report(report, as_json):
    if as_json:
        print(report.to_json())
    else:
        print("%s (%s, %d subsets checked, %d skipped, %.1f ms)"
              % (report.verdict, report.method, report.subsets_checked,
                 report.subsets_skipped, report.elapsed * 1000.0))
        if report.witness is not None:
            print("matrix: %s" % report.target)
            print("columns: %s" % " ".join(
                str(c + 1) for c in report.witness.columns))
            print("v: %s" % " ".join(report.ctx.format(report.witness.v[c])
                                     for c in report.witness.columns))
    return EXIT_SAFE if report.safe else EXIT_UNSAFE


def cmd_verify(args, settings):
    g = _load_candidate(args)
    return _report(check(g, method=args.method,
                         oracle_bound=settings.oracle_bound), args.json)


def cmd_construct(args, settings):
    ctx = ctx_new(args.k)
    spec = CauchySpec(args.xs, args.ys, row_scale=args.cs)
    if args.scheme == ALG4:
        g = construct_precond41(ctx, spec)
    else:
        g = construct_precond51(ctx, spec)
    if not args.json:
        print(g.to_text())
        print("precondition: %s" % ("yes" if check_precondition(g)
                                    else "no"))
    return _report(check(g, method=args.method,
                         oracle_bound=settings.oracle_bound), args.json)


def cmd_search(args, settings):
    cfg = SearchConfig(args.scheme, ctx_new(args.k), args.d,
                       sampler=args.sampler, samples=args.samples,
                       seed=settings.seed, workers=settings.workers,
                       early_stop=args.early_stop, method=args.method,
                       columns=args.columns)
    progress = not args.quiet and sys.stderr.isatty()
    if args.census:
        doc = {"config": cfg.to_dict(),
               "census": precondition_census(cfg, progress).to_dict()}
    else:
        stream = open(args.stream, "a") if args.stream else None
        try:
            stats = run_search(cfg, progress=progress, stream=stream)
        finally:
            if stream is not None:
                stream.close()
        doc = stats.to_dict()
    text = json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)
    return EXIT_SAFE


def cmd_analytic_check(args, settings):
    ctx = ctx_new(args.k)
    system = load_poly_system(args.scheme)
    values = poly_values(system, ctx, args.xs, args.ys)
    for i, value in enumerate(values, 1):
        print("%2d %s" % (i, ctx.format(value)))
    ok = eval_poly_system(system, ctx, args.xs, args.ys)
    print("all nonzero" if ok else "some polynomial vanishes")
    return EXIT_SAFE if ok else EXIT_UNSAFE


def cmd_analytic_construct(args, settings):
    g = explicit_construct(args.scheme, ctx_new(args.k))
    print(g.gamma.to_json() if args.json else g.to_text())
    return EXIT_SAFE


def cmd_catalog_verify(args, settings):
    results = catalog_verify(args.scheme, args.d, args.k, args.method,
                             max_d=args.max_d, workers=settings.workers,
                             progress=not args.quiet and sys.stderr.isatty())
    failures = 0
    for entry, report in results:
        if args.json:
            doc = report.to_dict()
            doc["source"] = entry.source
            print(json.dumps(doc))
        else:
            print("%-18s %s" % (entry.source, report.verdict))
        failures += 0 if report.safe else 1
    if not args.json:
        print("%d entries, %d failures" % (len(results), failures))
    return EXIT_SAFE if failures == 0 else EXIT_UNSAFE


def cmd_catalog_minima(args, settings):
    print("scheme  d  catalog  published")
    for scheme, d, found, published in compare_minima():
        print("%-6s %2d  %7s  %9d" % (scheme, d,
                                     "-" if found is None else found,
                                     published))
    return EXIT_SAFE


def cmd_catalog_list(args, settings):
    for entry in select_entries(load_catalog(), args.scheme, args.d,
                                args.k):
        print(entry.to_text())
    return EXIT_SAFE


def cmd_filter_count(args, settings):
    if args.d < 1:
        raise MaskmatError("order must be at least 1")
    ctx = ctx_new(1)
    g = GammaCandidate(ALG4, Mat.ones(ctx, args.d + 1, args.d))
    kept, total = count_filtered_subsets(build_probe_system(g))
    print("%d / %d" % (kept, total))
    return EXIT_SAFE


def selftest_candidates(seed):
    """(label, candidate, exhaustive) triples for the gadget self-test"""
    small = ctx_new(2)
    out = []
    for scheme in (ALG4, ALG5):
        cfg = SearchConfig(scheme, small, 2, sampler="uniform", samples=1,
                           seed=seed)
        out.append(("%s d=2 F_2^2" % scheme, sample_candidate(cfg, 0), True))
    for scheme in (ALG4, ALG5):
        for d in (3, 4):
            entry = find_entry(scheme, d, 8)
            out.append((entry.source, entry.candidate(), False))
    return out


def cmd_selftest(args, settings):
    failures = 0
    for label, g, exhaustive in selftest_candidates(settings.seed):
        if exhaustive:
            bad = count_identity_failures(
                g, exhaustive_inputs(g.ctx, g.d, g.scheme))
            runs = "all inputs"
        else:
            rng = derive_rng(settings.seed, g.d)
            bad = sum(count_identity_failures(
                g, random_input(g.ctx, g.d, rng, g.scheme))
                for _ in range(args.trials))
            runs = "%d inputs" % args.trials
        print("%-18s %-10s %d failures" % (label, runs, bad))
        failures += bad
    return EXIT_SAFE if failures == 0 else EXIT_UNSAFE


def cmd_dump(args, settings):
    print(build_probe_system(_load_candidate(args)).dump())
    return EXIT_SAFE


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR

    try:
        settings = Settings.from_env()
    except ValueError as e:
        print("maskmat: error: %s" % e, file=sys.stderr)
        return EXIT_ERROR
    settings = settings.override(seed=args.seed, workers=args.workers)
    level = args.log_level or settings.log_level
    if args.verbose:
        level = "INFO" if args.verbose == 1 else "DEBUG"
    configure_logging(level)

    try:
        return args.func(args, settings)
    except MaskmatError as e:
        logger.debug("command failed", exc_info=True)
        print("maskmat: error: %s" % e, file=sys.stderr)
        return EXIT_ERROR
    except (IOError, OSError) as e:
        print("maskmat: error: %s" % e, file=sys.stderr)
        return EXIT_ERROR
