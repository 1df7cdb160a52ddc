"""Command-line interface: ``fuzzyov compute | sweep | convert``.

Exit codes: 0 success, 1 computation/validation error, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from fuzzyov.cover import (
    BelongingConfig, Cover, add_singletons, apply_scheme, fuzzy_to_crisp, read_cover, write_cover,
)
from fuzzyov.errors import FuzzyovError, ParseError
from fuzzyov.graph import read_edge_list
from fuzzyov.local_metrics import DIRECTIONS, METRICS, compute_report
from fuzzyov.sweep import (
    DEFAULT_TIE_TOLERANCE, SweepTable, consensus, evaluate_sweep, load_manifest, render_report,
)

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _metric_list(text: str) -> tuple:
    if text == "all":
        return METRICS
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    unknown = [n for n in names if n not in METRICS]
    if unknown or not names:
        raise argparse.ArgumentTypeError(f"unknown metric(s) {unknown}; choose from {', '.join(METRICS)}")
    return names


def _unit(text: str) -> float:
    x = float(text)
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is outside [0, 1]")
    return x


def _positive(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"{text} must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzyov", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cover-format", choices=("crisp", "fuzzy"), default="crisp",
                        help="crisp: labels per line; fuzzy: label:coefficient tokens")
    common.add_argument("--bc", choices=("given", "v1", "v2"), default=None,
                        help="belonging coefficient scheme (default v1; convert requires it for crisp input)")
    common.add_argument("--threshold", type=_unit, default=None,
                        help="turn a fuzzy cover crisp, keeping memberships with coefficient > threshold")
    common.add_argument("--add-singletons", action="store_true",
                        help="put every uncovered node in its own community")
    common.add_argument("--normalize", action="store_true",
                        help="rescale given coefficients whose row sums are not 1")
    common.add_argument("--v2-fallback", action="store_true",
                        help="use 1/O_i for nodes with no edges into their communities under v2")
    common.add_argument("--directed-policy", choices=("symmetrize", "reject"), default="symmetrize")

    metric = argparse.ArgumentParser(add_help=False)
    metric.add_argument("--graph", required=True, help="edge list: 'u v [w]' per line")
    metric.add_argument("--bf", choices=("avg", "prod", "logistic", "average", "product"), default="prod",
                        help="belonging function")
    metric.add_argument("--p", type=_positive, default=30.0, help="logistic steepness (default 30)")
    metric.add_argument("--output", choices=("tsv", "json"), default="tsv")
    metric.add_argument("--metrics", type=_metric_list, default=METRICS,
                        help="comma-separated subset of " + ",".join(METRICS))

    p = sub.add_parser("compute", parents=[common, metric], help="all metrics for one cover")
    p.add_argument("--cover", required=True)

    p = sub.add_parser("sweep", parents=[common, metric], help="parameter sweep and consensus")
    p.add_argument("--manifest", required=True, help="lines of 'param<TAB>cover_path'")
    p.add_argument("--tie-tolerance", type=float, default=DEFAULT_TIE_TOLERANCE)

    p = sub.add_parser("convert", parents=[common], help="crisp <-> fuzzy cover conversion")
    p.add_argument("--cover", required=True)
    p.add_argument("--graph", default=None, help="needed for --bc v2 and --add-singletons")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    return parser


def _prepare(cover: Cover, args) -> Cover:
    if args.threshold is not None:
        if cover.kind != "fuzzy":
            raise UsageError("--threshold applies to fuzzy covers (--cover-format fuzzy)")
        cover = fuzzy_to_crisp(cover, args.threshold)
    return cover


def _config(args) -> BelongingConfig:
    return BelongingConfig(args.bc or "v1", args.bf, args.p)


def _options(args) -> dict:
    return dict(singletons=args.add_singletons, normalize=args.normalize, v2_fallback=args.v2_fallback)


def cmd_compute(args, out) -> int:
    g = read_edge_list(args.graph, args.directed_policy)
    cover = _prepare(read_cover(args.cover, args.cover_format), args)
    report = compute_report(g, cover, _config(args), **_options(args))
    values = {name: report[name] for name in args.metrics}
    if args.output == "json":
        out.write(json.dumps({"metrics": values}, indent=2) + "\n")
    else:
        out.write("\t".join(values) + "\n")
        out.write("\t".join(f"{v:.6g}" for v in values.values()) + "\n")
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    g = read_edge_list(args.graph, args.directed_policy)
    points = load_manifest(args.manifest, args.cover_format)
    if not points:
        raise UsageError(f"{args.manifest}: manifest lists no covers")
    if args.threshold is not None:
        points = [type(pt)(pt.param, [_prepare(c, args) for c in pt.covers]) for pt in points]
    table = evaluate_sweep(g, points, _config(args), **_options(args))
    table = SweepTable(table.params, {m: table.values[m] for m in args.metrics},
                       {m: DIRECTIONS[m] for m in args.metrics})
    result = consensus(table, args.tie_tolerance)
    out.write(render_report(result, table, args.output))
    return EXIT_OK


def cmd_convert(args, out) -> int:
    cover = read_cover(args.cover, args.cover_format)
    g = read_edge_list(args.graph, args.directed_policy) if args.graph else None
    if args.add_singletons:
        if g is None:
            raise UsageError("--add-singletons needs --graph")
        cover = add_singletons(g, cover)
    if cover.kind == "fuzzy":
        if args.bc not in (None, "given"):
            raise UsageError(f"--bc {args.bc} assigns coefficients to crisp covers; input is fuzzy")
        if args.threshold is None:
            raise UsageError("fuzzy -> crisp conversion needs --threshold")
        result = fuzzy_to_crisp(cover.validate(args.normalize), args.threshold)
    else:
        if args.bc is None or args.bc == "given":
            raise UsageError("crisp -> fuzzy conversion needs --bc v1 or --bc v2")
        if args.bc == "v2" and g is None:
            raise UsageError("--bc v2 needs --graph")
        result = apply_scheme(g, cover, BelongingConfig(args.bc), v2_fallback=args.v2_fallback)
    text = write_cover(result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "sweep": cmd_sweep, "convert": cmd_convert}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            status = COMMANDS[args.command](args, out)
        except (OSError, ParseError, UsageError) as exc:
            err.write(f"fuzzyov {args.command}: error: {exc}\n")
            status = EXIT_USAGE
        except (FuzzyovError, ValueError) as exc:
            err.write(f"fuzzyov {args.command}: error: {exc}\n")
            status = EXIT_COMPUTE
    for w in caught:
        err.write(f"fuzzyov {args.command}: warning: {w.message}\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
