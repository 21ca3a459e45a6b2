# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
#####
#
# Command line interpreter (CLI) computing the homology of cohomogeneity
# one manifolds from their group diagrams
#
#####

import argparse
import json
import logging
import sys
from typing import Tuple

from cli.cliexec_homology import CliExecHomology, render_run
from cohomology import classify, sweep
from common import const
from common.errors import CatalogError, DiagramParseError

LOGGING_FORMAT = const.LOGGING_FORMAT
LOGGING_LEVEL = logging.INFO
logging.basicConfig(format=LOGGING_FORMAT, level=LOGGING_LEVEL)
logger = logging.getLogger(__name__)

#####
# Default values for CLI
# Sweep bounds left unset here come from the configuration file
#####
DEFAULT_CONFIGURATION = const.DEFAULT_CONFIG
DEFAULT_VARIANT = "plain"
FORMATS = ["text", "json"]

#####
# FUNCTIONS
#####


def _cliexec(args: argparse.Namespace) -> CliExecHomology:
    return CliExecHomology({"configuration": args.configuration})


def run(args: argparse.Namespace) -> Tuple[str, bool]:
    logger.info(f"Using input file:{args.input}")
    cliexec = _cliexec(args)
    fmt = args.format or cliexec.settings.output_format

    try:
        document = cliexec.run(args.input, check=args.check)
    except DiagramParseError as e:
        where = f"{e.path}: " if e.path else ""
        return "\n".join(f"{where}{d}" for d in e.diagnostics), False

    kinds = None
    if args.homology:
        kinds = [const.HOMOLOGY]
    elif args.cohomology:
        kinds = [const.COHOMOLOGY]
    return render_run(document, fmt, kinds), document["ok"]


def run_sweep(args: argparse.Namespace) -> Tuple[str, bool]:
    cliexec = _cliexec(args)
    fmt = args.format or cliexec.settings.output_format
    bounds = {
        "max_slope": args.max_slope,
        "max_order": args.max_order,
        "max_mn": args.max_mn,
        "max_q": args.max_q,
        "max_n": args.max_n,
    }
    df = cliexec.sweep(args.family, bounds, check=args.check,
                       workers=args.workers)
    failures = sweep.sweep_failures(df)
    logger.info(f"{len(df)} rows, {failures} failures")
    return sweep.render_sweep(df, fmt), failures == 0


def show_catalog(args: argparse.Namespace) -> Tuple[str, bool]:
    cliexec = _cliexec(args)
    fmt = args.format or cliexec.settings.output_format

    try:
        profile = cliexec.catalog(name=args.name, brieskorn=args.brieskorn,
                                  p_family=args.p_family, r=args.r,
                                  variant=args.variant)
    except CatalogError as e:
        return f"Error: {e}", False

    if profile is None:
        atoms = cliexec.atoms()
        if fmt == "json":
            out = [{"name": a.name, "dim": a.dim, "symmetric": a.symmetric,
                    "citation": a.citation} for a in atoms]
            return json.dumps(out, indent=2, ensure_ascii=False), True
        return "\n".join(f"{a.name} (dim {a.dim}): {a.citation}"
                         for a in atoms), True

    found = classify.classify_theorem_type(profile)
    if fmt == "json":
        out = {"schema": const.SCHEMA_VERSION,
               "homology": profile.to_record(),
               "classification": found.model_dump()}
        return json.dumps(out, indent=2, ensure_ascii=False), True
    lines = profile.render_lines()
    lines.append(f"classification: {found.render()}")
    return "\n".join(lines), True


def usage(parser: argparse.ArgumentParser, msg: str):
    print(f"Error: {msg}\n")
    parser.print_help()


#####
# PARSERS
#####


def add_run_parser(subparsers):
    parser = subparsers.add_parser(
        "run", help="Compute the homology of every diagram in a file")
    parser.add_argument("--input", required=True,
                        help="Diagram file (YAML or JSON)")
    parser.add_argument("--check", action="store_true",
                        help="Cross-check formulas with the oracle")
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help="Output format (default from configuration)")
    kind = parser.add_mutually_exclusive_group()
    kind.add_argument("--homology", action="store_true",
                      help="Print homology only")
    kind.add_argument("--cohomology", action="store_true",
                      help="Print cohomology only")


def add_sweep_parser(subparsers):
    parser = subparsers.add_parser(
        "sweep", help="Tabulate all valid diagrams of a family in a box")
    parser.add_argument("--family", required=True,
                        choices=const.SWEEP_FAMILIES, help="Family to sweep")
    parser.add_argument("--max-slope", type=int, default=None,
                        help="Bound on slope entries")
    parser.add_argument("--max-order", type=int, default=None,
                        help="Bound on b- and b+")
    parser.add_argument("--max-mn", type=int, default=None,
                        help="Bound on |m|, |n| (N7E)")
    parser.add_argument("--max-q", type=int, default=None,
                        help="Bound on |q| (N7B, N7C)")
    parser.add_argument("--max-n", type=int, default=None,
                        help="Bound on n (N7B, N7C, N7H)")
    parser.add_argument("--check", action="store_true",
                        help="Cross-check formulas with the oracle")
    parser.add_argument("--workers", type=int, default=None,
                        help="Worker processes")
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help="Output format (default from configuration)")


def add_catalog_parser(subparsers):
    parser = subparsers.add_parser(
        "catalog", help="Show catalog profiles, or list the atoms")
    entry = parser.add_mutually_exclusive_group()
    entry.add_argument("--name", default=None,
                       help="Atom or product such as S2xS5")
    entry.add_argument("--brieskorn", type=int, default=None,
                       help="Brieskorn variety of degree d")
    entry.add_argument("--p-family", choices=["A", "B", "C", "D"],
                       default=None, help="P-family type")
    parser.add_argument("--r", type=int, default=None,
                        help="Order of H3 for the P-family, required with "
                             "--p-family (0 stands for Z)")
    parser.add_argument("--variant", choices=["plain", "Z2"],
                        default=DEFAULT_VARIANT, help="P-family variant")
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help="Output format (default from configuration)")


def _execute(xargs=None) -> Tuple[str, bool]:
    # Initialize argparse and set general CLI description
    parser = argparse.ArgumentParser(
        description="Cohomogeneity One Homology Command Line Interface (CLI)")

    # Parser for top-level commands
    parser.add_argument('--verbose', action='store_true',
                        help='Enable verbose output')
    parser.add_argument("--configuration", default=DEFAULT_CONFIGURATION,
                        help="Configuration file")

    # Create subparsers to handle multiple commands
    subparsers = parser.add_subparsers(dest="command",
                                       help="Available commands")

    add_run_parser(subparsers)
    add_sweep_parser(subparsers)
    add_catalog_parser(subparsers)

    args = parser.parse_args(xargs if xargs is not None else sys.argv[1:])

    # Set up logging
    logging.getLogger().setLevel(
        logging.INFO if args.verbose else logging.WARNING)
    logger.info(args)

    # Execute corresponding function based on provided command
    ok = True
    if args.command == "run":
        out_str, ok = run(args)
    elif args.command == "sweep":
        out_str, ok = run_sweep(args)
    elif args.command == "catalog":
        out_str, ok = show_catalog(args)
    else:
        usage(parser, "Command missing - please provide command")
        return "", False

    print(out_str)
    return out_str, ok


def execute(xargs=None) -> str:
    out_str, _ = _execute(xargs)
    return out_str


def main(xargs=None) -> int:
    """Exit code 0 iff every diagram is valid and every check passed."""
    _, ok = _execute(xargs)
    return 0 if ok else 1


if __name__ == "__main__":

    # Execute mainline
    sys.exit(main(sys.argv[1:]))
