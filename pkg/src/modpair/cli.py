"""``modpair`` command line.

Exit codes: 0 when every check passes, 1 when a check fails or is
indeterminate, 2 for usage or configuration errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import suites
from .config import ConfigError, load_config, with_overrides
from .phases import PhaseSyntaxError
from .report import table_csv

log = logging.getLogger("modpair")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="INI config file")
    p.add_argument("--grid-N", dest="grid_N", type=int, help="grid size (even)")
    p.add_argument("--grid-L", dest="grid_L", type=float, help="window half-width")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="modpair", description="Numerical checks for half-sided modular inclusions.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("selfcheck", help="grid and base-representation invariants")
    _common(p)

    p = sub.add_parser("appendix-a", help="T_s convolution kernel convergence study")
    _common(p)
    p.add_argument("--s", type=float, default=1.0)

    p = sub.add_parser("inclusion", help="three-detector inclusion check for two phases")
    _common(p)
    p.add_argument("--phase1", metavar="SPEC")
    p.add_argument("--phase2", metavar="SPEC")
    p.add_argument("--expect", choices=("true", "false"), help="expected verdict")

    p = sub.add_parser("example", help="reproduce a named example")
    _common(p)
    p.add_argument("name", choices=suites.EXAMPLES)

    p = sub.add_parser("sweep", help="convergence table as CSV")
    _common(p)
    p.add_argument("case", choices=suites.SWEEPS)
    p.add_argument("--n-list", dest="n_list", default="2048,4096,8192",
                   help="comma-separated grid sizes")
    p.add_argument("--phase1", metavar="SPEC")
    p.add_argument("--phase2", metavar="SPEC")
    return ap


def parse_n_list(text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            n = int(tok)
        except ValueError:
            raise UsageError(f"--n-list: {tok!r} is not an integer") from None
        if n < 16 or n % 2:
            raise UsageError(f"--n-list: {n} is not an even integer >= 16")
        out.append(n)
    if not out:
        raise UsageError("--n-list is empty")
    return out


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    cfg = with_overrides(load_config(args.config), L=args.grid_L, N=args.grid_N, seed=args.seed,
                         phase1=getattr(args, "phase1", None), phase2=getattr(args, "phase2", None))
    out = args.out or cfg.report_path or None

    if args.command == "sweep":
        ns = parse_n_list(args.n_list)
        header, rows = suites.run_sweep(args.case, cfg, ns)
        _emit(table_csv(header, rows), args.out or cfg.sweep_path or None)
        return EXIT_OK

    if args.command == "selfcheck":
        rep = suites.selfcheck(cfg)
    elif args.command == "appendix-a":
        if args.s == 0:
            raise UsageError("s must be nonzero")
        rep = suites.appendix_a(cfg, args.s)
    elif args.command == "inclusion":
        expect = None if args.expect is None else args.expect == "true"
        rep = suites.inclusion_case(cfg, cfg.phase1, cfg.phase2, expect)
    else:
        rep = suites.run_example(args.name, cfg)

    if args.fmt == "csv":
        _emit(rep.to_csv(), out)
    else:
        _emit(rep.to_json(include_timings=args.timings), out)
    log.info("%s", rep.summary())
    if not rep.passed:
        for name in rep.failures():
            print(f"modpair: check not passed: {name}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(argv)
    except (UsageError, ConfigError, PhaseSyntaxError) as exc:
        print(f"modpair: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # domain errors raised by the numerics (margins, resolution, bad s)
        print(f"modpair: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
