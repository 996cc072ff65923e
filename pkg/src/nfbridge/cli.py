"""Command-line entry point: ``nfbridge --suite all --json report.json``."""
from __future__ import annotations

import argparse
import logging
import sys

from .errors import NFBridgeError
from .report import emit_report
from .scenario import MODES, SUITES, load_scenario
from .suites import run_suite

log = logging.getLogger("nfbridge")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nfbridge",
        description="Run the Dirac/Maxwell bridge verification suites and write a report.",
    )
    p.add_argument("--suite", choices=SUITES, help="suite to run (default: all)")
    p.add_argument("--mode", choices=MODES, help="exact rationals or floats (overrides NFBRIDGE_MODE)")
    p.add_argument("--seed", type=int, help="RNG seed (default: 1)")
    p.add_argument("--h", type=float, help="grid spacing for the finite-difference suites")
    p.add_argument("--config", help="JSON scenario file")
    p.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    p.add_argument("--csv", metavar="PATH", help="write the CSV report ('-' for stdout)")
    p.add_argument("--verbose", "-v", action="store_true", help="list every check")
    return p


def _print_summary(report, verbose: bool, out) -> None:
    s = report.summary()
    for c in report.checks:
        if verbose or not c.passed:
            status = "PASS" if c.passed else "FAIL"
            print(f"{status} {c.id} [{c.paper_eq}] {c.detail}", file=out)
    verdict = "PASS" if s["pass"] else "FAIL"
    print(
        f"{verdict} suite={report.suite} mode={report.mode} seed={report.seed}: "
        f"{s['passed']}/{s['total']} checks passed in {report.wall_time_s:.2f} s",
        file=out,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        sc = load_scenario(args.config)
        sc = sc.with_overrides(suite=args.suite, mode=args.mode, seed=args.seed, h=args.h)
        log.debug("scenario: %s", sc.to_dict())
        report = run_suite(sc.suite, sc)
        if args.json:
            emit_report(report, "json", args.json)
        if args.csv:
            emit_report(report, "csv", args.csv)
    except NFBridgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot write report: {exc}", file=sys.stderr)
        return 2
    # keep stdout clean when a report is streamed there
    out = sys.stderr if "-" in (args.json, args.csv) else sys.stdout
    _print_summary(report, args.verbose, out)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
