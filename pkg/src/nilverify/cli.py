"""Command line front end: ``nilverify <command> --config <file>``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report as rp
from .config import load_config
from .errors import ConfigError, DomainError, PreconditionError
from .geometry import ORIENTATIONS

COMMANDS = ("check", "cohomology", "invariants", "symplectic-check", "complex-check", "lefschetz",
            "fixed-locus", "singular-locus", "verify-all")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nilverify",
        description="Exact verification of nilmanifold cohomology, group actions and Lefschetz certificates.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", default="heisenberg-z6.cfg",
                   help="config file; names of shipped configs also work (default: heisenberg-z6.cfg)")
    p.add_argument("--json", action="store_true", help="emit the JSON report instead of text")
    p.add_argument("--orientation", choices=ORIENTATIONS, default="standard",
                   help="reference volume V = prod(i g^~g) or its negative")
    p.add_argument("--form", default="omega", help="symplectic-check: named form or expression")
    p.add_argument("--omega", default=None, help="lefschetz: the class to cup with (default: omega)")
    p.add_argument("--universal-kernel", metavar="EXPR", default=None,
                   help="lefschetz: certify EXPR lies in the kernel of cup with every invariant class")
    p.add_argument("--power", type=int, default=None, help="fixed-locus: the power k of rho")
    p.add_argument("--golden", type=Path, default=None, help="verify-all: compare the JSON report with this file")
    p.add_argument("-o", "--output", type=Path, default=None, help="also write the JSON report here")
    return p


def run(args: argparse.Namespace) -> rp.Report:
    cfg = load_config(args.config)
    cmd = args.command
    if cmd == "check":
        return rp.check_report(cfg)
    if cmd == "cohomology":
        return rp.cohomology_report(cfg)
    if cmd == "invariants":
        return rp.invariants_report(cfg)
    if cmd == "symplectic-check":
        return rp.symplectic_report(cfg, args.form, args.orientation)
    if cmd == "complex-check":
        return rp.complex_report(cfg)
    if cmd == "lefschetz":
        return rp.lefschetz_command(cfg, args.omega or "omega", args.universal_kernel, args.orientation)
    if cmd == "fixed-locus":
        return rp.fixed_locus_report(cfg, args.power)
    if cmd == "singular-locus":
        return rp.singular_locus_command(cfg)
    return rp.verify_all(cfg, args.orientation)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run(args)
    except ConfigError as exc:
        print(f"nilverify: config error ({exc.kind}): {exc}", file=sys.stderr)
        return 2
    except (DomainError, PreconditionError) as exc:
        print(f"nilverify: {args.command} failed: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    if args.output is not None:
        args.output.write_text(report.to_json(), encoding="utf-8")
    code = report.exit_code
    if args.golden is not None:
        diffs = rp.diff_against_golden(report, args.golden.read_text(encoding="utf-8"))
        if diffs:
            print(f"nilverify: report differs from {args.golden} at {len(diffs)} place(s):", file=sys.stderr)
            for d in diffs[:20]:
                print(f"  {d}", file=sys.stderr)
            code = 1
        else:
            print(f"nilverify: report matches {args.golden}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
