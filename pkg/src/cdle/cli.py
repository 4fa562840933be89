"""``cdle check [--fuel N] [--print-erased] [--json-errors] [--trace] FILE...``

Exit status: 0 when every declaration in every file succeeds, 1 on any
checking failure (including fuel exhaustion), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .elaborate import Elaborator
from .lam import DEFAULT_FUEL
from .parser import ParseError, parse_file


@dataclass
class RunConfig:
    files: list[str]
    fuel: int = DEFAULT_FUEL
    print_erased: bool = False
    json_errors: bool = False
    trace: bool = False


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n <= 0:
        raise argparse.ArgumentTypeError("fuel must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="cdle", description="Type checker for .ced declaration files.")
    sub = p.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="check .ced files")
    check.add_argument("--fuel", type=_positive, default=None,
                       help=f"reduction steps per declaration (default {DEFAULT_FUEL}, "
                            "or $CDLE_FUEL)")
    check.add_argument("--print-erased", action="store_true",
                       help="print the erasure of every checked term")
    check.add_argument("--json-errors", action="store_true",
                       help="report diagnostics as JSON objects, one per line")
    check.add_argument("--trace", action="store_true",
                       help="log each typing rule applied")
    check.add_argument("files", nargs="+", metavar="FILE")
    return p


def parse_args(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    fuel = args.fuel
    if fuel is None:
        env = os.environ.get("CDLE_FUEL")
        fuel = _positive(env) if env else DEFAULT_FUEL
    return RunConfig(args.files, fuel, args.print_erased, args.json_errors, args.trace)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except (UsageError, argparse.ArgumentTypeError) as err:
        print(f"cdle: usage error: {err}", file=stderr)
        return 2

    status = 0

    def report(diag):
        if config.json_errors:
            print(json.dumps(diag.to_json(), ensure_ascii=False), file=stderr)
        else:
            print(diag.format(), file=stderr)

    for path in config.files:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as err:
            print(f"cdle: cannot read {path}: {err.strerror}", file=stderr)
            status = 2
            continue
        try:
            decls = parse_file(text, path)
        except ParseError as err:
            report(err.diagnostic)
            status = 2
            continue
        trace = (lambda line: print(line, file=stdout)) if config.trace else None
        elaborator = Elaborator(config.fuel, trace=trace, print_erased=config.print_erased)
        for decl in decls:
            result = elaborator.elaborate_one(decl)
            for line in result.output:
                print(line, file=stdout)
            for diag in result.diagnostics:
                report(diag)
            if not result.ok and status == 0:
                status = 1
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
