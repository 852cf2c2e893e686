# app.py
"""
nslat: decide whether a surface with chi(O_S) = 1 has a numerically
exceptional collection of maximal length, and everything around it.

Standard output carries only JSON; status messages go to standard error.
Exit codes: 0 decision computed, 1 invalid input, 2 search bound exhausted.
"""

import argparse
import json
import logging
import sqlite3
import sys

# ========== 1. Import command modules ==========
import commands.normal_forms as normal_forms
import commands.classify as classify
import commands.criterion as criterion
import commands.lattice_info as lattice_info
import commands.settings as settings
import commands.toric as toric
from core import data_access
from core.lattice_core import LatticeError, SearchExhausted
from core.serialization import dump

logger = logging.getLogger("nslat")

# ========== 2. Command registry ==========
COMMANDS = [lattice_info, criterion, normal_forms, classify, toric, settings]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nslat", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--verbose", action="store_true", help="log progress at INFO level")
    parser.add_argument("--debug", action="store_true", help="log search details at DEBUG level")
    parser.add_argument("--trace", action="store_true", help="include move transcripts in the output")
    parser.add_argument("--box", type=int, help="coordinate box for diagonalization searches")
    parser.add_argument("--no-history", action="store_true", help="do not record this decision")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def configure_logging(args):
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(format="%(name)s:%(levelname)s:%(message)s", stream=sys.stderr, level=level, force=True)


def _record(args, document, result):
    if args.no_history or not getattr(args, "record", True):
        return
    try:
        if data_access.history_enabled():
            data_access.record_decision(args.command, document, result)
    except (sqlite3.Error, OSError) as exc:
        logger.warning("⚠️ decision not recorded: %s", exc)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for exhausted searches
        return 0 if exc.code in (0, None) else 1
    configure_logging(args)

    try:
        result, document = args.handler(args)
    except json.JSONDecodeError as exc:
        print(f"❌ invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", file=sys.stderr)
        return 1
    except SearchExhausted as exc:
        print(f"⚠️ {exc}", file=sys.stderr)
        print(dump({"result": "unknown", "reason": str(exc)}))
        return 2
    except LatticeError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return 1

    print(dump(result))
    _record(args, document, result)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
