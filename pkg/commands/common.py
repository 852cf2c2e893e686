# commands/common.py
"""
Input helpers shared by the subcommands.
"""

import sys
from pathlib import Path
from typing import Iterable

from core import data_access
from core.lattice_search import SearchLimits
from core.serialization import load_document


def add_input_argument(parser):
    parser.add_argument("--input", help="JSON document to read (default: standard input)")


def read_text(args) -> str:
    if getattr(args, "input", None):
        return Path(args.input).read_text(encoding="utf-8")
    return sys.stdin.read()


def read_document(args, required: Iterable[str] = (), optional: Iterable[str] = ()) -> dict:
    return load_document(read_text(args), required, optional)


def search_limits(args) -> SearchLimits:
    return data_access.load_search_limits(getattr(args, "box", None))
