# commands/settings.py
"""
config (get | set | list) and history.
"""

import json

from core import data_access
from core.serialization import SchemaError


def register(subparsers):
    p = subparsers.add_parser("config", help="read or change stored search settings")
    p.add_argument("action", choices=["get", "set", "list"])
    p.add_argument("key", nargs="?")
    p.add_argument("value", nargs="?")
    p.set_defaults(handler=run_config, record=False)

    p = subparsers.add_parser("history", help="latest recorded decisions")
    p.add_argument("--limit", type=int, default=20)
    p.set_defaults(handler=run_history, record=False)


def run_config(args):
    if args.action == "list":
        return {"settings": data_access.get_all_settings()}, None
    if args.key not in data_access.DEFAULT_SETTINGS:
        raise SchemaError(f"unknown setting '{args.key}'; known: {sorted(data_access.DEFAULT_SETTINGS)}")
    if args.action == "set":
        if args.value is None:
            raise SchemaError("config set needs a value")
        data_access.set_setting(args.key, args.value)
    return {"key": args.key, "value": data_access.get_setting(args.key)}, None


def run_history(args):
    df = data_access.get_history(args.limit)
    rows = df.to_dict(orient="records")
    for row in rows:
        row["result"] = json.loads(row.pop("result_json"))
        row["id"] = int(row["id"])
    return {"decisions": rows}, None
