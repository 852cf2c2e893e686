# commands/toric.py
"""
toric-fan: toric system and fan from a collection, a divisor family or a
self-intersection cycle.
"""

from commands.common import add_input_argument, read_document
from core.fan_plot import render_fan_svg
from core.riemann_roch import collection_to_trigonal
from core.serialization import SchemaError, classes_from_json, surface_from_json, toric_from_json, vectors_from_json
from core.toric_systems import fan_from_toric_system, toric_system_from_collection


def register(subparsers):
    p = subparsers.add_parser("toric-fan", help="toric system and smooth complete fan")
    add_input_argument(p)
    p.add_argument("--svg", help="also draw the fan to this SVG file")
    p.set_defaults(handler=run_toric_fan)


def run_toric_fan(args):
    doc = read_document(args, (), ("surface", "classes", "divisors", "toric_system"))
    if "toric_system" in doc:
        if set(doc) - {"schema", "toric_system"}:
            raise SchemaError("document: toric_system cannot be combined with other fields")
        system = toric_from_json(doc["toric_system"])
    else:
        if "surface" not in doc:
            raise SchemaError("document: missing field 'surface'")
        S = surface_from_json(doc["surface"])
        if "divisors" in doc:
            divisors = vectors_from_json(doc["divisors"], "divisors")
        elif "classes" in doc:
            divisors, _ = collection_to_trigonal(S, classes_from_json(doc["classes"]))
        else:
            raise SchemaError("document: missing field 'classes' or 'divisors'")
        system = toric_system_from_collection(S, divisors)
    fan = fan_from_toric_system(system)
    result = {**system.to_json(), **fan.to_json()}
    if args.svg:
        result["svg"] = str(render_fan_svg(fan, args.svg, system))
    return result, doc
