# commands/criterion.py
"""
criterion, construct-collection and verify-collection.
"""

import logging

from commands.common import add_input_argument, read_document, search_limits
from core.collections_criterion import LatticeObstruction, construct_witness, criterion, necessary_conditions
from core.riemann_roch import collection_to_trigonal, euler_matrix, exceptionality_defects
from core.serialization import classes_from_json, surface_from_json

logger = logging.getLogger(__name__)


def register(subparsers):
    p = subparsers.add_parser("criterion", help="decide whether a full numerically exceptional collection exists")
    add_input_argument(p)
    p.set_defaults(handler=run_criterion)

    p = subparsers.add_parser("construct-collection", help="build a witness collection and its certificate")
    add_input_argument(p)
    p.set_defaults(handler=run_construct_collection)

    p = subparsers.add_parser("verify-collection", help="check a collection with the Euler pairing")
    add_input_argument(p)
    p.set_defaults(handler=run_verify_collection)


def run_criterion(args):
    doc = read_document(args, ("surface",))
    S = surface_from_json(doc["surface"])
    try:
        result = criterion(S).to_json()
    except LatticeObstruction as exc:
        logger.info("❌ obstruction: %s", exc)
        result = {"admits": False, "case": "NONE", "reason": str(exc), "obstruction": exc.report.to_json()}
    else:
        result["necessary"] = necessary_conditions(S.ns).to_json()
    return result, doc


def run_construct_collection(args):
    doc = read_document(args, ("surface",))
    S = surface_from_json(doc["surface"])
    witness = construct_witness(S, search_limits(args))
    return witness.to_json(), doc


def run_verify_collection(args):
    doc = read_document(args, ("surface", "classes"))
    S = surface_from_json(doc["surface"])
    classes = classes_from_json(doc["classes"])
    defects = exceptionality_defects(S, classes)
    result = {
        "exceptional": not defects,
        "length": len(classes),
        "maximal": len(classes) == S.rank + 2,
        "defects": [list(d) for d in defects],
        "matrix": euler_matrix(S, classes),
    }
    if not defects and all(E.rank == 1 for E in classes):
        divisors, form = collection_to_trigonal(S, classes)
        result["divisors"] = [list(d) for d in divisors]
        result.update(form.to_json())
    return result, doc
