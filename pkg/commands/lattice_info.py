# commands/lattice_info.py
"""
lattice-info: invariants of a Gram lattice.
"""

from commands.common import add_input_argument, read_document, search_limits
from core.characteristic_orbits import find_characteristic, is_characteristic, van_der_blij_check
from core.lattice_core import (
    determinant,
    is_definite,
    is_even,
    is_unimodular,
    orthogonal_components,
    signature,
)
from core.serialization import lattice_from_json, vectors_from_json
from core.trigonal_forms import is_trigonal_lattice


def register(subparsers):
    p = subparsers.add_parser("lattice-info", help="rank, determinant, signature, parity and trigonality")
    add_input_argument(p)
    p.set_defaults(handler=run_lattice_info)


def run_lattice_info(args):
    doc = read_document(args, ("lattice",), ("omega",))
    L = lattice_from_json(doc["lattice"])
    result = {
        "rank": L.rank,
        "determinant": determinant(L),
        "signature": signature(L).as_list(),
        "unimodular": is_unimodular(L),
        "even": is_even(L),
        "definite": is_definite(L),
        "components": orthogonal_components(L),
    }
    if result["unimodular"]:
        w = find_characteristic(L)
        result["characteristic"] = list(w)
        result["van_der_blij"] = van_der_blij_check(L, w)
        result["trigonal"] = is_trigonal_lattice(L, search_limits(args)).value
    if "omega" in doc:
        (omega,) = vectors_from_json([doc["omega"]], "omega")
        result["omega_characteristic"] = is_characteristic(L, omega)
    return result, doc
