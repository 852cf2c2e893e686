# commands/normal_forms.py
"""
normalize-characteristic and reduce-trigonal: the lattice-theoretic side,
independent of any surface.
"""

from commands.common import add_input_argument, read_document, search_limits
from core.characteristic_orbits import main_equivalence, normalize_by_reflections, standard_lattice
from core.lattice_core import norm
from core.serialization import lattice_from_json, trigonal_from_json, vectors_from_json
from core.trigonal_forms import SpecialPair, reduce_even, reduce_special, trig_determinants


def register(subparsers):
    p = subparsers.add_parser(
        "normalize-characteristic",
        help="decide whether omega comes from a trigonal special basis and build that basis",
    )
    add_input_argument(p)
    p.set_defaults(handler=run_normalize_characteristic)

    p = subparsers.add_parser("reduce-trigonal", help="reduce a trigonal special pair to its canonical form")
    add_input_argument(p)
    p.set_defaults(handler=run_reduce_trigonal)
    p.add_argument("--even", action="store_true", help="reduce an even form to U^m instead")


def run_normalize_characteristic(args):
    doc = read_document(args, ("lattice", "omega"))
    L = lattice_from_json(doc["lattice"])
    (omega,) = vectors_from_json([doc["omega"]], "omega")
    result = main_equivalence(L, omega, search_limits(args)).to_json()
    if L.rank and L == standard_lattice(L.rank) and len(omega) == L.rank and norm(L, omega) >= 0:
        normal = normalize_by_reflections(L, omega)
        result["normal_form"] = list(normal.vector)
        if not result["transcript"]:
            result["transcript"] = normal.transcript
    if not args.trace:
        result.pop("transcript", None)
    return result, doc


def run_reduce_trigonal(args):
    doc = read_document(args, ("trig",), ("omega",))
    form = trigonal_from_json(doc["trig"])
    S = SpecialPair.from_trigonal(form.diag)
    if "omega" in doc:
        (omega,) = vectors_from_json([doc["omega"]], "omega")
        S = SpecialPair(S.lattice, omega, S.basis)
    result = {"determinants": trig_determinants(form.diag)}
    if args.even:
        reduction = reduce_even(S)
        result.update({
            "m": reduction.m,
            "basis": reduction.basis.to_json(),
            "trigonal_basis": reduction.trigonal_basis.to_json(),
            "trace": reduction.trace,
        })
    else:
        result.update(reduce_special(S).to_json())
    if not args.trace:
        result.pop("trace", None)
    return result, doc
