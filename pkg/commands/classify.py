# commands/classify.py
"""
classify (descriptor or catalogue model) and dolgachev.
"""

from commands.common import add_input_argument, read_document
from core.collections_criterion import criterion
from core.serialization import SchemaError, descriptor_from_json
from core.surface_classifier import classify_pgq0, dolgachev_admits, dolgachev_lambda
from core.surface_models import catalogue


def register(subparsers):
    p = subparsers.add_parser("classify", help="decide from minimality and Kodaira dimension (p_g = q = 0)")
    add_input_argument(p)
    p.add_argument("--model", help="use a catalogue model by name instead of a descriptor document")
    p.set_defaults(handler=run_classify)

    p = subparsers.add_parser("dolgachev", help="lambda and the decision for X_9(p_1, ..., p_n)")
    p.add_argument("multiplicities", nargs="+", type=int)
    p.set_defaults(handler=run_dolgachev)


def run_classify(args):
    if args.model:
        models = {m.name: m for m in catalogue()}
        if args.model not in models:
            raise SchemaError(f"unknown model '{args.model}'; known: {sorted(models)}")
        model = models[args.model]
        result = classify_pgq0(model.descriptor).to_json()
        result["model"] = model.to_json()
        result["lattice_admits"] = criterion(model.surface).admits
        return result, {"model": args.model}
    doc = read_document(args, ("descriptor",))
    return classify_pgq0(descriptor_from_json(doc["descriptor"])).to_json(), doc


def run_dolgachev(args):
    p = list(args.multiplicities)
    lam = dolgachev_lambda(p)
    return {"multiplicities": sorted(p), "lambda": lam, "admits": dolgachev_admits(p)}, {"multiplicities": p}
