# core/serialization.py
"""
JSON documents read and written by the command line. Every document carries
``"schema": "nslat/1"``; unknown fields are rejected by name.
"""

import json
from typing import Iterable, List, Optional

from core.lattice_core import GramLattice, LatticeError, as_vector
from core.riemann_roch import NumericalClass, SurfaceData
from core.surface_classifier import Kodaira, SurfaceDescriptor
from core.toric_systems import ToricSystem
from core.trigonal_forms import TrigonalForm

SCHEMA = "nslat/1"


class SchemaError(LatticeError):
    """Raised when a JSON document does not follow the nslat/1 layout."""


def _fields(obj, where: str, required: Iterable[str], optional: Iterable[str] = ()) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    required, optional = set(required), set(optional)
    unknown = sorted(set(obj) - required - optional)
    if unknown:
        raise SchemaError(f"{where}: unknown field '{unknown[0]}'")
    missing = sorted(required - set(obj))
    if missing:
        raise SchemaError(f"{where}: missing field '{missing[0]}'")
    return obj


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: expected an integer, got {value!r}")
    return value


def _vector(value, where: str):
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected a list of integers")
    return as_vector(_int(v, f"{where}[{i}]") for i, v in enumerate(value))


# ========== Loading ==========

def load_document(text: str, required: Iterable[str] = (), optional: Iterable[str] = ()) -> dict:
    """Parse and check the top level; ``json.JSONDecodeError`` propagates."""
    doc = json.loads(text)
    _fields(doc, "document", set(required) | {"schema"}, optional)
    if doc["schema"] != SCHEMA:
        raise SchemaError(f"document: schema must be '{SCHEMA}', got {doc['schema']!r}")
    return doc


def lattice_from_json(value, where: str = "lattice") -> GramLattice:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected a list of rows")
    return GramLattice([_vector(row, f"{where}[{i}]") for i, row in enumerate(value)])


def surface_from_json(value, where: str = "surface") -> SurfaceData:
    obj = _fields(value, where, ("gram", "K"), ("chiO",))
    return SurfaceData(
        lattice_from_json(obj["gram"], f"{where}.gram"),
        _vector(obj["K"], f"{where}.K"),
        _int(obj.get("chiO", 1), f"{where}.chiO"),
    )


def class_from_json(value, where: str = "class") -> NumericalClass:
    obj = _fields(value, where, ("rank", "c1"), ("c2",))
    return NumericalClass(
        _int(obj["rank"], f"{where}.rank"),
        _vector(obj["c1"], f"{where}.c1"),
        _int(obj.get("c2", 0), f"{where}.c2"),
    )


def classes_from_json(value, where: str = "classes") -> List[NumericalClass]:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected a list of classes")
    return [class_from_json(c, f"{where}[{i}]") for i, c in enumerate(value)]


def vectors_from_json(value, where: str) -> List[tuple]:
    if not isinstance(value, list):
        raise SchemaError(f"{where}: expected a list of vectors")
    return [_vector(v, f"{where}[{i}]") for i, v in enumerate(value)]


def descriptor_from_json(value, where: str = "descriptor") -> SurfaceDescriptor:
    obj = _fields(value, where, ("minimal", "kodaira"), ("dolgachev_multiplicities", "K2"))
    if not isinstance(obj["minimal"], bool):
        raise SchemaError(f"{where}.minimal: expected true or false")
    try:
        kodaira = Kodaira(obj["kodaira"])
    except ValueError:
        raise SchemaError(f"{where}.kodaira: expected one of {[k.value for k in Kodaira]}") from None
    mult = obj.get("dolgachev_multiplicities")
    K2: Optional[int] = obj.get("K2")
    return SurfaceDescriptor(
        minimal=obj["minimal"],
        kodaira=kodaira,
        dolgachev_multiplicities=None if mult is None else _vector(mult, f"{where}.dolgachev_multiplicities"),
        K2=None if K2 is None else _int(K2, f"{where}.K2"),
    )


def toric_from_json(value, where: str = "toric_system") -> ToricSystem:
    obj = _fields(value, where, ("self_intersections",))
    return ToricSystem(_vector(obj["self_intersections"], f"{where}.self_intersections"))


def trigonal_from_json(value, where: str = "trig") -> TrigonalForm:
    return TrigonalForm(_vector(value, where))


# ========== Dumping ==========

def dump(result: dict) -> str:
    """Stable output: schema stamp and sorted keys."""
    payload = dict(result)
    payload["schema"] = SCHEMA
    return json.dumps(payload, sort_keys=True)
