"""JSON form of a ternary Γ-semiring: element names, name tables, Γ and the unit map."""

from typing import Any, Dict

from ..semiring import FiniteGroup, FiniteSemiring, TernaryGammaSemiring, as_gamma_semiring
from ..types import StructureError


def _lookup(names, value, label: str) -> int:
    try:
        return names.index(str(value))
    except ValueError as error:
        raise StructureError(f"{label}: unknown element '{value}'") from error


def _names(raw, label: str):
    if not isinstance(raw, list):
        raise StructureError(f"'{label}' must be a list of element names")
    return [str(n) for n in raw]


def _name_table(names, rows, label: str):
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise StructureError(f"'{label}' must be a list of lists of element names")
    return [[_lookup(names, v, f"'{label}' table") for v in row] for row in rows]


def semiring_from_dict(document: Dict[str, Any]) -> TernaryGammaSemiring:
    """Build a ternary Γ-semiring from the input document.

    Fields: `elements`, `add`, `mul`, `zero`, `one`, optional `gamma`
    (`elements`, `table`, `identity`) and optional `units` (γ name -> element name).
    Without `gamma`, Γ is trivial and u sends it to `one`.
    """
    if not isinstance(document, dict):
        raise StructureError("The semiring document must be a JSON object")
    for key in ("elements", "add", "mul", "zero", "one"):
        if key not in document:
            raise StructureError(f"Missing field '{key}'")
    names = _names(document["elements"], "elements")
    semiring = FiniteSemiring(
        tuple(names),
        _name_table(names, document["add"], "add"),
        _name_table(names, document["mul"], "mul"),
        _lookup(names, document["zero"], "zero"),
        _lookup(names, document["one"], "one"),
    )
    if "gamma" not in document:
        if document.get("units"):
            raise StructureError("'units' given without 'gamma'")
        return TernaryGammaSemiring.trivial(semiring)

    spec = document["gamma"]
    if not isinstance(spec, dict) or "elements" not in spec or "table" not in spec:
        raise StructureError("'gamma' must hold 'elements' and 'table'")
    gnames = _names(spec["elements"], "gamma.elements")
    group = FiniteGroup(
        tuple(gnames),
        _name_table(gnames, spec["table"], "gamma"),
        _lookup(gnames, spec.get("identity", gnames[0] if gnames else ""), "gamma identity"),
    )
    units_doc = document.get("units", {})
    if not isinstance(units_doc, dict):
        raise StructureError("'units' must map Γ element names to element names")
    unknown = set(units_doc) - set(gnames)
    if unknown:
        raise StructureError(f"'units' names unknown Γ elements {sorted(unknown)}")
    units = tuple(
        _lookup(names, units_doc.get(g, names[semiring.one]), f"unit of {g}") for g in gnames
    )
    return TernaryGammaSemiring(semiring, group, units)


def semiring_to_dict(T) -> Dict[str, Any]:
    T = as_gamma_semiring(T)
    S, G = T.semiring, T.gamma
    return {
        "elements": list(S.names),
        "add": [[S.names[v] for v in row] for row in S.add],
        "mul": [[S.names[v] for v in row] for row in S.mul],
        "zero": S.names[S.zero],
        "one": S.names[S.one],
        "gamma": {
            "elements": list(G.names),
            "table": [[G.names[v] for v in row] for row in G.table],
            "identity": G.names[G.identity],
        },
        "units": {G.names[g]: S.names[u] for g, u in enumerate(T.units)},
    }
