"""JSON forms of elements, specializations, decompositions and PBW monomials."""
from __future__ import annotations

import json
from typing import Any

from .exactalg import HBAR, V, Poly, Q, parse_var
from .root_data import DegreeVector, DynkinDiagram, PBWMonomial, Root


class SchemaError(ValueError):
    pass


def poly_from_json_terms(terms: list) -> Poly:
    if not isinstance(terms, list):
        raise SchemaError("numerator must be a list of terms")
    out = Poly()
    for t in terms:
        if not isinstance(t, dict) or "coeff" not in t or "exps" not in t:
            raise SchemaError(f"bad term {t!r}")
        try:
            c = Q(str(t["coeff"]))
            ex = {parse_var(k): int(e) for k, e in t["exps"].items() if int(e)}
        except (ValueError, TypeError) as e:
            raise SchemaError(f"bad term {t!r}: {e}") from None
        out = out + Poly.monomial(ex, c)
    return out


def element_to_json(F) -> dict:
    gens = [X for i in F.diagram.colors for X in F.slot_vars(i)]
    gens.append(V if F.trig else HBAR)
    out = {"parities": "".join(map(str, F.diagram.parities)), "degree": list(F.degree),
           "numerator": F.numerator.to_json_terms(gens)}
    if F.trig:
        out["case"] = "trig"
    return out


def element_from_json(obj: dict, case: str | None = None):
    from .shuffle_rational import ShuffleElement
    from .shuffle_trig import TrigShuffleElement

    if not isinstance(obj, dict):
        raise SchemaError("element must be a JSON object")
    for key in ("parities", "degree", "numerator"):
        if key not in obj:
            raise SchemaError(f"missing field {key!r}")
    try:
        D = DynkinDiagram.parse(str(obj["parities"]))
    except ValueError as e:
        raise SchemaError(str(e)) from None
    degree = obj["degree"]
    if not isinstance(degree, list) or not all(isinstance(k, int) and k >= 0 for k in degree):
        raise SchemaError("degree must be a list of nonnegative integers")
    case = case or obj.get("case", "rational")
    cls = TrigShuffleElement if case == "trig" else ShuffleElement
    try:
        return cls(D, tuple(degree), poly_from_json_terms(obj["numerator"]))
    except (ValueError, TypeError) as e:
        raise SchemaError(str(e)) from None


def specialization_to_json(res) -> dict:
    gens = [v for v in res.poly.variables()] + [HBAR]
    return {"d": res.d.to_json(), "poly": res.poly.to_json_terms(gens)}


def degree_vector_from_json(obj) -> DegreeVector:
    """Accepts {"a1..2": 1, ...} or [["a1..2", 1], ...]."""
    items = obj.items() if isinstance(obj, dict) else obj
    try:
        return DegreeVector.of({Root.parse(str(b)): int(m) for b, m in items})
    except (ValueError, TypeError) as e:
        raise SchemaError(f"bad degree vector: {e}") from None


def monomial_from_json(obj) -> PBWMonomial:
    try:
        return PBWMonomial.from_json(obj)
    except (ValueError, TypeError, IndexError) as e:
        raise SchemaError(f"bad PBW monomial: {e}") from None


def decomposition_to_json(coeffs: dict, residual: Poly | None = None) -> dict:
    rows = [{"monomial": h.to_json(), "coeff": str(c)} for h, c in coeffs.items()]
    return {"coefficients": rows, "residual": "0" if residual is None else str(residual)}


def dumps(obj: Any) -> str:
    """Stable JSON text (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"
