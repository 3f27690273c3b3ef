# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 10/06/2023
 * Time: 11:02
 *
 * Edited by: eniocc
 * Date: 13/06/2023
 * Time: 22:40
"""
import json
import logging
from fractions import Fraction
from typing import Any, Dict, List

from ltlab.model.Chareps import AdditiveCharacter, Character
from ltlab.model.Padic import FieldElem, LocalField, OmegaScalar
from ltlab.model.Series import Series

_logger = logging.getLogger(__name__)


def _nested(field: LocalField, raw) -> list:
    """Coordinates of a raw element as nested lists of decimal strings, one level per tower stage."""
    if field.base is None:
        return [str(Fraction(raw))]
    return [_nested(field.base, c) for c in raw]


def _raw(field: LocalField, nested):
    if field.base is None:
        return Fraction(nested[0])
    if len(nested) != field.degree:
        raise ValueError(f"{field.label} expects {field.degree} coordinates, got {len(nested)}")
    return tuple(_raw(field.base, c) for c in nested)


def serialize_field_elem(x: FieldElem) -> Dict[str, Any]:
    return {"type": "FieldElem", "field": x.field.label, "coeffs": _nested(x.field, x.raw), "prec": x.prec}


def serialize_omega(x: OmegaScalar) -> Dict[str, Any]:
    return {"type": "OmegaScalar", "field": x.field.label,
            "terms": {str(k): serialize_field_elem(c) for k, c in sorted(x.terms.items())}}


def serialize_series(f: Series) -> Dict[str, Any]:
    exponents = f.exponents()
    low = min(exponents) if exponents else 0
    high = max(exponents) if exponents else -1
    return {"type": "Series", "field": f.field.label, "var": f.var, "min_exp": low,
            "coeffs": [serialize_omega(f.coefficient(k)) for k in range(low, high + 1)],
            "truncation": f.trunc, "prec": f.prec}


def serialize_character(delta: Character) -> Dict[str, Any]:
    values = delta.values_field
    table = [[_nested(delta.field, k) if isinstance(k, (tuple, Fraction)) else str(k), serialize_field_elem(v)]
             for k, v in delta.table.items()]
    table.sort(key=lambda row: json.dumps(row[0]))
    record = {"type": "Character", "field": delta.field.label, "values_field": values.label,
              "label": delta.label, "pi_value": serialize_field_elem(delta.pi_value),
              "unit_part": {"level": delta.level, "values": table}, "weight": delta.weight}
    if delta.exponent_s is not None:
        record["exponent_s"] = serialize_field_elem(delta.exponent_s)
    return record


def serialize_additive_character(psi: AdditiveCharacter) -> Dict[str, Any]:
    return {"type": "AdditiveCharacter", "field": psi.field.label, "level": psi.level,
            "zeta_order": psi.zeta_order, "different_generator": serialize_field_elem(psi.different_generator)}


def to_jsonable(value) -> Any:
    """Recursively turn ltlab values into JSON-compatible data; numbers become decimal strings."""
    if isinstance(value, FieldElem):
        return serialize_field_elem(value)
    if isinstance(value, OmegaScalar):
        return serialize_omega(value)
    if isinstance(value, Series):
        return serialize_series(value)
    if isinstance(value, Character):
        return serialize_character(value)
    if isinstance(value, AdditiveCharacter):
        return serialize_additive_character(value)
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        raise TypeError("floats are not serialized, use exact values")
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "as_dict"):
        return to_jsonable(value.as_dict())
    return str(value)


def serialize(value, indent: int = 2) -> str:
    """Canonical JSON: sorted keys, no floats, fixed separators."""
    return json.dumps(to_jsonable(value), sort_keys=True, indent=indent, ensure_ascii=False,
                      separators=(",", ": "))


def _find_field(label: str, fields: List[LocalField]) -> LocalField:
    for f in fields:
        for stage in f.chain():
            if stage.label == label:
                return stage
    raise ValueError(f"no field labelled {label!r} among {[f.label for f in fields]}")


def deserialize(data, *fields: LocalField):
    """
    Rebuild a FieldElem, OmegaScalar or Series from its serialized record.

    :param data: a record produced by ``to_jsonable`` or its JSON text.
    :param fields: candidate fields; the record's field label is looked up along their towers.
    """
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("type")
    field = _find_field(data["field"], list(fields))
    if kind == "FieldElem":
        return FieldElem(field, _raw(field, data["coeffs"]), data.get("prec"))
    if kind == "OmegaScalar":
        return OmegaScalar(field, {int(k): deserialize(v, field) for k, v in data["terms"].items()})
    if kind == "Series":
        coeffs = {data["min_exp"] + i: deserialize(c, field) for i, c in enumerate(data["coeffs"])}
        return Series(field, coeffs, data.get("truncation"), data.get("prec"), data.get("var", "Z"))
    raise ValueError(f"cannot deserialize records of type {kind!r}")
