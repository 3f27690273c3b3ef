#!/usr/bin/env python

"""Tests for `ltlab.core.Serialize`."""

import json
from fractions import Fraction

import pytest

from ltlab.core.Serialize import deserialize, serialize, serialize_character, serialize_field_elem, to_jsonable
from ltlab.model.Chareps import AdditiveCharacter, Character
from ltlab.model.Padic import OmegaScalar
from ltlab.model.Series import Series


def test_field_elem_record(q3):
    record = serialize_field_elem(q3.coerce(Fraction(2, 3)))
    assert record["type"] == "FieldElem"
    assert record["field"] == "Q_3"
    assert record["coeffs"] == ["2/3"]
    assert "prec" in record


def test_stage_record_is_nested(sqrt3):
    record = serialize_field_elem(sqrt3.generator * 2 + 1)
    assert record["field"] == sqrt3.label
    assert record["coeffs"] == [["1"], ["2"]]


def test_round_trip_through_json(sqrt3):
    x = sqrt3.generator * Fraction(5, 9) - 7
    assert deserialize(serialize(x), sqrt3) == x
    omega = OmegaScalar(sqrt3, {-1: sqrt3.generator, 2: sqrt3.coerce(4)})
    assert deserialize(serialize(omega), sqrt3) == omega
    f = Series(sqrt3, {-1: 1, 2: sqrt3.generator}, 6)
    g = deserialize(serialize(f), sqrt3)
    assert g == f
    assert g.trunc == 6


def test_base_field_found_along_tower(sqrt3):
    x = sqrt3.base.coerce(Fraction(-4, 5))
    assert deserialize(serialize(x), sqrt3) == x


def test_no_floats():
    with pytest.raises(TypeError):
        to_jsonable({"value": 0.5})
    assert to_jsonable({1: Fraction(1, 2), "k": (True, None)}) == {"1": "1/2", "k": [True, None]}


def test_canonical_text(q3):
    text = serialize({"b": 1, "a": q3.one()})
    assert list(json.loads(text)) == ["a", "b"]
    assert "." not in json.dumps(json.loads(text)["a"]["coeffs"])


def test_character_record(q3):
    record = serialize_character(Character.chi(q3))
    assert record["type"] == "Character"
    assert record["weight"] == 1
    assert record["pi_value"]["coeffs"] == ["1"]
    assert record["unit_part"]["level"] == 0
    assert "exponent_s" not in record


def test_additive_character_record(q3):
    record = to_jsonable(AdditiveCharacter.standard(q3, 1))
    assert record["type"] == "AdditiveCharacter"
    assert record["level"] == 1
    assert record["zeta_order"] == 3
    assert record["different_generator"]["coeffs"] == ["1"]


def test_deserialize_errors(q3, sqrt3):
    with pytest.raises(ValueError):
        deserialize({"type": "Measure", "field": "Q_3"}, q3)
    with pytest.raises(ValueError):
        deserialize({"type": "FieldElem", "field": "Q_7", "coeffs": ["1"], "prec": None}, q3)
    with pytest.raises(ValueError):
        deserialize({"type": "FieldElem", "field": sqrt3.label, "coeffs": [["1"]], "prec": None}, sqrt3)
