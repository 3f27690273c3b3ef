#!/usr/bin/env python

"""Tests for `ltlab.model.CohModel`."""

import pytest

from ltlab.core.Errors import CharacterMismatch
from ltlab.model.Chareps import Character, enumerate_characters
from ltlab.model.CohModel import (CohTable, IsotypicModel, KoszulPairing, ScalarModel, chenevier_check,
                                  closed_form_table, duality_mirror_check, euler_characteristic,
                                  euler_poincare_check, expected_dims, grid_characters, koszul_pairing_scalar,
                                  lambda_scalar_on, model_cohomology, zn_scalar_is_zero)
from ltlab.model.PhiGamma import RankOneModule


def test_expected_dims(q3):
    assert expected_dims(Character.power(q3, -1)).dims == (1, 2, 0)
    assert expected_dims(Character.chi(q3)).dims == (0, 2, 1)
    assert expected_dims(Character.unramified(q3, 2)).dims == (0, 1, 0)
    assert expected_dims(Character.power(q3, -1), "R+").dims == (1, 2, 1)
    assert expected_dims(Character.unramified(q3, 2), "R+").dims == (0, 0, 0)
    assert expected_dims(Character.power(q3, 1), "LA").dims == (0, 2, 1)
    with pytest.raises(ValueError):
        expected_dims(Character.chi(q3), "D")


def test_mirror_and_euler(special3):
    for delta in grid_characters(special3, 2):
        assert duality_mirror_check(delta), delta.label
        assert euler_poincare_check(expected_dims(delta)), delta.label


def test_euler_characteristic():
    assert euler_characteristic(CohTable((1, 2, 1))) == 0
    assert CohTable((0, 1, 0)).euler == -1
    assert not euler_poincare_check(CohTable((1, 2, 1)))
    assert euler_poincare_check(CohTable((0, 3, 0)), index=3)


@pytest.mark.parametrize("kind", ["Pol", "D"])
def test_model_matches_closed_form(special3, kind):
    for delta in grid_characters(special3, 3):
        assert model_cohomology(kind, delta, 3).dims == closed_form_table(kind, delta, 3).dims, delta.label
        assert (model_cohomology(kind, delta, 3, with_z=False).dims
                == closed_form_table(kind, delta, 3, with_z=False).dims), delta.label


def test_model_generators(q3):
    table = model_cohomology("Pol", Character.power(q3, 1) * Character.chi(q3), 2)
    assert table.dims == (1, 2, 1)
    assert table.generators[0] == ["z^1"]
    d_table = model_cohomology("D", Character.power(q3, -2), 3)
    assert d_table.dims == (1, 2, 1)
    assert d_table.as_dict()["generators"]["1"] == ["t^2.psi", "t^2.z"]
    assert model_cohomology("D", Character.power(q3, -2), 1).dims == (0, 0, 0)
    assert model_cohomology("D", Character.power(q3, -1), 2, with_z=False).dims == (1, 1)


def test_model_lines(q3):
    model = IsotypicModel.create("D", Character.trivial(q3), 2)
    assert [line.label for line in model.lines] == ["t^0", "t^1", "t^2"]
    assert model.lines[0].psi_scalar == 1
    with pytest.raises(ValueError):
        IsotypicModel.create("Pol", Character.trivial(q3), -1)
    with pytest.raises(ValueError):
        IsotypicModel("X", Character.trivial(q3), 0, [])


def test_chenevier_bound(q3):
    assert chenevier_check(Character.unramified(q3, 2), 2)
    with pytest.raises(ValueError):
        chenevier_check(Character.power(q3, 1) * Character.chi(q3), 0)


def test_zn_scalar(q3):
    assert zn_scalar_is_zero(Character.trivial(q3), 1)
    quadratic = [d for d in enumerate_characters(q3, 1) if d.conductor() == 1][0]
    assert zn_scalar_is_zero(quadratic, 1)
    deep = [d for d in enumerate_characters(q3, 2) if d.conductor() == 2][0]
    assert not zn_scalar_is_zero(deep, 1)
    with pytest.raises(ValueError):
        zn_scalar_is_zero(deep, 0)


def test_koszul_pairing(special3):
    field = special3.field
    model = ScalarModel(RankOneModule(special3, Character.chi(field)))
    dual = ScalarModel(RankOneModule(special3))
    pairing = KoszulPairing(model, dual)
    assert pairing.constant == 1
    matrix = pairing.matrix()
    assert matrix[0][0] == 0 and matrix[1][1] == 0
    assert matrix[0][1] == -1
    assert matrix[1][0] == 1
    assert koszul_pairing_scalar(model, dual) == matrix
    assert pairing.degree_02(2, 3) == 6
    assert pairing.degree_20(1, 1) == 1
    with pytest.raises(CharacterMismatch):
        KoszulPairing(dual, dual)


def test_lambda_scalar(q3):
    assert lambda_scalar_on(Character.trivial(q3)) == -1
    with pytest.raises(ValueError):
        lambda_scalar_on(Character.chi(q3))
