#!/usr/bin/env python

"""Tests for `ltlab.model.Chareps`: characters, Gauss sums and epsilon constants."""

from fractions import Fraction

import pytest

from ltlab.core.Errors import (CharacterMismatch, ConductorExceedsLevel, ExceptionalPole, LevelUnsupported,
                               RamifiedCharacter, WrongVariant)
from ltlab.model.Chareps import (AdditiveCharacter, Character, check_complementary, classify, crystalline_factor,
                                 enumerate_characters, equivariant_epsilon, gamma_factor, gauss_sum_epsilon,
                                 interp_constant, weil_character)
from ltlab.model.Padic import OmegaScalar


def _quadratic(field):
    for delta in enumerate_characters(field, 1):
        if delta.conductor() == 1 and delta.on_unit(field.coerce(-1)) == -1:
            return delta
    raise AssertionError("no odd character of conductor 1")


def test_enumeration_counts(q3, q5, sqrt3):
    assert len(enumerate_characters(q3, 1)) == 2
    assert len(enumerate_characters(q5, 1)) == 4
    assert len(enumerate_characters(sqrt3, 1)) == 2
    level_two = enumerate_characters(q3, 2)
    assert len(level_two) == 6
    assert sorted(delta.conductor() for delta in level_two) == [0, 1, 2, 2, 2, 2]


def test_enumeration_limit(q3):
    with pytest.raises(LevelUnsupported):
        enumerate_characters(q3, 3)


def test_characters_are_multiplicative(q5):
    units = q5.units(1)
    for delta in enumerate_characters(q5, 1):
        for x in units:
            for y in units:
                assert delta.on_unit(x * y) == delta.on_unit(x) * delta.on_unit(y)


def test_basic_characters(q3):
    absolute = Character.absolute_value(q3)
    chi = Character.chi(q3)
    assert absolute(3) == Fraction(1, 3)
    assert absolute(2) == 1
    assert chi(3) == 1
    assert chi(2) == 2
    assert Character.power(q3, 2)(6) == 36
    assert Character.trivial(q3).conductor() == 0
    assert chi.conductor() == 0


def test_character_algebra(q3):
    delta = _quadratic(q3)
    assert delta * delta.inverse() == Character.trivial(q3)
    assert delta ** 2 == Character.trivial(q3)
    assert delta.conductor() == 1
    assert delta.reduced().level == 1


def test_additive_character(q3, sqrt3):
    for field in (q3, sqrt3):
        for level in (1, 2):
            psi = AdditiveCharacter.standard(field, level)
            assert psi.is_additive()
            assert psi.conductor_is_zero()


def test_quadratic_gauss_sum(q3):
    delta = _quadratic(q3)
    psi = AdditiveCharacter.standard(q3, 1)
    eps = gauss_sum_epsilon(delta, psi)
    assert eps ** 2 == -3


def test_unramified_epsilon_is_one(q3):
    psi = AdditiveCharacter.standard(q3, 1)
    assert gauss_sum_epsilon(Character.unramified(q3, 2), psi) == 1


def test_epsilon_with_nonzero_n_psi(q3):
    psi = AdditiveCharacter.standard(q3, 1)
    assert gauss_sum_epsilon(Character.unramified(q3, 2), psi, n_psi=1) == 3
    assert gauss_sum_epsilon(Character.unramified(q3, 2), psi, n_psi=2) == 9
    delta = _quadratic(q3) * Character.unramified(q3, 2)
    assert delta.conductor() == 1
    eps = gauss_sum_epsilon(delta, psi)
    assert eps == gauss_sum_epsilon(_quadratic(q3), psi) * 2
    assert gauss_sum_epsilon(delta, psi, n_psi=1) == eps * 3
    components = equivariant_epsilon(delta, psi, n_psi=1)
    assert components[1] == eps * 3


@pytest.mark.parametrize("name", ["q3", "q5", "sqrt3"])
def test_epsilon_duality(name, request):
    field = request.getfixturevalue(name)
    psi = AdditiveCharacter.standard(field, 1)
    absolute = Character.absolute_value(field)
    for delta in enumerate_characters(field, 1):
        product = gauss_sum_epsilon(delta, psi) * gauss_sum_epsilon(delta.inverse() * absolute, psi)
        assert product == delta.on_unit(field.coerce(-1))


def test_epsilon_duality_level_two(q3):
    psi = AdditiveCharacter.standard(q3, 2)
    absolute = Character.absolute_value(q3)
    for delta in enumerate_characters(q3, 2):
        product = gauss_sum_epsilon(delta, psi) * gauss_sum_epsilon(delta.inverse() * absolute, psi)
        assert product == delta.on_unit(q3.coerce(-1))


def test_conductor_exceeds_level(q3):
    delta = [d for d in enumerate_characters(q3, 2) if d.conductor() == 2][0]
    with pytest.raises(ConductorExceedsLevel):
        gauss_sum_epsilon(delta, AdditiveCharacter.standard(q3, 1))


def test_equivariant_epsilon_scaling(q3):
    delta = _quadratic(q3)
    psi = AdditiveCharacter.standard(q3, 1)
    eps = equivariant_epsilon(delta, psi)
    assert eps[1] == gauss_sum_epsilon(delta, psi)
    for b in q3.units(1):
        assert eps[b] == delta.on_unit(b) * eps[1]
    trivial = equivariant_epsilon(Character.trivial(q3), psi)
    assert list(trivial.components.values()) == [1]


def test_weil_character(q3):
    delta = Character.power(q3, 2)
    weil = weil_character(delta)
    assert weil.weight == 0
    assert weil.pi_value == Fraction(1, 9)
    assert weil_character(Character.unramified(q3, 2)) == Character.unramified(q3, 2)


def test_classification(q3):
    assert (classify(Character.power(q3, -2)).kind, classify(Character.power(q3, -2)).index) == ("sigma1", 2)
    assert (classify(Character.chi(q3)).kind, classify(Character.chi(q3)).index) == ("sigma2", 0)
    generic = classify(Character.unramified(q3, 2))
    assert generic.kind == "generic"
    assert generic.de_rham and generic.weight == 0
    assert classify(Character.power(q3, 2)).kind == "exceptional"


def test_crystalline_factor(q3):
    assert crystalline_factor(Character.unramified(q3, 2)) == Fraction(-5, 6)
    assert crystalline_factor(Character.unramified(q3, 3)) == Fraction(-4, 9)
    with pytest.raises(ExceptionalPole):
        crystalline_factor(Character.power(q3, 1))
    with pytest.raises(RamifiedCharacter):
        crystalline_factor(_quadratic(q3))


def test_gamma_factor(q3):
    assert gamma_factor([1], q3) == OmegaScalar.omega(q3, -1)
    assert gamma_factor([0], q3) == 1
    assert gamma_factor({1: 2}, q3) == OmegaScalar.omega(q3, -2)


def test_interpolation_constants(q3):
    delta = Character.unramified(q3, 2)
    assert interp_constant(delta, "C") == Fraction(-5, 6)
    twisted = interp_constant(Character.power(q3, 1) * delta, "Cprime")
    assert twisted == OmegaScalar.omega(q3) * interp_constant(delta, "C")
    with pytest.raises(WrongVariant):
        interp_constant(Character.power(q3, 1), "C")


def test_ramified_interpolation_constant_is_inverse_epsilon(q3):
    delta = _quadratic(q3)
    psi = AdditiveCharacter.standard(q3, 1)
    constants = interp_constant(delta, "C", psi)
    eps = equivariant_epsilon(delta, psi)
    for key, value in constants.items():
        assert value * eps.components[key] == 1


def test_complementary_characters(q3):
    check_complementary(Character.trivial(q3), Character.chi(q3))
    with pytest.raises(CharacterMismatch):
        check_complementary(Character.trivial(q3), Character.trivial(q3))
