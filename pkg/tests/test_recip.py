#!/usr/bin/env python

"""Tests for `ltlab.model.Recip`."""

from fractions import Fraction

import pytest

from ltlab.core.Errors import ExceptionalPole, HigherOrderPole, LevelUnsupported, OutOfConvergenceDomain
from ltlab.model.Chareps import Character
from ltlab.model.Dist import Measure
from ltlab.model.LubinTate import FormalGroup
from ltlab.model.Padic import make_field, padic_log
from ltlab.model.Recip import (DescentCase, char_sum, coleman_checks, descent_grid, evaluate_on_units,
                               exceptional_residue, lhs_via_iota, log_coleman_constant, log_coleman_dirac,
                               psi_eigen_measure, random_measure, scalar_constants_suite, twist_consistency,
                               verify_descent)
from ltlab.model.Series import Series


def test_char_sum(q3):
    trivial = Character.trivial(q3)
    assert char_sum(trivial, 1, 1) == -1
    assert char_sum(trivial, 3, 1) == q3.q - 1
    with pytest.raises(ValueError):
        char_sum(trivial, 1, 0)
    with pytest.raises(ValueError):
        char_sum(None, 1, 1)


def test_exceptional_residue(special3, cyclotomic3):
    for group in (special3, cyclotomic3):
        f = Series(group.field, {0: 2, 1: 1, 3: 5})
        assert exceptional_residue(f, group) == 2 * Fraction(1 - group.q, group.q)
    with pytest.raises(HigherOrderPole):
        exceptional_residue(Series.monomial(special3.field, -1), special3)


def test_coleman_checks(special3, cyclotomic3):
    assert [r.name for r in coleman_checks(special3)] == ["coleman_residue"]
    results = coleman_checks(cyclotomic3)
    assert len(results) == 2
    assert all(r.passed for r in results)


def test_log_coleman_constant(special3):
    field = special3.field
    assert log_coleman_constant(Series.variable(field), 4, special3) == padic_log(field.coerce(4))
    with pytest.raises(OutOfConvergenceDomain):
        log_coleman_constant(Series.variable(field), 2, special3)
    with pytest.raises(ValueError):
        log_coleman_constant(Series.monomial(field, 2), 4, special3)
    expected = padic_log(field.coerce(4)) + padic_log(field.coerce(7)) * 2
    assert log_coleman_dirac({4: 1, 7: 2}, special3) == expected


def test_scalar_constants(special3, special_sqrt3):
    for group in (special3, special_sqrt3):
        results = scalar_constants_suite(group, 3)
        assert results
        assert all(r.passed for r in results), [r.name for r in results if not r.passed]


def test_descent_identity(special3):
    cases = descent_grid(special3, 1, measures=2, seed=11)
    assert cases
    reports = verify_descent(cases)
    assert all(report.equal for report in reports), [r.parameters for r in reports if not r.equal]
    assert reports[0].as_dict()["parameters"]["p"] == "3"


def test_descent_excludes_p2():
    group = FormalGroup.special(make_field(2))
    case = DescentCase(group, Character.unramified(group.field, 3), Measure.dirac(group, 1))
    with pytest.raises(LevelUnsupported):
        verify_descent([case])


def test_psi_eigen_measure(special3):
    field = special3.field
    with pytest.raises(ExceptionalPole):
        psi_eigen_measure(special3, Character.unramified(field, 1))
    delta = Character.unramified(field, 2)
    mu = psi_eigen_measure(special3, delta, seed=3)
    units_mass = evaluate_on_units(mu, Character.trivial(field))
    assert mu.points[field.pi] == units_mass * Fraction(2, 1 - 2)


def test_evaluate_on_units(q3, special3):
    mu = random_measure(special3, 1, seed=5)
    trivial = Character.trivial(q3)
    total = sum(c for j, c in mu.points.items() if j.is_unit())
    assert evaluate_on_units(mu, trivial) == total


def test_iota_bridge_needs_cyclotomic(special3):
    with pytest.raises(ValueError):
        lhs_via_iota(Measure.dirac(special3, 1), Character.trivial(special3.field), special3)


def test_twist_consistency(q3, q5):
    assert twist_consistency(Character.unramified(q3, 2))
    assert twist_consistency(Character.unramified(q5, 7))
    with pytest.raises(ValueError):
        twist_consistency(Character.power(q3, 1))
