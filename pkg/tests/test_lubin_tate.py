#!/usr/bin/env python

"""Tests for `ltlab.model.LubinTate`."""

from fractions import Fraction

import pytest

from ltlab.core.Errors import FrobeniusUnsupported, LevelUnsupported, NotEisenstein
from ltlab.model.LubinTate import EtaSum, FormalGroup
from ltlab.model.Padic import make_field
from ltlab.model.Series import MultiSeries, Series

ORDER = 8


def test_group_law_p2_is_multiplicative():
    group = FormalGroup.special(make_field(2))
    x, y = MultiSeries.variables(group.field, 2, 10)
    assert group.group_law(10) == x + y + x * y


def test_group_law_cyclotomic(cyclotomic3):
    x, y = MultiSeries.variables(cyclotomic3.field, 2, 7)
    assert cyclotomic3.group_law(7) == x + y + x * y


@pytest.mark.parametrize("name", ["special3", "special5", "special_sqrt3"])
def test_group_law_identities(name, request):
    group = request.getfixturevalue(name)
    law = group.group_law(6)
    x, y = MultiSeries.variables(group.field, 2, 6)
    zero = MultiSeries(group.field, 2, {}, 6)
    assert law.substitute([x, zero]) == x
    assert law.substitute([y, x]) == law
    for exponent, c in law.coeffs.items():
        assert c.is_integral(), exponent


def test_group_law_functional_equation(special3):
    degree = 6
    law = special3.group_law(degree)
    px = MultiSeries.from_series(special3.frobenius, 0, 2, degree)
    py = MultiSeries.from_series(special3.frobenius, 1, 2, degree)
    assert law.substitute([px, py]) == law.compose_into(special3.frobenius.truncate(degree))


def test_log_functional_equation(special3):
    log = special3.log_lt(ORDER)
    assert log.compose(special3.frobenius) == log.scale(special3.pi)


def test_exp_inverts_log(cyclotomic3, special_sqrt3):
    for group in (cyclotomic3, special_sqrt3):
        assert group.exp_lt(ORDER).compose(group.log_lt(ORDER)) == Series.variable(group.field)


def test_endomorphisms(special3, cyclotomic3):
    assert special3.endomorphism(1, ORDER) == Series.variable(special3.field)
    assert special3.endomorphism(special3.pi, ORDER) == special3.frobenius.truncate(ORDER)
    double = special3.endomorphism(2, ORDER)
    assert double.compose(double) == special3.endomorphism(4, ORDER)
    minus = cyclotomic3.endomorphism(-1, ORDER)
    assert minus == Series(cyclotomic3.field, {k: (-1) ** k for k in range(1, ORDER)}, ORDER)


def test_log_of_endomorphism(special5):
    log = special5.log_lt(ORDER)
    assert log.compose(special5.endomorphism(3, ORDER)) == log.scale(3)


def test_qn_polynomial(special3):
    assert special3.qn_polynomial(1) == Series(special3.field, {0: 3, 2: 1})
    assert special3.qn_polynomial(2).constant_term() == 3


def test_invalid_frobenius(q3, sqrt3):
    with pytest.raises(NotEisenstein):
        FormalGroup.custom(q3, [0, 3, 0, 2])
    with pytest.raises(NotEisenstein):
        FormalGroup.custom(q3, [0, 3, 1, 1])
    with pytest.raises(NotEisenstein):
        FormalGroup.custom(q3, [1, 3, 0, 1])
    with pytest.raises(FrobeniusUnsupported):
        FormalGroup.cyclotomic(sqrt3)
    assert FormalGroup.custom(q3, [0, 3, 3, 1]).variant == "custom"


def test_torsion_level_one_special(special3):
    tower = special3.torsion_tower(1)
    u = tower.point
    assert u ** 2 == -3
    assert special3.iterate(1).lift(tower.field).evaluate(u) == 0
    assert len(tower.orbit) == 2
    assert len(tower.torsion) == 3


def test_torsion_level_one_cyclotomic(cyclotomic3):
    tower = cyclotomic3.torsion_tower(1)
    assert tower.valuation_p(1) == Fraction(1, 2)
    assert (tower.point + 1) ** 3 == 1


def test_torsion_level_two(special3):
    tower = special3.torsion_tower(2)
    u1, u2 = tower.points
    top = tower.field
    assert special3.frobenius.lift(top).evaluate(u2) == u1
    assert tower.valuation_p(2) == Fraction(1, 6)


def test_torsion_level_limits(special3, q3):
    with pytest.raises(LevelUnsupported):
        special3.torsion_tower(3)
    with pytest.raises(FrobeniusUnsupported):
        FormalGroup.custom(q3, [0, 3, 3, 1]).torsion_tower(1)


def test_eta_exponential_law(special3):
    field = special3.field
    a, b = special3.eta(1, ORDER), special3.eta(2, ORDER)
    assert (a * b).series == special3.eta(3, ORDER).series
    assert special3.eta(0, ORDER).series == 1
    assert special3.eta(5, ORDER).x == field.coerce(5)


def test_eta_cyclotomic_is_binomial(cyclotomic3):
    s = EtaSum.eta(cyclotomic3, 2)
    binomial = Series(cyclotomic3.field, {0: 1, 1: 2, 2: 1})
    assert s.to_polynomial() == binomial
    assert s.to_series(6).specialize_omega(1) == binomial.truncate(6)


def test_eta_sum_operators(special3):
    field = special3.field
    s = EtaSum(special3, {1: 2, 3: 1, 6: -1})
    assert s.phi().psi() == s.scale(Fraction(special3.q) / special3.pi)
    assert EtaSum.eta(special3, 1).psi_capital() == EtaSum(special3)
    assert s.gamma(2).terms.keys() == {field.coerce(2), field.coerce(6), field.coerce(12)}
    assert EtaSum.eta(special3, 3).psi_capital() == EtaSum.eta(special3, 1)


def test_iota_constant_term_cyclotomic(cyclotomic3):
    tower = cyclotomic3.torsion_tower(1)
    image = cyclotomic3.iota_n(Series.variable(cyclotomic3.field), tower, 4)
    assert image.constant_term() == tower.point
