#!/usr/bin/env python

"""Tests for `ltlab.model.PhiGamma`."""

import pytest

from ltlab.core.Errors import CharacterMismatch, NotInEtaSpan
from ltlab.model.Chareps import Character
from ltlab.model.LubinTate import EtaSum
from ltlab.model.PhiGamma import (RankOneModule, colmez_transform, gamma_act, is_etale, phi, phi_inverse, psi,
                                  psi_capital, psi_eta_span, psi_power_sums, residue_map, residue_pairing, slope,
                                  twist_partial)
from ltlab.model.Padic import OmegaScalar
from ltlab.model.Series import Series


def test_phi_on_basis_and_variable(special3):
    field = special3.field
    delta = Character.unramified(field, 2)
    module = RankOneModule(special3, delta)
    assert phi(module.basis()) == module.basis().scale(2)
    trivial = RankOneModule(special3)
    assert phi(trivial.element(Series.variable(field))).coefficient == special3.frobenius


def test_phi_and_gamma_on_eta(special3):
    module = RankOneModule(special3)
    m = module.element(EtaSum.eta(special3, 2))
    assert phi(m).coefficient == EtaSum.eta(special3, 6)
    assert gamma_act(2, m).coefficient == EtaSum.eta(special3, 4)
    with pytest.raises(ValueError):
        gamma_act(3, m)


def test_gamma_identity(special5):
    module = RankOneModule(special5)
    f = module.element(Series(special5.field, {0: 1, 1: 2, 3: -1}, 8))
    assert gamma_act(1, f) == f


def test_power_sums_descend(special3, special_sqrt3, cyclotomic3):
    for group in (special3, special_sqrt3, cyclotomic3):
        sums = psi_power_sums(group)
        assert len(sums) == group.q
        assert sums[0] == group.q


def test_psi_after_phi(special3, special5, cyclotomic3):
    for group in (special3, special5, cyclotomic3):
        module = RankOneModule(group)
        f = module.element(Series(group.field, {0: 3, 1: -2, 2: 1, 4: 1}))
        assert psi(phi(f)) == f.scale(group.pi.inverse() * group.q)


def test_psi_projection_formula(special3):
    field = special3.field
    module = RankOneModule(special3)
    f1 = Series(field, {0: 1, 1: 2})
    f2 = Series(field, {0: 2, 1: 1, 2: 4})
    lhs = psi(module.element(phi(module.element(f1)).coefficient * f2))
    rhs = psi(module.element(f2)).coefficient * f1
    assert lhs.coefficient == rhs


def test_psi_trace_form_matches_eta_span(cyclotomic3):
    module = RankOneModule(cyclotomic3)
    s = EtaSum(cyclotomic3, {1: 1, 3: 2, 2: -1})
    polynomial = s.to_polynomial()
    assert psi(module.element(polynomial)).coefficient == psi_eta_span(module.element(s)).coefficient.to_polynomial()


def test_psi_eta_span_requires_eta(special3):
    module = RankOneModule(special3)
    with pytest.raises(NotInEtaSpan):
        psi_eta_span(module.element(Series.variable(special3.field)))


def test_psi_capital_kills_units(special3):
    module = RankOneModule(special3)
    assert psi_capital(module.element(EtaSum.eta(special3, 2))).coefficient == EtaSum(special3)


def test_phi_inverse(special3):
    module = RankOneModule(special3)
    image = phi(module.element(EtaSum.eta(special3, 1)))
    assert phi_inverse(image).coefficient == EtaSum.eta(special3, 1)
    with pytest.raises(NotInEtaSpan):
        phi_inverse(module.element(EtaSum.eta(special3, 1)))


def test_residue_pairing(special3):
    field = special3.field
    chi_module = RankOneModule(special3, Character.chi(field))
    trivial = RankOneModule(special3)
    assert residue_pairing(chi_module.element(Series.monomial(field, -1)), trivial.basis()) == 1
    with pytest.raises(CharacterMismatch):
        residue_pairing(trivial.basis(), trivial.basis())


def test_residue_map(special3):
    field = special3.field
    module = RankOneModule(special3, Character.power(field, 1))
    assert residue_map(module.element(Series.monomial(field, -1))) == 1
    assert residue_map(module.basis()) == 0


def test_colmez_transform(special3):
    field = special3.field
    module = RankOneModule(special3)
    g = special3.g_lt(20).inverse()
    f = module.element(Series.monomial(field, -1) * g)
    assert colmez_transform(f, 2) == 1
    assert colmez_transform(module.element(Series(field, {0: 1, 1: 1})), 2) == 0


def test_twist_partial(special3):
    field = special3.field
    module = RankOneModule(special3)
    image = twist_partial(module.element(EtaSum.eta(special3, 2)))
    assert image.module.delta == Character.power(field, 1)
    assert image.coefficient == EtaSum.eta(special3, 2, OmegaScalar(field, {1: field.coerce(2)}))
    assert twist_partial(module.basis()).coefficient == 0


def test_slopes(special3, special_sqrt3):
    field = special3.field
    assert slope(RankOneModule(special3, Character.power(field, 1))) == 1
    assert is_etale(RankOneModule(special3, Character.unramified(field, 2)))
    assert slope(RankOneModule(special3, Character.chi(field))) == 0
    assert slope(RankOneModule(special3, Character.unramified(field, 9))) == 2
    assert slope(RankOneModule(special_sqrt3, Character.power(special_sqrt3.field, 1))) == 1
