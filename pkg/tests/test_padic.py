#!/usr/bin/env python

"""Tests for `ltlab.model.Padic`."""

from fractions import Fraction

import pytest

from ltlab.core.Errors import NotEisenstein, NotIrreducibleDetected, OutOfConvergenceDomain, PrecisionExhausted
from ltlab.model.Padic import (DEFAULT_DIGITS, OmegaScalar, cyclotomic_closure, default_digits, find_root, make_field,
                               padic_exp, padic_log, qp_field, teichmuller, unit_log, working_digits)


def test_base_field_signature(q3):
    assert (q3.e, q3.f, q3.q) == (1, 1, 3)
    assert q3.label == "Q_3"
    assert q3.kind == "rational"


def test_eisenstein_stage(sqrt3):
    assert (sqrt3.e, sqrt3.f, sqrt3.q) == (2, 1, 3)
    assert sqrt3.kind == "eisenstein"
    assert sqrt3.generator ** 2 == 3
    assert sqrt3.pi == sqrt3.generator


def test_unramified_stage():
    field = make_field(2, [[1, 1, 1]])
    assert (field.e, field.f, field.q) == (1, 2, 4)
    assert field.kind == "unramified"


@pytest.mark.parametrize("poly", [[-9, 0, 1], [-3, 0, 2]])
def test_not_eisenstein(poly):
    with pytest.raises(NotEisenstein):
        make_field(3, [poly])


def test_reducible_stage():
    with pytest.raises(NotIrreducibleDetected):
        make_field(3, [[-1, 0, 1]])


def test_prime_required():
    with pytest.raises(NotIrreducibleDetected):
        qp_field(4)


def test_valuations(q3, sqrt3):
    assert q3.coerce(3).valuation() == 1
    assert q3.coerce(3).v_p() == 1
    assert sqrt3.generator.valuation() == 1
    assert sqrt3.generator.v_p() == Fraction(1, 2)
    assert sqrt3.coerce(3).valuation() == 2
    assert q3.coerce(Fraction(1, 9)).valuation() == -2


def test_precision_equality(q3):
    assert q3.coerce(1, 5) == q3.coerce(1 + 3 ** 5)
    assert not q3.coerce(1) == q3.coerce(1 + 3 ** 5)
    with pytest.raises(PrecisionExhausted):
        q3.coerce(3 ** 6, 5).valuation()


def test_teichmuller(q3, q5, sqrt3):
    assert teichmuller(1, q3) == 1
    assert teichmuller(2, sqrt3) == -1
    omega = teichmuller(2, q5, 20)
    assert omega ** 5 == omega
    assert omega ** 2 == -1
    assert omega.residue_key(1) == q5.coerce(2).residue_key(1)


def test_teichmuller_of_zero_residue(q3):
    with pytest.raises(PrecisionExhausted):
        teichmuller(3, q3)


def test_log_mercator(q5):
    assert padic_log(q5.one()) == 0
    expected = Fraction(5) - Fraction(25, 2) + Fraction(125, 3)
    assert padic_log(q5.coerce(6), 4) == expected


def test_exp_log_round_trip(q3):
    x = q3.coerce(1 + 9)
    assert padic_exp(padic_log(x, 20), 20) == x


def test_log_of_product(q3, sqrt3):
    x, y = q3.coerce(4), q3.coerce(7)
    assert padic_log(x * y, 20) == padic_log(x, 20) + padic_log(y, 20)
    a, b = 1 + sqrt3.generator, 1 + sqrt3.generator * 2
    assert padic_log(a * b, 20) == padic_log(a, 20) + padic_log(b, 20)


def test_log_domain(q3):
    with pytest.raises(OutOfConvergenceDomain):
        padic_log(q3.coerce(2))
    with pytest.raises(OutOfConvergenceDomain):
        padic_exp(q3.coerce(1))


def test_unit_log_kills_roots_of_unity(q5):
    assert unit_log(teichmuller(2, q5, 20), 20) == 0


def test_trace_and_norm(sqrt3):
    assert sqrt3.trace(sqrt3.one()) == 2
    assert sqrt3.trace(sqrt3.generator) == 0
    assert sqrt3.norm(sqrt3.generator) == -3


def test_residue_systems(q3, sqrt3):
    assert len(q3.residues(2)) == 9
    assert len(q3.units(2)) == 6
    assert len(sqrt3.residues(1)) == 3
    assert len(sqrt3.units(2)) == 6


def test_find_root(q3):
    root = find_root([-7, 0, 1], q3)
    assert root is not None
    assert root ** 2 == 7


def test_cyclotomic_closure(q3):
    closure, zeta = cyclotomic_closure(q3, 1)
    assert closure.e == 2
    assert zeta ** 3 == 1
    assert not zeta == 1
    assert (zeta - 1).v_p() == Fraction(1, 2)


def test_omega_scalar_arithmetic(q3):
    omega = OmegaScalar.omega(q3)
    assert omega * omega.inverse() == 1
    assert (omega ** 2).omega_degrees() == (2, 2)
    assert OmegaScalar.const(q3.coerce(5), q3).specialize(1) == 5
    assert (omega + 2).specialize(1) == 3


def test_working_digits(q5):
    assert default_digits() == DEFAULT_DIGITS
    with working_digits(7):
        assert default_digits() == 7
        omega = teichmuller(2, q5)
        assert omega.prec == 7
        with working_digits(30):
            assert teichmuller(2, q5).prec == 30
        assert default_digits() == 7
    assert default_digits() == DEFAULT_DIGITS
    assert teichmuller(2, q5, 20) == omega
    with pytest.raises(ValueError):
        with working_digits(0):
            pass
