#!/usr/bin/env python

"""Tests for `ltlab.model.Series`."""

from fractions import Fraction

import pytest

from ltlab.core.Errors import InexactSeries, NonConvergentComposition, TailNotDominated, TruncationTooShort
from ltlab.model.Series import AnnulusSpec, MultiSeries, Series


def test_composition_of_polynomials(q3):
    f = Series.monomial(q3, 2)
    g = Series(q3, {1: 1, 2: 1})
    assert f.compose(g) == Series(q3, {2: 1, 3: 2, 4: 1})


def test_geometric_series(q3):
    f = Series.from_list(q3, [1, 1]).inverse(trunc=8)
    assert f.trunc == 8
    assert f.compose(Series(q3, {1: 2})) == Series(q3, {k: (-2) ** k for k in range(8)}, 8)


def test_product_with_inverse(q3):
    f = Series.from_list(q3, [1, 3, 0, 1])
    assert f * f.inverse(trunc=10) == 1


def test_reversion(q3):
    f = Series(q3, {1: 1, 2: 1, 3: 3}, 10)
    assert f.compose(f.reversion()) == Series.variable(q3)


def test_reversion_needs_order_one(q3):
    with pytest.raises(NonConvergentComposition):
        Series(q3, {2: 1}, 6).reversion()


def test_residue_and_derivative(q3):
    f = Series(q3, {-3: 2, -1: 5, 2: 1})
    assert f.residue() == 5
    assert f.derivative().residue() == 0
    assert Series.monomial(q3, 3).derivative() == Series.monomial(q3, 2, 3)
    assert Series.monomial(q3, -1).residue() == 1


def test_residue_dt_cyclotomic(q3, cyclotomic3):
    assert Series.monomial(q3, -1).residue_dt(cyclotomic3) == 1


def test_truncation_is_respected(q3):
    f = Series(q3, {0: 1, 5: 1}, 4)
    assert 5 not in f.coeffs
    with pytest.raises(TruncationTooShort):
        f.coefficient(4)


def test_evaluate_needs_exact_head(q3):
    f = Series(q3, {0: 1, 1: 1})
    assert f.evaluate(2) == 3
    with pytest.raises(InexactSeries):
        f.truncate(3).evaluate(2)


def test_annulus_valuation(q3):
    annulus = AnnulusSpec.create(1)
    assert Series.variable(q3).annulus_valuation(annulus) == 1
    assert Series(q3, {0: 3, 2: 1}).annulus_valuation(annulus) == 1
    with pytest.raises(TailNotDominated):
        Series(q3, {0: 9}, 1).annulus_valuation(annulus)


def test_annulus_endpoints():
    with pytest.raises(ValueError):
        AnnulusSpec.create(Fraction(1, 2), Fraction(1, 4))


def test_divmod_monic(q3):
    quotient, remainder = Series(q3, {0: -1, 2: 1}).divmod_monic(Series(q3, {0: -1, 1: 1}))
    assert quotient == Series(q3, {0: 1, 1: 1})
    assert remainder == 0


def test_base_expansion_reassembles(q3, special3):
    f = Series(q3, {0: 2, 1: 1, 4: 5, 7: 1})
    divisor = special3.frobenius
    digits = f.base_expansion(divisor)
    total, power = Series(q3, {}), Series.const(1, q3)
    for r in digits:
        total = total + r * power
        power = power * divisor
    assert total == f


def test_multi_series_substitution(q3):
    x, y = MultiSeries.variables(q3, 2, 6)
    law = x + y + x * y
    zero = MultiSeries(q3, 2, {}, 6)
    assert law.substitute([x, zero]) == x
    assert law.homogeneous_part(2) == x * y


def test_sup_norm_log(q3):
    assert Series.const(3, q3).sup_norm_log() == 1
    assert Series(q3, {0: 1, 1: 3}).sup_norm_log() == 0
    assert Series(q3, {0: 9, 2: 18}).sup_norm_log() == 2
    with pytest.raises(TailNotDominated):
        Series(q3, {0: 3}, 4).sup_norm_log()


def _random_laurent(rng, field, low, high, unit_linear=False):
    coeffs = {k: int(rng.integers(-5, 6)) for k in range(low, high + 1)}
    if unit_linear:
        coeffs[1] = int(rng.integers(1, 3))
    return Series(field, coeffs)


@pytest.mark.parametrize("group_name", ["special3", "special_sqrt3"])
def test_integration_by_parts(request, rng, group_name):
    group = request.getfixturevalue(group_name)
    field = group.field
    for _ in range(5):
        f = _random_laurent(rng, field, -3, 3)
        g = _random_laurent(rng, field, -3, 3)
        lhs = (group.invariant_derivative(f, 10) * g).residue_dt(group)
        rhs = -(f * group.invariant_derivative(g, 10)).residue_dt(group)
        assert lhs == rhs
        assert lhs == (f.derivative() * g).residue()


def test_compose_is_associative(rng, q3, sqrt3):
    for field in (q3, sqrt3):
        for _ in range(5):
            f = Series(field, {k: int(rng.integers(-5, 6)) for k in range(1, 6)}, 6)
            g = _random_laurent(rng, field, 1, 3, unit_linear=True)
            h = _random_laurent(rng, field, 1, 3, unit_linear=True)
            left = f.compose(g).compose(h)
            right = f.compose(g.compose(h))
            assert left.truncate(6) == right.truncate(6)


def test_annulus_valuation_is_multiplicative(rng, sqrt3):
    annulus = AnnulusSpec.create(Fraction(1, 4), Fraction(1, 2))
    root = sqrt3.pi
    f, g = Series.const(root, sqrt3), Series.variable(sqrt3)
    assert f.annulus_valuation(annulus) == Fraction(1, 2)
    assert g.annulus_valuation(annulus) == Fraction(1, 4)
    assert (f * g).annulus_valuation(annulus) == Fraction(3, 4)
    for _ in range(10):
        f = Series(sqrt3, {k: root ** int(rng.integers(0, 4)) * int(rng.integers(1, 3)) for k in range(4)})
        g = Series(sqrt3, {k: root ** int(rng.integers(0, 4)) * int(rng.integers(1, 3)) for k in range(1, 5)})
        assert (f * g).annulus_valuation(annulus) == f.annulus_valuation(annulus) + g.annulus_valuation(annulus)
