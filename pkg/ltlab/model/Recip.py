# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 25/05/2023
 * Time: 15:48
 *
 * Edited by: eniocc
 * Date: 07/06/2023
 * Time: 19:03
"""
import logging
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from ltlab.core.Errors import (ConductorExceedsLevel, ExceptionalPole, HigherOrderPole, LevelUnsupported,
                               OutOfConvergenceDomain)
from ltlab.model.Chareps import (AdditiveCharacter, Character, _larger, enumerate_characters, interp_constant)
from ltlab.model.Dist import Measure, amice_eta, cg_constant, ctr_constant
from ltlab.model.LubinTate import FormalGroup
from ltlab.model.Padic import FieldElem, OmegaScalar, padic_log
from ltlab.model.PhiGamma import RankOneModule, psi_capital
from ltlab.model.Series import DEFAULT_ORDER, Series

_logger = logging.getLogger(__name__)


@dataclass
class DescentReport:
    parameters: Dict[str, object]
    lhs: OmegaScalar
    rhs: OmegaScalar
    equal: bool

    def as_dict(self) -> dict:
        return {"parameters": {k: str(v) for k, v in self.parameters.items()},
                "lhs": repr(self.lhs), "rhs": repr(self.rhs), "equal": self.equal}


@dataclass
class DescentCase:
    group: FormalGroup
    delta: Character
    measure: Measure
    label: str = ""
    psi: Optional[AdditiveCharacter] = None


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    values: Dict[str, str] = dc_field(default_factory=dict)


def _descent_level(delta: Character) -> int:
    return max(delta.conductor(), 1)


def _scalar(x) -> OmegaScalar:
    return x if isinstance(x, OmegaScalar) else OmegaScalar.const(x)


# ---------------------------------------------------------------------- descent identity
def lhs_trace_theta_iota(mu: Measure, delta: Character, psi: Optional[AdditiveCharacter] = None) -> OmegaScalar:
    """
    (q-1)/q [L_n:L]^-1 Tr o theta o iota_n (A_mu e_delta) as the finite double sum

    delta(pi)^-n sum_{i in (o/pi^n)^x} delta(i) sum_j eta(i j, u_n) mu_j, where eta(x, u_n) is the
    level-n additive character and n = max(a(delta), 1).
    """
    field = delta.field
    n = _descent_level(delta)
    psi = psi or AdditiveCharacter.standard(field, n)
    if psi.level < n:
        raise ConductorExceedsLevel(conductor=n, level=psi.level)
    values = _larger(delta.values_field, psi.values_field)
    total = OmegaScalar(values)
    for i in field.units(n):
        inner = OmegaScalar(values)
        for j, c in mu.points.items():
            inner = inner + c * OmegaScalar.const(values.coerce(psi.at_level(n, i * j)))
        total = total + inner * OmegaScalar.const(values.coerce(delta.rho(i)))
    q = field.q
    degree = q ** (n - 1) * (q - 1)
    factor = values.coerce(delta.pi_value) ** (-n) * Fraction(q - 1, q * degree)
    return total * OmegaScalar.const(factor)


def evaluate_on_units(mu: Measure, delta: Character) -> OmegaScalar:
    """p_{delta^-1}(Res_{o^x} mu) = sum over unit points of delta(j)^-1 mu_j."""
    values = delta.values_field
    total = OmegaScalar(values)
    for j, c in mu.points.items():
        if j.is_unit():
            total = total + c * OmegaScalar.const(delta.on_unit(j).inverse())
    return total


def _interpolation_scalar(delta: Character, psi: Optional[AdditiveCharacter]) -> OmegaScalar:
    field = delta.field
    constant = interp_constant(delta, "C", psi)
    if isinstance(constant, dict):
        key = field.residue_key(field.one(), delta.conductor())
        return constant[key]
    return _scalar(constant)


def rhs_interpolation(mu: Measure, delta: Character, psi: Optional[AdditiveCharacter] = None) -> OmegaScalar:
    """delta(-1) C(delta) p_{delta^-1}(Res_{o^x} mu)."""
    field = delta.field
    if psi is None and delta.conductor():
        psi = AdditiveCharacter.standard(field, delta.conductor())
    sign = _scalar(delta.on_unit(field.coerce(-1)))
    return sign * _interpolation_scalar(delta, psi) * evaluate_on_units(mu, delta)


def psi_eigen_measure(group: FormalGroup, delta: Character, seed: int = 0, low: int = -5,
                      high: int = 6) -> Measure:
    """
    A level-1 measure with Psi(A_mu) = delta(pi) A_mu on the coset data:
    int_{pi o} mu = delta(pi) / (1 - delta(pi)) int_{o^x} mu.
    """
    field = group.field
    if delta.pi_value == 1:
        raise ExceptionalPole(detail="delta(pi) = 1 admits no Psi-eigen measure")
    rng = np.random.default_rng(seed)
    masses = {u: int(rng.integers(low, high)) for u in field.units(1)}
    total = sum(masses.values())
    while total == 0:
        first = next(iter(masses))
        masses[first] += 1
        total += 1
    c = delta.pi_value
    values = delta.values_field
    masses_omega = {u: OmegaScalar.const(values.coerce(m)) for u, m in masses.items()}
    masses_omega[field.pi] = OmegaScalar.const(c / (1 - c) * total)
    return Measure.create_from_points(group, 1, masses_omega)


def random_measure(group: FormalGroup, level: int, seed: int = 0, low: int = -5, high: int = 6) -> Measure:
    field = group.field
    rng = np.random.default_rng(seed)
    masses = {x: int(rng.integers(low, high)) for x in field.residues(level)}
    return Measure.create_from_points(group, level, masses)


def verify_descent(cases: Sequence[DescentCase]) -> List[DescentReport]:
    """Both sides of the descent identity for every case."""
    reports = []
    for case in cases:
        delta = case.delta
        field = delta.field
        if field.p == 2:
            raise LevelUnsupported(level=_descent_level(delta), detail="the descent grid excludes p = 2")
        parameters = {"p": field.p, "field": field.label, "delta": delta.label, "level": _descent_level(delta),
                      "measure": case.label}
        lhs = lhs_trace_theta_iota(case.measure, delta, case.psi)
        rhs = rhs_interpolation(case.measure, delta, case.psi)
        equal = lhs == rhs
        if not equal:
            _logger.warning("descent mismatch for %s: %r != %r", parameters, lhs, rhs)
        reports.append(DescentReport(parameters, lhs, rhs, equal))
    return reports


def descent_grid(group: FormalGroup, level: int = 1, measures: int = 5, seed: int = 0,
                 pi_values: Sequence = (1, 2)) -> List[DescentCase]:
    """
    Ramified characters of exact conductor ``level`` against random level measures, and
    unramified characters against constructed Psi-eigen measures.
    """
    field = group.field
    cases = []
    for c in pi_values:
        for delta in enumerate_characters(field, level, pi_value=c):
            if delta.conductor() != level:
                continue
            for s in range(measures):
                cases.append(DescentCase(group, delta, random_measure(group, level, seed + s),
                                         f"random[{seed + s}]"))
    for c in (field.p, Fraction(1, field.p), 3 * field.p + 2):
        delta = Character.unramified(field, c)
        for s in range(measures):
            cases.append(DescentCase(group, delta, psi_eigen_measure(group, delta, seed + s),
                                     f"eigen[{seed + s}]"))
    return cases


def lhs_via_iota(mu: Measure, delta: Character, group: FormalGroup, order: int = 4) -> OmegaScalar:
    """
    The level-1 cyclotomic bridge: q^-1 delta(pi)^-1 sum_i delta(i) iota_1(A_mu([i](Z)))|_{t=0}.
    """
    if group.variant != "cyclotomic":
        raise ValueError("the iota bridge is built for the cyclotomic datum")
    field = group.field
    tower = group.torsion_tower(1)
    polynomial = amice_eta(mu).to_polynomial()
    values = _larger(delta.values_field, tower.field)
    total = OmegaScalar(values)
    for i in field.units(1):
        k = int(i.to_rational())
        endo = Series(field, {j: math.comb(k, j) for j in range(1, k + 1)})
        image = group.iota_n(polynomial.compose(endo), tower, order)
        value = image.constant_term().lift(values) if image.field is not values else image.constant_term()
        total = total + value * OmegaScalar.const(values.coerce(delta.rho(i)))
    factor = values.coerce(delta.pi_value).inverse() * Fraction(1, field.q)
    return total * OmegaScalar.const(factor)


# ---------------------------------------------------------------------- character sums
def char_sum(delta: Optional[Character], j, n: int, psi: Optional[AdditiveCharacter] = None) -> FieldElem:
    """sum_{i in (o/pi^n)^x} delta(i) eta(i j, u_n)."""
    if n < 1:
        raise ValueError(f"level must be positive, got {n}")
    if psi is None:
        if delta is None:
            raise ValueError("the trivial character sum needs an additive character")
        psi = AdditiveCharacter.standard(delta.field, n)
    field = psi.field
    values = psi.values_field if delta is None else _larger(delta.values_field, psi.values_field)
    j = field.coerce(j)
    total = values.zero()
    for i in field.units(n):
        weight = values.one() if delta is None else values.coerce(delta.rho(i))
        total = total + weight * values.coerce(psi.at_level(n, i * j))
    return total


# ---------------------------------------------------------------------- residues
def exceptional_residue(f: Series, group: FormalGroup, order: int = DEFAULT_ORDER) -> OmegaScalar:
    """Res_Z((phi(f)/q - f) g_LT / t_LT dZ) = (1/q - 1) f(0)."""
    if f.laurent_order():
        raise HigherOrderPole(order=f.laurent_order() + 1)
    field = group.field
    f = f.truncate(order) if f.trunc is None or f.trunc > order else f
    frobenius = group.frobenius.truncate(order)
    h = f.compose(frobenius).scale(Fraction(1, group.q)) - f
    quotient = h * group.g_lt(order) * group.t_lt(order + 1).inverse(trunc=order)
    _logger.debug("exceptional residue over %s", field.label)
    return quotient.residue()


def log_coleman_constant(g: Series, a, group: FormalGroup, order: int = 8) -> FieldElem:
    """
    ((gamma - 1) log g)(0) for chi_LT(gamma) = a: the constant term of log(g([a](T)) / g(T)),
    which is log(a).
    """
    field = group.field
    a = field.coerce(a)
    if (a - 1).valuation_lower() < 1:
        raise OutOfConvergenceDomain(function="log", detail=f"{a!r} is not a principal unit")
    if g.order() != 1 or not g.coefficient(1).constant().is_unit():
        raise ValueError("g needs a unit linear term and no constant term")
    image = g.truncate(order).compose(group.endomorphism(a, order))
    ratio = image / g.truncate(order)
    return padic_log(ratio.constant_term().constant())


def log_coleman_dirac(points: Dict, group: FormalGroup) -> FieldElem:
    """sum_i a_i log chi_LT(gamma_i) for lambda = sum_i a_i [gamma_i]."""
    field = group.field
    total = field.zero()
    for gamma, c in points.items():
        total = total + log_coleman_constant(Series.variable(field), gamma, group) * c
    return total


def coleman_checks(group: FormalGroup) -> List[CheckResult]:
    """g = Z: Res(dg/g dt_LT) = 1 and, for the cyclotomic datum, Psi((1+Z)/Z) = (pi/q)(1+Z)/Z."""
    field = group.field
    g = Series.variable(field)
    dlog = group.invariant_derivative(g) * Series.monomial(field, -1)
    residue = dlog.residue_dt(group)
    results = [CheckResult("coleman_residue", residue == 1, values={"residue": repr(residue)})]
    if group.variant == "cyclotomic":
        element = RankOneModule(group).element(Series(field, {-1: 1, 0: 1}))
        image = psi_capital(element)
        expected = element.scale(group.pi * Fraction(1, group.q))
        results.append(CheckResult("coleman_psi", image == expected, values={"image": repr(image.coefficient)}))
    return results


# ---------------------------------------------------------------------- constants
def scalar_constants_suite(group: FormalGroup, n_max: int = 4) -> List[CheckResult]:
    field = group.field
    q = group.q
    results = []
    for n in range(1, n_max + 1):
        product = cg_constant(group, n) * ctr_constant(group, n)
        results.append(CheckResult(f"cg_ctr[{n}]", product == Fraction(q, q - 1), values={"product": repr(product)}))
        omega = OmegaScalar.omega(field)
        theta = omega * (-Fraction(q - 1, q)) * product
        results.append(CheckResult(f"thetabar[{n}]", theta == -omega, values={"scalar": repr(theta)}))
        for m in range(n, n_max + 1):
            shift = OmegaScalar.const(group.pi ** (m - n))
            results.append(CheckResult(f"cg_shift[{n},{m}]", cg_constant(group, m) == shift * cg_constant(group, n)))
            results.append(CheckResult(f"ctr_shift[{n},{m}]", ctr_constant(group, n) == shift * ctr_constant(group, m)))
    return results


def twist_consistency(delta: Character) -> bool:
    """C'(x delta) = Omega C(delta) for unramified weight-0 delta."""
    if delta.weight or delta.conductor():
        raise ValueError("twist consistency is stated for unramified weight-0 characters")
    field = delta.field
    twisted = interp_constant(Character.power(field, 1) * delta, "Cprime")
    base = interp_constant(delta, "C")
    return twisted == OmegaScalar.omega(field) * base

