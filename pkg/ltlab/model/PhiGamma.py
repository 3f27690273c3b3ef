# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 15/05/2023
 * Time: 16:30
 *
 * Edited by: eniocc
 * Date: 01/06/2023
 * Time: 20:12
"""
import logging
from fractions import Fraction
from typing import List, Optional, Union

from ltlab.core.Errors import (FrobeniusUnsupported, InexactSeries, LevelUnsupported, NotInEtaSpan,
                               PrecisionExhausted)
from ltlab.model.Chareps import Character, check_complementary
from ltlab.model.LubinTate import EtaSum, FormalGroup, TorsionTower
from ltlab.model.Padic import FieldElem, OmegaScalar
from ltlab.model.Series import DEFAULT_ORDER, Series

_logger = logging.getLogger(__name__)

Coefficient = Union[Series, EtaSum]


class RankOneModule:
    """R(delta) = R e_delta with phi(e_delta) = delta(pi) e_delta and gamma(e_delta) = delta(chi_LT(gamma)) e_delta."""

    def __init__(self, group: FormalGroup, delta: Optional[Character] = None):
        self._group = group
        self._delta = delta or Character.trivial(group.field)

    @property
    def group(self) -> FormalGroup:
        return self._group

    @property
    def delta(self) -> Character:
        return self._delta

    def element(self, coefficient: Coefficient) -> "ModuleElem":
        return ModuleElem(self, coefficient)

    def basis(self) -> "ModuleElem":
        return ModuleElem(self, Series.const(1, self._group.field))

    def twist(self, other: Character) -> "RankOneModule":
        return RankOneModule(self._group, self._delta * other)

    def __eq__(self, other):
        if not isinstance(other, RankOneModule):
            return NotImplemented
        return self._group is other._group and self._delta == other._delta

    __hash__ = None

    def __repr__(self):
        return f"R({self._delta.label})"


class ModuleElem:
    """f e_delta with f a Series or an eta-sum."""

    def __init__(self, module: RankOneModule, coefficient: Coefficient):
        self._module = module
        self._coefficient = coefficient

    @property
    def module(self) -> RankOneModule:
        return self._module

    @property
    def coefficient(self) -> Coefficient:
        return self._coefficient

    @property
    def is_eta(self) -> bool:
        return isinstance(self._coefficient, EtaSum)

    def series(self, order: int = DEFAULT_ORDER) -> Series:
        if self.is_eta:
            return self._coefficient.to_series(order)
        return self._coefficient

    def scale(self, c) -> "ModuleElem":
        return ModuleElem(self._module, self._coefficient.scale(c))

    def __add__(self, other: "ModuleElem") -> "ModuleElem":
        return ModuleElem(self._module, self._coefficient + other._coefficient)

    def __sub__(self, other: "ModuleElem") -> "ModuleElem":
        return ModuleElem(self._module, self._coefficient - other._coefficient)

    def __eq__(self, other):
        if not isinstance(other, ModuleElem):
            return NotImplemented
        if not self._module == other._module:
            return False
        if self.is_eta != other.is_eta:
            return self.series() == other.series()
        return self._coefficient == other._coefficient

    __hash__ = None

    def __repr__(self):
        return f"({self._coefficient!r}) e[{self._module.delta.label}]"


# ---------------------------------------------------------------------- phi and Gamma
def phi(m: ModuleElem) -> ModuleElem:
    """delta(pi) f([pi](Z)) e_delta."""
    group, delta = m.module.group, m.module.delta
    if m.is_eta:
        image = m.coefficient.phi()
    else:
        f = m.coefficient
        if f.laurent_order() and not group.is_polynomial:
            raise FrobeniusUnsupported(operation="phi", detail="Laurent input needs a polynomial Frobenius")
        image = f.compose(group.frobenius.lift(f.field))
    return ModuleElem(m.module, image.scale(delta.pi_value))


def gamma_act(a, m: ModuleElem) -> ModuleElem:
    """delta(a) f([a](Z)) e_delta for a unit a = chi_LT(gamma)."""
    group, delta = m.module.group, m.module.delta
    a = group.field.coerce(a)
    if not a.is_unit():
        raise ValueError(f"gamma acts through units, got {a!r}")
    if m.is_eta:
        image = m.coefficient.gamma(a)
    else:
        f = m.coefficient
        order = f.trunc or DEFAULT_ORDER
        image = f.compose(group.endomorphism(a, order).lift(f.field))
    return ModuleElem(m.module, image.scale(delta.on_unit(a)))


# ---------------------------------------------------------------------- psi
def psi_power_sums(group: FormalGroup, tower: Optional[TorsionTower] = None) -> List[FieldElem]:
    """
    Power sums p_i = sum_{a in LT[pi]} (Z +_LT a)^i for i < q.

    They do not depend on Z: the Newton identities of [pi](W) - [pi](Z) only involve
    the coefficients of W^1 .. W^(q-1). When a level-1 tower is available the sums are
    recomputed as traces of powers of u_1 and must descend to the same values.
    """
    if not group.is_polynomial or group.frobenius.degree() != group.q:
        raise FrobeniusUnsupported(operation="psi", detail="trace form needs a monic Frobenius polynomial of degree q")
    q, field = group.q, group.field
    frobenius = group.frobenius
    elementary = [None] + [frobenius.coefficient(q - k).constant() * (-1) ** k for k in range(1, q)]
    sums = [field.coerce(q)]
    for i in range(1, q):
        total = elementary[i] * ((-1) ** (i - 1) * i)
        for k in range(1, i):
            total = total + elementary[k] * sums[i - k] * (-1) ** (k - 1)
        sums.append(total)
    if tower is None and group.variant in ("special", "cyclotomic"):
        tower = group.torsion_tower(1)
    if tower is not None:
        if tower.level != 1:
            tower = group.torsion_tower(1)
        _check_descent(sums, tower, field)
    return sums


def _check_descent(sums: List[FieldElem], tower: TorsionTower, field) -> None:
    top = tower.fields[0]
    u = top.coerce(tower.points[0]) if tower.points[0].field is not top else tower.points[0]
    for i in range(1, len(sums)):
        trace = top.trace(u ** i, down_to=field)
        if not trace == sums[i]:
            raise PrecisionExhausted(detail=f"power sum {i} does not descend: {trace!r} != {sums[i]!r}")


def _psi_series(group: FormalGroup, f: Series, tower: Optional[TorsionTower] = None) -> Series:
    if f.trunc is not None:
        raise InexactSeries(operation="psi", detail="the trace form needs a Laurent polynomial")
    field = f.field
    if not f.coeffs:
        return f
    sums = psi_power_sums(group, tower)
    pi = group.pi
    psi_monomials = [OmegaScalar.const(field.coerce(s / pi), field) for s in sums]
    m = f.laurent_order()
    h = f.shift(m)
    if m:
        h = h * group.qn_polynomial(1).lift(field) ** m
    digits = h.base_expansion(group.frobenius.lift(field))
    coeffs = {}
    for j, r in enumerate(digits):
        value = OmegaScalar(field)
        for i, c in r.coeffs.items():
            value = value + c * psi_monomials[i]
        coeffs[j] = value
    return Series(field, coeffs, None, f.prec, f.var).shift(-m)


def psi(m: ModuleElem, tower: Optional[TorsionTower] = None) -> ModuleElem:
    """psi with phi o psi = pi^-1 Tr, including delta(pi)^-1 on the basis."""
    if tower is not None and tower.level < 1:
        raise LevelUnsupported(level=tower.level, detail="the trace form needs the level-1 torsion")
    delta = m.module.delta
    if m.is_eta:
        image = m.coefficient.psi()
    else:
        image = _psi_series(m.module.group, m.coefficient, tower)
    return ModuleElem(m.module, image.scale(delta.pi_value.inverse()))


def psi_eta_span(m: ModuleElem) -> ModuleElem:
    """psi on eta-sums: Psi(eta(j)) = eta(j / pi) when pi | j, else 0; psi = (q / pi) Psi."""
    if not m.is_eta:
        raise NotInEtaSpan(detail=f"{m!r} is not an eta-sum")
    return psi(m)


def psi_capital(m: ModuleElem, tower: Optional[TorsionTower] = None) -> ModuleElem:
    """Psi = (pi / q) psi, the left inverse of phi."""
    group = m.module.group
    return psi(m, tower).scale(group.pi * Fraction(1, group.q))


def phi_inverse(m: ModuleElem, tower: Optional[TorsionTower] = None) -> ModuleElem:
    """The preimage under phi of an element in its image."""
    candidate = psi_capital(m, tower)
    if not phi(candidate) == m:
        raise NotInEtaSpan(detail="element is not in the image of phi")
    return candidate


# ---------------------------------------------------------------------- residues and transforms
def residue_pairing(m: ModuleElem, other: ModuleElem) -> OmegaScalar:
    """
    Res(f g dt_LT) for f e_delta in R(delta) and g e in R(chi delta^-1).

    Note: the variant Omega Res(sigma_-1(g) f) used elsewhere in the literature differs from this
    one by Omega and the sign twist sigma_-1; only this normalization is implemented.
    """
    check_complementary(m.module.delta, other.module.delta)
    group = m.module.group
    f, g = m.series(), other.series()
    return (f * g).residue_dt(group)


def residue_map(m: ModuleElem) -> OmegaScalar:
    """Res: R(x delta) -> K(delta |x|^-1), f e -> Res(f dt_LT)."""
    return m.series().residue_dt(m.module.group)


def colmez_transform(m: ModuleElem, z) -> OmegaScalar:
    """phi_f(z) = Res(eta(-z, Z) f dt_LT)."""
    group = m.module.group
    z = group.field.coerce(z)
    f = m.series()
    order = max(DEFAULT_ORDER, f.laurent_order() + 2)
    eta = group.eta(-z, order).series.lift(f.field) if f.field is not group.field else group.eta(-z, order).series
    return (eta * f).residue_dt(group)


def colmez_psi_factor(module: RankOneModule) -> FieldElem:
    """The scalar in colmez(Psi(m), z) = (pi / q) delta(pi)^-1 colmez(m, pi z)."""
    group = module.group
    return module.delta.pi_value.inverse() * (group.pi * Fraction(1, group.q))


def twist_partial(m: ModuleElem) -> ModuleElem:
    """partial: R(delta) -> R(x delta)."""
    group = m.module.group
    target = m.module.twist(Character.power(group.field, 1))
    if m.is_eta:
        return ModuleElem(target, m.coefficient.derivative())
    return ModuleElem(target, group.invariant_derivative(m.coefficient))


def slope(module: RankOneModule) -> Fraction:
    """deg R(delta) = v_pi(delta(pi)), in units of the base field."""
    value = module.delta.pi_value
    ratio = value.field.e // module.group.field.e
    return Fraction(value.valuation(), ratio)


def is_etale(module: RankOneModule) -> bool:
    return slope(module) == 0
