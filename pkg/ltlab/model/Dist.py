# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 18/05/2023
 * Time: 10:05
 *
 * Edited by: eniocc
 * Date: 03/06/2023
 * Time: 17:40
"""
import logging
import math
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ltlab.core.Errors import ConductorExceedsLevel, NonUnitSupport, TruncationTooShort
from ltlab.model.Chareps import Character
from ltlab.model.LubinTate import EtaSum, FormalGroup
from ltlab.model.Padic import FieldElem, OmegaScalar, cyclotomic_closure, unit_log
from ltlab.model.PhiGamma import ModuleElem, RankOneModule
from ltlab.model.Series import DEFAULT_ORDER, Series

_logger = logging.getLogger(__name__)

DEFAULT_HORIZON = 8


def _omega(c, field) -> OmegaScalar:
    if isinstance(c, OmegaScalar):
        return c
    if isinstance(c, FieldElem) and c.field is not field:
        return OmegaScalar.const(c)
    return OmegaScalar.const(field.coerce(c), field)


class Measure:
    """
    A distribution on o_L in one of two finite representations.

    ``cosets``: a finite combination sum_j c_j [j] of Dirac distributions at exact points,
    read at level n through the masses of the cosets j + pi^n o_L.
    ``moments``: the truncated sequence mu(x^k), k <= K.
    """

    def __init__(self, group: FormalGroup, variant: str, level: int = 0,
                 points: Optional[Mapping] = None, moments: Optional[Sequence] = None):
        if variant not in ("cosets", "moments"):
            raise ValueError(f"unknown measure variant {variant!r}")
        self._group = group
        self._variant = variant
        self._level = level
        field = group.field
        self._points: Dict[FieldElem, OmegaScalar] = {}
        for j, c in (points or {}).items():
            j = field.coerce(j)
            c = _omega(c, field)
            self._points[j] = self._points[j] + c if j in self._points else c
        self._moments: List[OmegaScalar] = [_omega(c, field) for c in (moments or [])]

    # ------------------------------------------------------------------ constructors
    @classmethod
    def dirac(cls, group: FormalGroup, a, level: int = 1, mass=1) -> "Measure":
        return cls(group, "cosets", level, {group.field.coerce(a): mass})

    @classmethod
    def create_from_points(cls, group: FormalGroup, level: int, masses: Mapping) -> "Measure":
        return cls(group, "cosets", level, masses)

    @classmethod
    def create_from_moments(cls, group: FormalGroup, moments: Sequence) -> "Measure":
        return cls(group, "moments", moments=moments)

    @classmethod
    def create_from_amice(cls, group: FormalGroup, series: Series, horizon: int) -> "Measure":
        return cls(group, "moments", moments=_series_moments(group, series, horizon))

    # ------------------------------------------------------------------ properties
    @property
    def group(self) -> FormalGroup:
        return self._group

    @property
    def variant(self) -> str:
        return self._variant

    @property
    def level(self) -> int:
        return self._level

    @property
    def horizon(self) -> int:
        if self._variant == "moments":
            return len(self._moments) - 1
        return math.inf

    @property
    def points(self) -> Dict[FieldElem, OmegaScalar]:
        return {j: c for j, c in self._points.items() if not c.is_zero()}

    def _require(self, variant: str, operation: str):
        if self._variant != variant:
            raise ValueError(f"{operation} needs a {variant} measure, got {self._variant}")

    def coset_masses(self, level: Optional[int] = None) -> Dict[object, Tuple[FieldElem, OmegaScalar]]:
        """residue key -> (a point of the coset, total mass)."""
        self._require("cosets", "coset_masses")
        level = self._level if level is None else level
        field = self._group.field
        masses: Dict[object, Tuple[FieldElem, OmegaScalar]] = {}
        for j, c in self._points.items():
            key = field.residue_key(j, level)
            if key in masses:
                masses[key] = (masses[key][0], masses[key][1] + c)
            else:
                masses[key] = (j, c)
        return masses

    def is_unit_supported(self) -> bool:
        return all(j.is_unit() for j in self.points)

    def moment(self, k: int) -> OmegaScalar:
        return moments(self, k)[k]

    # ------------------------------------------------------------------ algebra
    def __add__(self, other: "Measure") -> "Measure":
        if self._variant != other._variant:
            raise ValueError("cannot add measures of different variants")
        if self._variant == "cosets":
            points = dict(self._points)
            for j, c in other._points.items():
                points[j] = points[j] + c if j in points else c
            return Measure(self._group, "cosets", min(self._level, other._level), points)
        k = min(len(self._moments), len(other._moments))
        return Measure(self._group, "moments", moments=[a + b for a, b in zip(self._moments[:k], other._moments[:k])])

    def scale(self, c) -> "Measure":
        field = self._group.field
        c = _omega(c, field)
        if self._variant == "cosets":
            return Measure(self._group, "cosets", self._level, {j: x * c for j, x in self._points.items()})
        return Measure(self._group, "moments", moments=[x * c for x in self._moments])

    def __sub__(self, other: "Measure") -> "Measure":
        return self + other.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        if self._variant != other._variant:
            return False
        if self._variant == "moments":
            k = min(len(self._moments), len(other._moments))
            return all(a == b for a, b in zip(self._moments[:k], other._moments[:k]))
        return all(c.is_zero() for c in (self - other)._points.values())

    __hash__ = None

    def __repr__(self):
        if self._variant == "moments":
            return f"Measure(moments={self._moments!r})"
        body = " + ".join(f"({c!r})[{j!r}]" for j, c in self.points.items()) or "0"
        return f"Measure(level={self._level}, {body})"


# ---------------------------------------------------------------------- transforms
def amice_eta(mu: Measure) -> EtaSum:
    """A_mu = sum_j mu_j eta(j, Z) as an exact eta-sum."""
    mu._require("cosets", "amice_eta")
    return EtaSum(mu.group, mu.points)


def amice_series(mu: Measure, order: Optional[int] = None) -> Series:
    """
    Amice transform A_mu(Z) = int eta(x, Z) dmu(x).

    For moment measures the series is determined by A_mu(exp_LT(t)) = sum_k mu(x^k) (Omega t)^k / k!
    and is known modulo Z^(K+1).
    """
    group = mu.group
    if mu.variant == "cosets":
        return amice_eta(mu).to_series(order or DEFAULT_ORDER)
    available = mu.horizon + 1
    order = available if order is None else order
    if order > available:
        raise TruncationTooShort(available=available, requested=order)
    field = group.field
    log = group.log_lt(order)
    total = Series(field, {}, order)
    power = Series.const(1, field).truncate(order)
    for k in range(order):
        if k:
            power = power * log
        coefficient = mu._moments[k] * OmegaScalar(field, {k: field.coerce(Fraction(1, math.factorial(k)))})
        total = total + power.scale(coefficient)
    return total


def _series_moments(group: FormalGroup, series: Series, horizon: int) -> List[OmegaScalar]:
    """mu(x^k) = k! Omega^-k [t^k] (A o exp_LT)."""
    if series.trunc is not None and series.trunc <= horizon:
        raise TruncationTooShort(available=series.trunc - 1, requested=horizon)
    field = series.field
    order = horizon + 1
    composed = series.truncate(order).compose(group.exp_lt(order).lift(field))
    return [composed.coefficient(k) * OmegaScalar(field, {-k: field.coerce(math.factorial(k))})
            for k in range(order)]


def moments(mu: Measure, horizon: int = DEFAULT_HORIZON) -> List[OmegaScalar]:
    """(mu(x^k))_{k <= horizon}."""
    if mu.variant == "moments":
        if horizon > mu.horizon:
            raise TruncationTooShort(available=mu.horizon, requested=horizon)
        return list(mu._moments[:horizon + 1])
    field = mu.group.field
    result = []
    for k in range(horizon + 1):
        total = OmegaScalar(field)
        for j, c in mu.points.items():
            total = total + c * OmegaScalar.const(j ** k)
        result.append(total)
    return result


def moments_from_points(mu: Measure, horizon: int = DEFAULT_HORIZON) -> Measure:
    """Conversion of a coset measure to its moment sequence up to ``horizon``."""
    mu._require("cosets", "moments_from_points")
    return Measure.create_from_moments(mu.group, moments(mu, horizon))


def from_moments(group: FormalGroup, values: Sequence) -> Measure:
    return Measure.create_from_moments(group, values)


def restrict_units(mu: Measure) -> Measure:
    """Res_{o_L^x}: drop every point outside the units."""
    mu._require("cosets", "restrict_units")
    return Measure(mu.group, "cosets", mu.level, {j: c for j, c in mu.points.items() if j.is_unit()})


def units_projector(a: EtaSum) -> EtaSum:
    """(1 - phi o Psi) on the eta-span."""
    return a - a.psi_capital().phi()


def coarsen(mu: Measure, level: int) -> Measure:
    """The same measure read at a coarser level."""
    mu._require("cosets", "coarsen")
    if level > mu.level:
        raise ConductorExceedsLevel(conductor=level, level=mu.level)
    return Measure(mu.group, "cosets", level, mu.points)


def convolve(lam: Measure, mu: Measure) -> Measure:
    """(lam * mu)(f) = int int f(x + y) dlam(x) dmu(y)."""
    group = lam.group
    if lam.variant == "cosets" and mu.variant == "cosets":
        points: Dict[FieldElem, OmegaScalar] = {}
        for i, a in lam.points.items():
            for j, b in mu.points.items():
                k = i + j
                points[k] = points[k] + a * b if k in points else a * b
        return Measure(group, "cosets", min(lam.level, mu.level), points)
    horizon = min(lam.horizon, mu.horizon)
    left, right = moments(lam, horizon), moments(mu, horizon)
    field = group.field
    values = []
    for k in range(horizon + 1):
        total = OmegaScalar(field)
        for i in range(k + 1):
            total = total + left[i] * right[k - i] * math.comb(k, i)
        values.append(total)
    return Measure.create_from_moments(group, values)


def multiply_x(mu: Measure) -> Measure:
    """x mu: (x mu)(x^k) = mu(x^(k+1))."""
    if mu.variant == "cosets":
        return Measure(mu.group, "cosets", mu.level, {j: c * OmegaScalar.const(j) for j, c in mu.points.items()})
    return Measure.create_from_moments(mu.group, mu._moments[1:])


def differentiate(mu: Measure) -> Measure:
    """d mu with (d mu)(x^k) = k mu(x^(k-1)); its Amice series is Omega t_LT A_mu."""
    mu._require("moments", "differentiate")
    field = mu.group.field
    values = [OmegaScalar(field)] + [c * k for k, c in enumerate(mu._moments, start=1)]
    return Measure.create_from_moments(mu.group, values)


# ---------------------------------------------------------------------- characters
def mellin(mu: Measure, delta: Character, sigma_minus_one: bool = False) -> ModuleElem:
    """
    Mellin transform of a unit-supported measure into R(delta).

    Each Dirac [j] goes to the action of j on eta(1, Z) e_delta, that is
    delta(j) eta(j, Z) e_delta. With ``sigma_minus_one`` the points are first sent to -j.
    """
    mu._require("cosets", "mellin")
    group = mu.group
    terms: Dict[FieldElem, OmegaScalar] = {}
    for j, c in mu.points.items():
        if not j.is_unit():
            raise NonUnitSupport(point=repr(j))
        point = -j if sigma_minus_one else j
        value = c * OmegaScalar.const(delta.on_unit(point))
        terms[point] = terms[point] + value if point in terms else value
    return ModuleElem(RankOneModule(group, delta), EtaSum(group, terms))


def twist(mu: Measure, rho: Character) -> Measure:
    """Tw_rho([g]) = rho(g)[g] with rho read on o_L^x and extended by zero off the units."""
    mu._require("cosets", "twist")
    if rho.is_de_rham and rho.conductor() > mu.level:
        raise ConductorExceedsLevel(conductor=rho.conductor(), level=mu.level)
    if rho == Character.trivial(mu.group.field):
        return mu
    points = {j: c * OmegaScalar.const(rho(j, extend_by_zero=True))
              for j, c in mu.points.items()}
    return Measure(mu.group, "cosets", mu.level, points)


def derivative_at(lam: Measure, tag: str = "one", lt_variant: bool = False, n: int = 1) -> OmegaScalar:
    """
    L'_lam(f) = lam(log(chi_LT) f) for f in {1, log chi_LT}.

    The Lubin-Tate variant multiplies by Omega / pi^n.
    """
    lam._require("cosets", "derivative_at")
    if tag not in ("one", "log"):
        raise ValueError(f"unknown function tag {tag!r}")
    group = lam.group
    field = group.field
    total = OmegaScalar(field)
    for gamma, c in lam.points.items():
        if not gamma.is_unit():
            raise NonUnitSupport(point=repr(gamma))
        log = unit_log(gamma)
        value = log if tag == "one" else log * log
        total = total + c * OmegaScalar.const(value)
    if lt_variant:
        total = total * OmegaScalar(field, {1: group.pi ** (-n)})
    return total


# ---------------------------------------------------------------------- constants
def cg_constant(group: FormalGroup, n: int = 1) -> OmegaScalar:
    """C_g(z_n) = pi^n mu(x) for the measure with Amice series Z, which equals pi^n / Omega."""
    field = group.field
    first = _series_moments(group, Series.variable(field), 1)[1]
    return first * OmegaScalar.const(group.pi ** n)


def ctr_constant(group: FormalGroup, n: int = 1) -> OmegaScalar:
    """C_Tr(z_n) = q / (q - 1) Omega / pi^n."""
    q = group.q
    field = group.field
    return OmegaScalar(field, {1: group.pi ** (-n) * Fraction(q, q - 1)})


def coset_restriction_via_translates(mu: Measure, b: int, n: int) -> Series:
    """
    q^-n sum over zeta in mu_{p^n} of zeta^-b A_mu(zeta (1 + Z) - 1), the Amice series of the
    restriction of mu to b + p^n Z_p (cyclotomic datum, non-negative integer points).
    """
    group = mu.group
    field = group.field
    closure, zeta = cyclotomic_closure(field, n)
    polynomial = amice_eta(mu).to_polynomial().lift(closure)
    total = Series(closure, {})
    p = field.p
    for k in range(p ** n):
        root = zeta ** k
        translate = group.translate(root - 1)
        total = total + polynomial.compose(translate).scale(root ** (-b))
    return total.scale(closure.coerce(Fraction(1, p ** n)))


def restrict_coset(mu: Measure, b, n: int) -> Measure:
    """Res_{b + pi^n o_L}(mu)."""
    mu._require("cosets", "restrict_coset")
    field = mu.group.field
    key = field.residue_key(field.coerce(b), n)
    return Measure(mu.group, "cosets", max(mu.level, n),
                   {j: c for j, c in mu.points.items() if field.residue_key(j, n) == key})
