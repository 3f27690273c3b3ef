# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 08/05/2023
 * Time: 14:02
 *
 * Edited by: eniocc
 * Date: 27/05/2023
 * Time: 18:45
"""
import logging
import math
import threading
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from ltlab.core.Errors import (FrobeniusUnsupported, IntegralityViolation, LevelUnsupported, NotEisenstein)
from ltlab.model.Padic import (FieldElem, LocalField, OmegaScalar, adjoin, cyclotomic_closure, default_digits,
                               teichmuller)
from ltlab.model.Series import DEFAULT_ORDER, MultiSeries, Series

_logger = logging.getLogger(__name__)

DEFAULT_T_ORDER = 12
DEFAULT_GROUP_LAW_DEGREE = 8
MAX_TOWER_LEVEL = 2


class FormalGroup:
    """
    Lubin-Tate formal group over o_L given by a Frobenius series [pi](Z).

    Args:
        field: the base field L.
        frobenius: [pi](Z), an exact polynomial or a truncated power series.
        variant: "special" (pi Z + Z^q), "cyclotomic" ((1+Z)^p - 1 over Q_p) or "custom".

    The group law, log/exp and endomorphisms are computed lazily and cached per
    truncation order.
    """

    def __init__(self, field: LocalField, frobenius: Series, variant: str = "custom"):
        self._field = field
        self._frobenius = frobenius.lift(field) if frobenius.field is not field else frobenius
        self._variant = variant
        self._pi = self._process_frobenius(field, self._frobenius)
        self._cache: Dict[tuple, object] = {}
        self._lock = threading.RLock()

    @staticmethod
    def _process_frobenius(field: LocalField, frobenius: Series) -> FieldElem:
        q = field.q
        if frobenius.trunc is not None and frobenius.trunc <= q:
            raise NotEisenstein(stage="frobenius", detail=f"series known only below degree {frobenius.trunc}")
        if not frobenius.coefficient(0).is_zero():
            raise NotEisenstein(stage="frobenius", detail="nonzero constant term")
        pi = frobenius.coefficient(1).constant()
        if pi.valuation_lower() != 1 or pi.is_zero():
            raise NotEisenstein(stage="frobenius", detail="linear coefficient is not a uniformizer")
        for k, c in frobenius.coeffs.items():
            c = c.constant()
            if k == q:
                if (c - 1).valuation_lower() < 1:
                    raise NotEisenstein(stage="frobenius", detail="Z^q coefficient is not congruent to 1")
            elif k > 1 and c.valuation_lower() < 1:
                raise NotEisenstein(stage="frobenius", detail=f"Z^{k} coefficient is not divisible by pi")
        return pi

    # ------------------------------------------------------------------ constructors
    @classmethod
    def special(cls, field: LocalField) -> "FormalGroup":
        """[pi](Z) = pi Z + Z^q."""
        frobenius = Series(field, {1: field.pi, field.q: 1})
        return cls(field, frobenius, "special")

    @classmethod
    def cyclotomic(cls, field: LocalField) -> "FormalGroup":
        """The multiplicative group over Q_p: [p](Z) = (1+Z)^p - 1."""
        if field.base is not None:
            raise FrobeniusUnsupported(operation="cyclotomic", detail=f"only defined over Q_p, not {field.label}")
        p = field.p
        frobenius = Series(field, {k: math.comb(p, k) for k in range(1, p + 1)})
        return cls(field, frobenius, "cyclotomic")

    @classmethod
    def custom(cls, field: LocalField, coeffs: Sequence) -> "FormalGroup":
        """A polynomial Frobenius from its coefficients, lowest degree first."""
        return cls(field, Series.from_list(field, coeffs), "custom")

    @classmethod
    def create(cls, field: LocalField, variant: str = "special", coeffs: Optional[Sequence] = None) -> "FormalGroup":
        if variant == "special":
            return cls.special(field)
        if variant == "cyclotomic":
            return cls.cyclotomic(field)
        if coeffs is None:
            raise FrobeniusUnsupported(operation="create", detail="a custom datum needs Frobenius coefficients")
        return cls.custom(field, coeffs)

    # ------------------------------------------------------------------ properties
    @property
    def field(self) -> LocalField:
        return self._field

    @property
    def frobenius(self) -> Series:
        return self._frobenius

    @property
    def pi(self) -> FieldElem:
        return self._pi

    @property
    def q(self) -> int:
        return self._field.q

    @property
    def variant(self) -> str:
        return self._variant

    @property
    def is_polynomial(self) -> bool:
        return self._frobenius.trunc is None

    @property
    def omega_value(self) -> Optional[FieldElem]:
        """Omega is 1 for the cyclotomic datum and stays formal otherwise."""
        return self._field.one() if self._variant == "cyclotomic" else None

    def __repr__(self):
        return f"FormalGroup({self._variant}, {self._field.label}, [pi](Z) = {self._frobenius!r})"

    def _cached(self, key: tuple, compute):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    def _require_polynomial(self, operation: str):
        if not self.is_polynomial:
            raise FrobeniusUnsupported(operation=operation, detail="the Frobenius series is not a polynomial")

    # ------------------------------------------------------------------ group law
    def group_law(self, degree: int = DEFAULT_GROUP_LAW_DEGREE) -> MultiSeries:
        """F(X, Y) to total degree < ``degree``, solved degree by degree from F(P(X), P(Y)) = P(F(X, Y))."""
        return self._cached(("group_law", degree), lambda: self._solve_group_law(degree))

    def _solve_group_law(self, degree: int) -> MultiSeries:
        field = self._field
        x, y = MultiSeries.variables(field, 2, degree)
        law = x + y
        px = MultiSeries.from_series(self._frobenius, 0, 2, degree)
        py = MultiSeries.from_series(self._frobenius, 1, 2, degree)
        for d in range(2, degree):
            current = law.truncate(d + 1)
            lhs = current.substitute([px.truncate(d + 1), py.truncate(d + 1)])
            rhs = current.compose_into(self._frobenius.truncate(d + 1))
            denominator = self._pi - self._pi ** d
            part = (lhs - rhs).homogeneous_part(d).scale(denominator.inverse())
            law = law + part
        _logger.debug("Group law of %s solved to degree %d", self._field.label, degree)
        return law

    def add_series(self, f: Series, g: Series, degree: int = DEFAULT_GROUP_LAW_DEGREE) -> Series:
        """f +_LT g for power series without constant term."""
        law = self.group_law(degree)
        result = Series(f.field, {}, degree, None, f.var)
        f_powers, g_powers = [Series.const(1, f.field, f.var)], [Series.const(1, g.field, g.var)]
        for (i, j), c in law.coeffs.items():
            while len(f_powers) <= i:
                f_powers.append(f_powers[-1] * f)
            while len(g_powers) <= j:
                g_powers.append(g_powers[-1] * g)
            result = result + (f_powers[i] * g_powers[j]).scale(c)
        return result

    # ------------------------------------------------------------------ logarithm and exponential
    def log_lt(self, order: int = DEFAULT_ORDER) -> Series:
        """log_LT(Z) = Z + ..., the unique series with log_LT(P(Z)) = pi log_LT(Z)."""
        return self._cached(("log", order), lambda: self._solve_log(order))

    def _solve_log(self, order: int) -> Series:
        field = self._field
        frobenius = self._frobenius.truncate(order)
        coeffs: Dict[int, FieldElem] = {1: field.one()}
        powers = [None, frobenius]
        for n in range(2, order):
            powers.append(powers[-1] * frobenius)
            acc = field.zero()
            for m, c in coeffs.items():
                acc = acc + c * powers[m].coefficient(n).constant()
            coeffs[n] = acc / (self._pi - self._pi ** n)
        return Series(field, coeffs, order)

    def exp_lt(self, order: int = DEFAULT_ORDER) -> Series:
        return self._cached(("exp", order), lambda: self.log_lt(order).reversion())

    def t_lt(self, order: int = DEFAULT_ORDER) -> Series:
        return self.log_lt(order)

    def g_lt(self, order: int = DEFAULT_ORDER) -> Series:
        """g_LT = log_LT', so that dt_LT = g_LT dZ."""
        if self._variant == "cyclotomic":
            return self._cached(("g", order), lambda: Series(self._field, {0: 1, 1: 1}).inverse(trunc=order))
        return self._cached(("g", order), lambda: self.log_lt(order + 1).derivative())

    def g_lt_inverse(self, order: int = DEFAULT_ORDER) -> Series:
        if self._variant == "cyclotomic":
            return Series(self._field, {0: 1, 1: 1})
        return self._cached(("g_inv", order), lambda: self.g_lt(order).inverse())

    def invariant_derivative(self, f: Series, order: int = DEFAULT_ORDER) -> Series:
        """df/dt_LT = g_LT^-1 df/dZ."""
        return f.derivative() * self.g_lt_inverse(order).lift(f.field)

    # ------------------------------------------------------------------ endomorphisms
    def endomorphism(self, a, order: int = DEFAULT_ORDER) -> Series:
        """[a](Z) = exp_LT(a log_LT(Z)), checked to be integral."""
        a = self._field.coerce(a)
        if a.valuation_lower() < 0:
            raise IntegralityViolation(index=0, valuation=a.valuation_lower(), operation="endomorphism argument")
        return self._cached(("endo", a.raw, a.prec, order), lambda: self._compute_endomorphism(a, order))

    def _compute_endomorphism(self, a: FieldElem, order: int) -> Series:
        if a.is_zero():
            return Series(self._field, {}, order)
        series = self.exp_lt(order).compose(self.log_lt(order).scale(a))
        for k, c in series.coeffs.items():
            v = c.valuation_lower()
            if v < 0:
                raise IntegralityViolation(index=k, valuation=v, operation=f"[{a!r}](Z)")
        return series

    def iterate(self, n: int) -> Series:
        """[pi^n](Z) as an exact polynomial."""
        self._require_polynomial("iterate")
        return self._cached(("iterate", n), lambda: self._compute_iterate(n))

    def _compute_iterate(self, n: int) -> Series:
        result = Series.variable(self._field)
        for _ in range(n):
            result = self._frobenius.compose(result)
        return result

    def qn_polynomial(self, n: int) -> Series:
        """Q_n = [pi^n](Z) / [pi^(n-1)](Z)."""
        if n < 1:
            raise ValueError(f"Q_n is defined for n >= 1, got {n}")
        quotient, remainder = self.iterate(n).divmod_monic(self.iterate(n - 1))
        if not remainder == 0:
            raise FrobeniusUnsupported(operation="qn_polynomial", detail="division left a remainder")
        return quotient

    # ------------------------------------------------------------------ torsion
    def torsion_tower(self, n: int, max_level: int = MAX_TOWER_LEVEL) -> "TorsionTower":
        if n < 1 or n > max_level:
            raise LevelUnsupported(level=n, detail=f"torsion towers are built up to level {max_level}")
        if self._variant not in ("special", "cyclotomic"):
            raise FrobeniusUnsupported(operation="torsion_tower", detail="only the special and cyclotomic data")
        return self._cached(("tower", n, default_digits()), lambda: self._build_tower(n))

    def _build_tower(self, n: int) -> "TorsionTower":
        if self._variant == "cyclotomic":
            p = self._field.p
            fields, points = [], []
            top, zeta = cyclotomic_closure(self._field, n)
            for k in range(1, n + 1):
                fields.append(cyclotomic_closure(self._field, k)[0])
                points.append(zeta ** (p ** (n - k)) - 1)
            zeta_1 = points[0] + 1
            orbit = [zeta_1 ** a - 1 for a in range(1, p)]
            return TorsionTower(self, n, fields, points, orbit)
        fields, points = [], []
        q1 = self.qn_polynomial(1)
        if q1.degree() == 1:
            l1, u1 = self._field, -q1.coefficient(0).constant()
        else:
            l1 = adjoin(self._field, [c.constant() for c in _dense(q1)], label=f"{self._field.label}(u_1)")
            u1 = l1.generator
        fields.append(l1)
        points.append(u1)
        for k in range(2, n + 1):
            base, u_prev = fields[-1], points[-1]
            poly = [base.coerce(c.constant()) for c in _dense(self._frobenius)]
            poly[0] = poly[0] - u_prev
            stage = adjoin(base, poly, label=f"{self._field.label}(u_{k})")
            fields.append(stage)
            points.append(stage.generator)
        top = fields[-1]
        points = [top.coerce(u) for u in points]
        orbit = []
        for digit in self._field.units(1):
            omega = teichmuller(digit, self._field, default_digits())
            orbit.append(top.coerce(omega) * points[0])
        _logger.info("Torsion tower of level %d over %s: %s", n, self._field.label, top.label)
        return TorsionTower(self, n, fields, points, orbit)

    # ------------------------------------------------------------------ characters
    def eta(self, x, order: int = DEFAULT_ORDER) -> "EtaSeries":
        """eta(x, Z) = exp(Omega x log_LT(Z)) with Omega formal."""
        x = self._field.coerce(x)
        return self._cached(("eta", x.raw, x.prec, order), lambda: EtaSeries(x, self._eta_series(x, order)))

    def _eta_series(self, x: FieldElem, order: int) -> Series:
        field = self._field
        exponent = self.log_lt(order).scale(OmegaScalar(field, {1: x}))
        total = Series.const(1, field).truncate(order)
        term = Series.const(1, field).truncate(order)
        for k in range(1, order):
            term = (term * exponent).scale(Fraction(1, k))
            total = total + term
        return total

    # ------------------------------------------------------------------ iota
    def iota_unit(self, tower: "TorsionTower", order: int = DEFAULT_T_ORDER) -> Series:
        """[pi^-n](Z) = u_n +_LT exp_LT(t / pi^n), the solution W of [pi^n](W) = exp_LT(t) with W(0) = u_n."""
        return self._cached(("iota", tower.level, order), lambda: self._solve_iota_unit(tower, order))

    def _solve_iota_unit(self, tower: "TorsionTower", order: int) -> Series:
        field = tower.field
        iterate = self.iterate(tower.level).lift(field)
        u = tower.point
        slope = iterate.derivative().evaluate(u)
        target = self.exp_lt(order).lift(field).with_var("t")
        coeffs = {0: u}
        for k in range(1, order):
            partial = Series(field, coeffs, k + 1, None, "t")
            value = iterate.compose(partial).coefficient(k)
            coeffs[k] = (target.coefficient(k) - value) / slope
        return Series(field, coeffs, order, None, "t")

    def iota_n(self, f: Series, tower: "TorsionTower", order: int = DEFAULT_T_ORDER) -> Series:
        """
        Substitution of [pi^-n](Z) into f, truncated in t.

        Laurent polynomials are substituted exactly; truncated power series go through
        the shifted composition with the tail bound v_p(a_k) >= -floor(log_q k) / e.
        """
        unit = self.iota_unit(tower, order)
        field = tower.field
        f = f.lift(field) if f.field is not field else f
        if f.trunc is not None:
            tail = (Fraction(0), Fraction(1, self._field.e))
            return f.compose_shifted(unit, tail=tail, q=self.q, order=order)
        result = Series(field, {}, order, None, "t")
        exps = f.exponents()
        if not exps:
            return result
        if 0 in f.coeffs:
            result = result + Series(field, {0: f.coeffs[0]}, None, None, "t")
        power = unit
        for k in range(1, max(max(exps), 0) + 1):
            if k > 1:
                power = power * unit
            if k in f.coeffs:
                result = result + power.scale(f.coeffs[k])
        if min(exps) < 0:
            inverse = unit.inverse()
            power = inverse
            for k in range(1, -min(exps) + 1):
                if k > 1:
                    power = power * inverse
                if -k in f.coeffs:
                    result = result + power.scale(f.coeffs[-k])
        return result

    def translate(self, a: FieldElem) -> Series:
        """Z +_LT a for a torsion point a, as an exact polynomial."""
        if self._variant != "cyclotomic":
            raise FrobeniusUnsupported(operation="translate", detail="closed form only for the cyclotomic datum")
        return Series(a.field, {0: a, 1: a + 1})


def _dense(poly: Series) -> List[OmegaScalar]:
    return [poly.coefficient(k) for k in range(int(poly.degree()) + 1)]


@dataclass
class TorsionTower:
    group: FormalGroup
    level: int
    fields: List[LocalField]
    points: List[FieldElem]
    orbit: List[FieldElem] = dc_field(default_factory=list)

    @property
    def field(self) -> LocalField:
        return self.fields[-1]

    @property
    def point(self) -> FieldElem:
        return self.points[-1]

    @property
    def torsion(self) -> List[FieldElem]:
        """All level-1 torsion points, zero included."""
        return [self.field.zero()] + list(self.orbit)

    def valuation_p(self, k: Optional[int] = None) -> Fraction:
        return self.points[(k or self.level) - 1].v_p()


@dataclass
class EtaSeries:
    x: FieldElem
    series: Series

    def __mul__(self, other: "EtaSeries") -> "EtaSeries":
        return EtaSeries(self.x + other.x, self.series * other.series)


class EtaSum:
    """
    Formal finite combination sum_j c_j eta(j, Z) with exact points j in o_L.

    Frobenius, Gamma, Psi and the invariant derivative act on the points, which keeps
    every identity among such sums exact.
    """

    def __init__(self, group: FormalGroup, terms: Optional[Dict[FieldElem, object]] = None):
        self._group = group
        self._terms: Dict[FieldElem, OmegaScalar] = {}
        field = group.field
        for j, c in (terms or {}).items():
            j = field.coerce(j)
            c = c if isinstance(c, OmegaScalar) else OmegaScalar.const(field.coerce(c), field)
            self._terms[j] = self._terms[j] + c if j in self._terms else c

    @classmethod
    def eta(cls, group: FormalGroup, j, c=1) -> "EtaSum":
        return cls(group, {group.field.coerce(j): c})

    @property
    def group(self) -> FormalGroup:
        return self._group

    @property
    def terms(self) -> Dict[FieldElem, OmegaScalar]:
        return {j: c for j, c in self._terms.items() if not c.is_zero()}

    def _map_points(self, fn) -> "EtaSum":
        terms: Dict[FieldElem, OmegaScalar] = {}
        for j, c in self._terms.items():
            image = fn(j)
            if image is None:
                continue
            terms[image] = terms[image] + c if image in terms else c
        return EtaSum(self._group, terms)

    def phi(self) -> "EtaSum":
        pi = self._group.pi
        return self._map_points(lambda j: j * pi)

    def gamma(self, a) -> "EtaSum":
        a = self._group.field.coerce(a)
        return self._map_points(lambda j: j * a)

    def psi_capital(self) -> "EtaSum":
        """Psi(eta(j)) = eta(j / pi) for j in pi o_L, and 0 otherwise."""
        pi = self._group.pi
        return self._map_points(lambda j: j / pi if j.valuation_lower() >= 1 else None)

    def psi(self) -> "EtaSum":
        return self.psi_capital().scale(Fraction(self._group.q) / self._group.pi)

    def derivative(self) -> "EtaSum":
        field = self._group.field
        return EtaSum(self._group, {j: c * OmegaScalar(field, {1: j}) for j, c in self._terms.items()})

    def scale(self, c) -> "EtaSum":
        field = self._group.field
        c = c if isinstance(c, OmegaScalar) else OmegaScalar.const(field.coerce(c), field)
        return EtaSum(self._group, {j: x * c for j, x in self._terms.items()})

    def __add__(self, other: "EtaSum") -> "EtaSum":
        terms = dict(self._terms)
        for j, c in other._terms.items():
            terms[j] = terms[j] + c if j in terms else c
        return EtaSum(self._group, terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, EtaSum):
            return self.scale(other)
        terms: Dict[FieldElem, OmegaScalar] = {}
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                k = i + j
                terms[k] = terms[k] + a * b if k in terms else a * b
        return EtaSum(self._group, terms)

    def __eq__(self, other):
        if not isinstance(other, EtaSum):
            return NotImplemented
        return all(c.is_zero() for c in (self - other)._terms.values())

    __hash__ = None

    def to_series(self, order: int = DEFAULT_ORDER) -> Series:
        field = self._group.field
        total = Series(field, {}, order)
        for j, c in self._terms.items():
            total = total + self._group.eta(j, order).series.scale(c)
        return total

    def to_polynomial(self) -> Series:
        """(1+Z)^j expansion for the cyclotomic datum at non-negative integer points."""
        if self._group.variant != "cyclotomic":
            raise FrobeniusUnsupported(operation="to_polynomial", detail="eta is a polynomial only when Omega = 1")
        field = self._group.field
        total = Series(field, {})
        for j, c in self._terms.items():
            value = j.to_rational()
            if value.denominator != 1 or value < 0:
                raise FrobeniusUnsupported(operation="to_polynomial", detail=f"point {value} is not in N")
            k = int(value)
            scalar = c.specialize(1)
            total = total + Series(field, {i: math.comb(k, i) for i in range(k + 1)}).scale(scalar)
        return total

    def __repr__(self):
        return " + ".join(f"({c!r})*eta({j!r})" for j, c in self.terms.items()) or "0"
