# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 04/05/2023
 * Time: 09:40
 *
 * Edited by: eniocc
 * Date: 25/05/2023
 * Time: 22:13
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from ltlab.core.Errors import (FieldMismatch, InexactSeries, NonConvergentComposition, TailNotDominated,
                               TruncationTooShort)
from ltlab.model.Padic import INF, FieldElem, LocalField, OmegaScalar, _min_prec, default_digits

_logger = logging.getLogger(__name__)

DEFAULT_ORDER = 16


def _min_trunc(*truncs):
    finite = [t for t in truncs if t is not None and t != INF]
    return min(finite) if finite else None


def _floor_log(k: int, q: int) -> int:
    i = 0
    while q ** (i + 1) <= k:
        i += 1
    return i


def _tail_minimum(start: int, j: int, a: Fraction, b: Fraction, v_c: Fraction, q: int) -> Fraction:
    """min over k >= start of a - b floor(log_q k) + (k - j) v_c."""
    def bound(k):
        return a - b * _floor_log(max(k, 1), q) + (k - j) * v_c

    best = bound(start)
    i = _floor_log(max(start, 1), q) + 1
    while True:
        best = min(best, bound(q ** i))
        # increments between consecutive powers of q only grow from here on
        if (q ** (i + 1) - q ** i) * v_c >= b:
            return best
        i += 1


def _as_omega(c, field: LocalField) -> OmegaScalar:
    if isinstance(c, OmegaScalar):
        return c.lift(field) if c.field is not field else c
    return OmegaScalar.const(field.coerce(c), field)


@dataclass(frozen=True)
class AnnulusSpec:
    """Closed annulus {s <= v_p(Z) <= r} of the rigid analytic line."""
    s: Fraction
    r: Fraction

    def __post_init__(self):
        if not (0 < self.s <= self.r):
            raise ValueError(f"annulus endpoints must satisfy 0 < s <= r, got [{self.s}, {self.r}]")

    @classmethod
    def create(cls, s, r=None) -> "AnnulusSpec":
        return cls(Fraction(s), Fraction(s if r is None else r))


class Series:
    """
    Truncated Laurent series sum a_k Z^k over OmegaScalar coefficients.

    ``trunc`` is the Z-adic truncation (coefficients known for k < trunc, None means
    the head is exact and finite). ``prec`` is a pi-adic floor: every coefficient,
    listed or not, is only known modulo pi^prec (None means no floor). Unknown
    coefficients beyond a truncation are assumed integral.
    """
    __slots__ = ("_field", "_coeffs", "_trunc", "_prec", "_var")

    def __init__(self, field: LocalField, coeffs: Optional[Dict[int, object]] = None, trunc: Optional[int] = None,
                 prec: Optional[int] = None, var: str = "Z"):
        self._field = field
        self._trunc = trunc
        self._prec = prec
        self._var = var
        self._coeffs: Dict[int, OmegaScalar] = {}
        for k, c in (coeffs or {}).items():
            if trunc is not None and k >= trunc:
                continue
            c = _as_omega(c, field)
            if prec is not None:
                c = c.with_prec(prec)
            if c.terms and not (prec is not None and c.is_zero()):
                self._coeffs[k] = c

    # ------------------------------------------------------------------ constructors
    @classmethod
    def variable(cls, field: LocalField, var: str = "Z") -> "Series":
        return cls(field, {1: field.one()}, var=var)

    @classmethod
    def const(cls, c, field: LocalField, var: str = "Z", trunc: Optional[int] = None) -> "Series":
        return cls(field, {0: c}, trunc=trunc, var=var)

    @classmethod
    def monomial(cls, field: LocalField, k: int, c=1, var: str = "Z") -> "Series":
        return cls(field, {k: c}, var=var)

    @classmethod
    def from_list(cls, field: LocalField, coeffs: Sequence, trunc: Optional[int] = None, start: int = 0,
                  var: str = "Z") -> "Series":
        return cls(field, {start + i: c for i, c in enumerate(coeffs)}, trunc=trunc, var=var)

    # ------------------------------------------------------------------ accessors
    @property
    def field(self) -> LocalField:
        return self._field

    @property
    def trunc(self) -> Optional[int]:
        return self._trunc

    @property
    def prec(self) -> Optional[int]:
        return self._prec

    @property
    def var(self) -> str:
        return self._var

    @property
    def coeffs(self) -> Dict[int, OmegaScalar]:
        return dict(self._coeffs)

    def exponents(self) -> List[int]:
        return sorted(self._coeffs)

    def coefficient(self, k: int) -> OmegaScalar:
        if self._trunc is not None and k >= self._trunc:
            raise TruncationTooShort(available=self._trunc, requested=k + 1)
        zero = OmegaScalar(self._field)
        if self._prec is not None:
            zero = OmegaScalar(self._field, {0: self._field.zero().with_prec(self._prec)})
        return self._coeffs.get(k, zero)

    def __getitem__(self, k: int) -> OmegaScalar:
        return self.coefficient(k)

    def order(self):
        """Lowest exponent with a known nonzero coefficient; the truncation when none is known."""
        known = [k for k, c in self._coeffs.items() if not c.is_zero()]
        if known:
            return min(known)
        return INF if self._trunc is None else self._trunc

    def degree(self):
        known = [k for k, c in self._coeffs.items() if not c.is_zero()]
        return max(known) if known else -INF

    def is_exact(self) -> bool:
        return self._trunc is None and self._prec is None and all(
            all(c.is_exact for c in a.terms.values()) for a in self._coeffs.values())

    def is_polynomial(self) -> bool:
        return self._trunc is None and self.order() >= 0

    def is_laurent_polynomial(self) -> bool:
        return self._trunc is None

    def is_power_series(self) -> bool:
        return self.order() >= 0

    def laurent_order(self) -> int:
        order = self.order()
        return 0 if order == INF or order >= 0 else -order

    def power_part(self) -> "Series":
        return Series(self._field, {k: c for k, c in self._coeffs.items() if k >= 0}, self._trunc, self._prec,
                      self._var)

    def principal_part(self) -> "Series":
        return Series(self._field, {k: c for k, c in self._coeffs.items() if k < 0}, None, self._prec, self._var)

    def min_valuation(self):
        """Minimal pi-adic valuation over the known coefficients (Omega ignored)."""
        vals = [c.valuation_lower() for c in self._coeffs.values()]
        return min(vals) if vals else INF

    def _bound_valuation(self):
        v = self.min_valuation()
        return min(v, 0) if self._trunc is not None else v

    # ------------------------------------------------------------------ conversions
    def lift(self, field: LocalField) -> "Series":
        if field is self._field:
            return self
        if not field.contains(self._field):
            raise FieldMismatch(left=self._field.label, right=field.label)
        prec = None if self._prec is None else self._prec * (field.e // self._field.e)
        return Series(field, {k: c.lift(field) for k, c in self._coeffs.items()}, self._trunc, prec, self._var)

    def truncate(self, trunc: Optional[int]) -> "Series":
        return Series(self._field, self._coeffs, _min_trunc(self._trunc, trunc), self._prec, self._var)

    def with_prec(self, prec: Optional[int]) -> "Series":
        return Series(self._field, self._coeffs, self._trunc, _min_prec(self._prec, prec), self._var)

    def with_var(self, var: str) -> "Series":
        return Series(self._field, self._coeffs, self._trunc, self._prec, var)

    def map_coefficients(self, fn: Callable[[OmegaScalar], object]) -> "Series":
        return Series(self._field, {k: fn(c) for k, c in self._coeffs.items()}, self._trunc, self._prec, self._var)

    def specialize_omega(self, value) -> "Series":
        return self.map_coefficients(lambda c: OmegaScalar.const(c.specialize(value), self._field))

    def _common(self, other: "Series") -> Tuple["Series", "Series"]:
        if other._field is self._field:
            return self, other
        if self._field.contains(other._field):
            return self, other.lift(self._field)
        if other._field.contains(self._field):
            return self.lift(other._field), other
        raise FieldMismatch(left=self._field.label, right=other._field.label)

    # ------------------------------------------------------------------ ring operations
    def __add__(self, other):
        if not isinstance(other, Series):
            return self + Series.const(other, self._field, self._var)
        a, b = self._common(other)
        coeffs = dict(a._coeffs)
        for k, c in b._coeffs.items():
            coeffs[k] = coeffs[k] + c if k in coeffs else c
        return Series(a._field, coeffs, _min_trunc(a._trunc, b._trunc), _min_prec(a._prec, b._prec), a._var)

    __radd__ = __add__

    def __neg__(self):
        return Series(self._field, {k: -c for k, c in self._coeffs.items()}, self._trunc, self._prec, self._var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Series":
        if isinstance(c, FieldElem):
            c = OmegaScalar.const(c)
        elif not isinstance(c, OmegaScalar):
            c = OmegaScalar.const(self._field.coerce(c), self._field)
        field = self._field
        if c.field is not field and c.field.contains(field):
            return self.lift(c.field).scale(c)
        c = c.lift(field) if c.field is not field else c
        v = c.valuation_lower()
        prec = None if self._prec is None or v == INF else self._prec + int(v)
        return Series(field, {k: a * c for k, a in self._coeffs.items()}, self._trunc, prec, self._var)

    def __mul__(self, other):
        if not isinstance(other, Series):
            if isinstance(other, (int, Fraction, FieldElem, OmegaScalar)):
                return self.scale(other)
            return NotImplemented
        a, b = self._common(other)
        ord_a, ord_b = a.order(), b.order()
        if (ord_a == INF and a._trunc is None and a._prec is None) or \
                (ord_b == INF and b._trunc is None and b._prec is None):
            return Series(a._field, {}, None, None, a._var)
        trunc_candidates = []
        if a._trunc is not None:
            trunc_candidates.append(a._trunc + (ord_b if ord_b != INF else b._trunc or 0))
        if b._trunc is not None:
            trunc_candidates.append(b._trunc + (ord_a if ord_a != INF else a._trunc or 0))
        trunc = min(trunc_candidates) if trunc_candidates else None
        prec_candidates = []
        if a._prec is not None:
            prec_candidates.append(a._prec + b._bound_valuation())
        if b._prec is not None:
            prec_candidates.append(b._prec + a._bound_valuation())
        prec_candidates = [int(x) for x in prec_candidates if x != INF]
        prec = min(prec_candidates) if prec_candidates else None
        if prec is not None and (a._prec is not None and a.laurent_order() and b._trunc is not None or
                                 b._prec is not None and b.laurent_order() and a._trunc is not None):
            _logger.debug("Product of a boundary expansion with a truncated series")
        coeffs: Dict[int, OmegaScalar] = {}
        for i, x in a._coeffs.items():
            for j, y in b._coeffs.items():
                k = i + j
                if trunc is not None and k >= trunc:
                    continue
                prod = x * y
                coeffs[k] = coeffs[k] + prod if k in coeffs else prod
        return Series(a._field, coeffs, trunc, prec, a._var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            return self.inverse() ** (-n)
        result = Series.const(1, self._field, self._var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        if isinstance(other, OmegaScalar):
            return self.scale(other.inverse())
        return self.scale(self._field.coerce(other).inverse())

    def __eq__(self, other):
        if isinstance(other, (Series, int, Fraction, FieldElem, OmegaScalar)):
            try:
                diff = self - other
            except FieldMismatch:
                return False
            return all(c.is_zero() for c in diff._coeffs.values())
        return NotImplemented

    __hash__ = None

    def shift(self, m: int) -> "Series":
        """Multiplication by Z^m."""
        trunc = None if self._trunc is None else self._trunc + m
        return Series(self._field, {k + m: c for k, c in self._coeffs.items()}, trunc, self._prec, self._var)

    # ------------------------------------------------------------------ inverses
    def _dominant_index(self) -> int:
        vals = {k: c.valuation_lower() for k, c in self._coeffs.items() if not c.is_zero()}
        if not vals:
            raise ZeroDivisionError("inverse of a zero series")
        best = min(vals.values())
        return min(k for k, v in vals.items() if v == best)

    def inverse(self, trunc: Optional[int] = None, prec: Optional[int] = None) -> "Series":
        """
        Inverse of a series.

        Power series and truncated Laurent series are inverted Z-adically from their
        lowest term. An exact Laurent polynomial whose dominant coefficient sits at the
        top degree is inverted at the boundary of the unit disc: the result is a finite
        Laurent polynomial known modulo pi^prec.
        """
        order = self.order()
        if order == INF:
            raise ZeroDivisionError("inverse of a zero series")
        if self._trunc is None and len(self._coeffs) == 1:
            (k, c), = self._coeffs.items()
            return Series(self._field, {-k: c.inverse()}, None, self._prec, self._var)
        if self._trunc is None:
            dominant = self._dominant_index()
            if dominant == self.degree() and dominant != order:
                return self._boundary_inverse(prec)
            if dominant != order:
                raise NonConvergentComposition(detail="no dominant term at either end of the Laurent polynomial")
            return self.truncate(order + (trunc or DEFAULT_ORDER))._zadic_inverse()
        return self._zadic_inverse()

    def _zadic_inverse(self) -> "Series":
        m = self.order()
        lead = self._coeffs[m]
        if not lead.is_monomial():
            raise ZeroDivisionError("leading coefficient is not invertible")
        inv_lead = lead.inverse()
        length = self._trunc - m
        b: List[OmegaScalar] = [inv_lead]
        for k in range(1, length):
            acc = OmegaScalar(self._field)
            for i in range(1, k + 1):
                a = self._coeffs.get(m + i)
                if a is not None:
                    acc = acc + a * b[k - i]
            b.append(-(inv_lead * acc))
        return Series(self._field, {k - m: c for k, c in enumerate(b)}, length - m, self._prec, self._var)

    def _boundary_inverse(self, prec: Optional[int] = None) -> "Series":
        n = prec or default_digits()
        top = self.degree()
        lead = self._coeffs[top]
        inv_lead = lead.inverse()
        rest = Series(self._field, {k - top: c * inv_lead for k, c in self._coeffs.items() if k != top},
                      var=self._var)
        if rest.min_valuation() < 1:
            raise NonConvergentComposition(detail="lower coefficients do not lie in pi times the top coefficient")
        total = Series.const(1, self._field, self._var)
        power = Series.const(1, self._field, self._var)
        for _ in range(1, n + 1):
            power = (-(power * rest)).with_prec(n)
            if not power.coeffs:
                break
            total = total + power
        return total.with_prec(n).scale(inv_lead).shift(-top).with_prec(n)

    # ------------------------------------------------------------------ calculus
    def derivative(self) -> "Series":
        coeffs = {k - 1: c * k for k, c in self._coeffs.items() if k != 0}
        trunc = None if self._trunc is None else self._trunc - 1
        return Series(self._field, coeffs, trunc, self._prec, self._var)

    def residue(self) -> OmegaScalar:
        """Coefficient of Z^-1."""
        return self.coefficient(-1)

    def residue_dt(self, group) -> OmegaScalar:
        """Residue of f g_LT dZ, i.e. of f dt_LT."""
        g = group.g_lt(max(self.laurent_order() + 1, 2))
        return (self * g).residue()

    def evaluate(self, x) -> OmegaScalar:
        """Value at a point of a finite Laurent polynomial."""
        if self._trunc is not None:
            raise InexactSeries(operation="evaluate", detail="series is truncated")
        if not isinstance(x, (FieldElem, OmegaScalar)):
            x = self._field.coerce(x)
        field = x.field if x.field.contains(self._field) else self._field
        total = OmegaScalar(field)
        for k, c in self._coeffs.items():
            total = total + c.lift(field) * (x ** k)
        return total

    def constant_term(self) -> OmegaScalar:
        return self.coefficient(0)

    # ------------------------------------------------------------------ composition
    def compose(self, g: "Series") -> "Series":
        """
        f o g.

        ``g`` must have zero constant term unless ``f`` is an exact polynomial. Laurent
        terms of ``f`` use the Z-adic inverse of ``g``.
        """
        f, g = self._common(g)
        g_const = g._coeffs.get(0)
        has_const = g_const is not None and not g_const.is_zero()
        if has_const and not f.is_polynomial():
            raise NonConvergentComposition(detail="inner series has a nonzero constant term; use compose_shifted")
        m = g.order()
        if m == INF:
            return Series.const(f.coefficient(0), f._field, g._var).truncate(g._trunc)
        if m < 0 and not f.is_polynomial():
            raise NonConvergentComposition(detail="inner series has a pole")
        exps = f.exponents()
        result = Series(f._field, {}, None, None, g._var)
        if f._trunc is not None and m > 0:
            result = result.truncate(f._trunc * m)
        if not exps:
            return result
        positive = [k for k in exps if k > 0]
        negative = [k for k in exps if k < 0]
        if 0 in f._coeffs:
            result = result + Series.const(f._coeffs[0], f._field, g._var)
        if positive:
            power = g
            for k in range(1, max(positive) + 1):
                if k > 1:
                    power = power * g
                if k in f._coeffs:
                    result = result + power.scale(f._coeffs[k])
        if negative:
            g_inv = g.inverse()
            power = g_inv
            for k in range(1, -min(negative) + 1):
                if k > 1:
                    power = power * g_inv
                if -k in f._coeffs:
                    result = result + power.scale(f._coeffs[-k])
        if f._prec is not None:
            result = result.with_prec(f._prec)
        return result

    def compose_shifted(self, g: "Series", tail: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0)),
                        q: Optional[int] = None, order: Optional[int] = None) -> "Series":
        """
        f o g for a power series f and g with constant term c of positive valuation.

        The unknown tail of ``f`` is bounded by v_p(f_k) >= a - b * floor(log_q k) for
        k >= trunc(f), with ``tail = (a, b)``. Each coefficient of the result gets the
        precision that bound certifies; the result is cut at the first coefficient with
        no certified digit.
        """
        f, g = self._common(g)
        field = f._field
        c = g._coeffs.get(0, OmegaScalar(field))
        if f.order() < 0:
            raise NonConvergentComposition(detail="outer series has a pole")
        if f._trunc is None or c.is_zero():
            return f.compose(g)
        v_c = c.valuation_p()
        if v_c <= 0:
            raise NonConvergentComposition(detail=f"constant term of valuation {v_c} is not topologically nilpotent")
        q = q or field.q
        a, b = Fraction(tail[0]), Fraction(tail[1])
        v_w = Fraction(0)
        for k, w in g._coeffs.items():
            if k >= 1 and not w.is_zero():
                v_w = min(v_w, Fraction(w.valuation_p()) / k)
        head = Series(field, f._coeffs, None, None, f._var)
        body = head.compose(g)
        horizon = order or DEFAULT_ORDER
        for t in (g._trunc, body._trunc):
            if t is not None:
                horizon = min(horizon, t)
        coeffs = {}
        for j in range(0, horizon):
            cap = int(math.floor((_tail_minimum(f._trunc, j, a, b, v_c, q) + j * v_w) * field.e))
            if f._prec is not None:
                cap = min(cap, f._prec)
            if cap <= 0:
                horizon = j
                break
            coeffs[j] = body._coeffs.get(j, OmegaScalar(field, {0: field.zero().with_prec(cap)})).with_prec(cap)
        _logger.debug("compose_shifted: %d certified coefficients", horizon)
        return Series(field, coeffs, horizon, None, g._var)

    def reversion(self) -> "Series":
        """The compositional inverse of a series with zero constant term and invertible linear term."""
        if self.order() != 1:
            raise NonConvergentComposition(detail="reversion needs a series of order exactly 1")
        trunc = self._trunc or DEFAULT_ORDER
        f = self.truncate(trunc)
        a1_inv = f._coeffs[1].inverse()
        g = Series(self._field, {1: a1_inv}, trunc, None, self._var)
        identity = Series.variable(self._field, self._var)
        for k in range(2, trunc):
            composite = f.compose(g)
            error = (composite - identity)._coeffs.get(k)
            if error is not None and not error.is_zero():
                g = g - Series(self._field, {k: error * a1_inv}, trunc, None, self._var)
        return g

    # ------------------------------------------------------------------ norms
    def annulus_valuation(self, annulus: AnnulusSpec) -> Fraction:
        """min over t in {s, r} of inf_k (v_p(a_k) + k t)."""
        if self._prec is not None and self.laurent_order():
            raise TailNotDominated(order=self._trunc, detail="boundary expansion has an unbounded Laurent tail")
        vals = {k: c.valuation_p() for k, c in self._coeffs.items() if not c.is_zero()}
        result = None
        for t in (annulus.s, annulus.r):
            known = min((v + k * t for k, v in vals.items()), default=INF)
            if self._trunc is not None and known > self._trunc * t:
                raise TailNotDominated(order=self._trunc, detail=f"minimum {known} exceeds tail bound at t={t}")
            result = known if result is None else min(result, known)
        return result

    def sup_norm_log(self):
        """-log_q of the Gauss norm, i.e. the minimal pi-adic coefficient valuation."""
        v = self.min_valuation()
        if self._trunc is not None and v > 0:
            raise TailNotDominated(order=self._trunc, detail=f"known coefficients have valuation {v} > 0")
        return v

    # ------------------------------------------------------------------ polynomial helpers
    def divmod_monic(self, divisor: "Series") -> Tuple["Series", "Series"]:
        """Euclidean division of a polynomial by a monic polynomial."""
        if not (self.is_polynomial() and divisor.is_polynomial()):
            raise InexactSeries(operation="division", detail="operands must be polynomials")
        f, d = self._common(divisor)
        deg_d = d.degree()
        remainder = dict(f._coeffs)
        quotient: Dict[int, OmegaScalar] = {}
        top = f.degree()
        while top != -INF and top >= deg_d:
            c = remainder.pop(top)
            quotient[top - deg_d] = c
            for k, a in d._coeffs.items():
                if k == deg_d:
                    continue
                idx = top - deg_d + k
                remainder[idx] = remainder[idx] - c * a if idx in remainder else -(c * a)
            known = [k for k, a in remainder.items() if not a.is_zero()]
            top = max(known) if known else -INF
        return (Series(f._field, quotient, None, f._prec, f._var),
                Series(f._field, remainder, None, f._prec, f._var))

    def base_expansion(self, divisor: "Series") -> List["Series"]:
        """Remainders r_j of degree < deg(divisor) with f = sum_j r_j divisor^j."""
        digits, current = [], self
        while current.degree() != -INF:
            current, r = current.divmod_monic(divisor)
            digits.append(r)
        return digits

    def __repr__(self):
        parts = []
        for k in sorted(self._coeffs):
            c = self._coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else (self._var if k == 1 else f"{self._var}^{k}")
            parts.append(f"({c!r})" + (f"*{mono}" if mono else ""))
        body = " + ".join(parts) if parts else "0"
        if self._trunc is not None:
            body += f" + O({self._var}^{self._trunc})"
        if self._prec is not None:
            body += f" (mod pi^{self._prec})"
        return body


class MultiSeries:
    """Power series in several variables with FieldElem coefficients, truncated in total degree."""
    __slots__ = ("_field", "_nvars", "_coeffs", "_degree")

    def __init__(self, field: LocalField, nvars: int, coeffs: Optional[Dict[Tuple[int, ...], object]] = None,
                 degree: int = DEFAULT_ORDER):
        self._field = field
        self._nvars = nvars
        self._degree = degree
        self._coeffs: Dict[Tuple[int, ...], FieldElem] = {}
        for e, c in (coeffs or {}).items():
            if sum(e) < degree:
                c = field.coerce(c)
                if not c.is_zero():
                    self._coeffs[tuple(e)] = c

    @classmethod
    def variables(cls, field: LocalField, nvars: int, degree: int) -> List["MultiSeries"]:
        return [cls(field, nvars, {tuple(1 if j == i else 0 for j in range(nvars)): 1}, degree)
                for i in range(nvars)]

    @classmethod
    def from_series(cls, f: Series, index: int, nvars: int, degree: int) -> "MultiSeries":
        coeffs = {}
        for k, c in f.coeffs.items():
            e = [0] * nvars
            e[index] = k
            coeffs[tuple(e)] = c.constant()
        return cls(f.field, nvars, coeffs, min(degree, f.trunc or degree))

    @property
    def field(self) -> LocalField:
        return self._field

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def coeffs(self) -> Dict[Tuple[int, ...], FieldElem]:
        return dict(self._coeffs)

    def coefficient(self, exponent: Iterable[int]) -> FieldElem:
        return self._coeffs.get(tuple(exponent), self._field.zero())

    def homogeneous_part(self, d: int) -> "MultiSeries":
        return MultiSeries(self._field, self._nvars, {e: c for e, c in self._coeffs.items() if sum(e) == d},
                           self._degree)

    def truncate(self, degree: int) -> "MultiSeries":
        return MultiSeries(self._field, self._nvars, self._coeffs, min(degree, self._degree))

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        coeffs = dict(self._coeffs)
        for e, c in other._coeffs.items():
            coeffs[e] = coeffs[e] + c if e in coeffs else c
        return MultiSeries(self._field, self._nvars, coeffs, min(self._degree, other._degree))

    def __neg__(self):
        return MultiSeries(self._field, self._nvars, {e: -c for e, c in self._coeffs.items()}, self._degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MultiSeries":
        c = self._field.coerce(c)
        return MultiSeries(self._field, self._nvars, {e: x * c for e, x in self._coeffs.items()}, self._degree)

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            return self.scale(other)
        degree = min(self._degree, other._degree)
        coeffs: Dict[Tuple[int, ...], FieldElem] = {}
        for e1, c1 in self._coeffs.items():
            d1 = sum(e1)
            for e2, c2 in other._coeffs.items():
                if d1 + sum(e2) >= degree:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                coeffs[e] = coeffs[e] + prod if e in coeffs else prod
        return MultiSeries(self._field, self._nvars, coeffs, degree)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiSeries":
        result = MultiSeries(self._field, self._nvars, {(0,) * self._nvars: 1}, self._degree)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        diff = self - other
        return all(c.is_zero() for c in diff._coeffs.values())

    __hash__ = None

    def substitute(self, values: Sequence["MultiSeries"]) -> "MultiSeries":
        """F(G_1, ..., G_n) for series G_i without constant term in a common set of variables."""
        target = values[0]
        degree = min([self._degree] + [v.degree for v in values])
        powers: List[List[MultiSeries]] = []
        for v in values:
            row = [MultiSeries(self._field, v.nvars, {(0,) * v.nvars: 1}, degree)]
            powers.append(row)
        result = MultiSeries(self._field, target.nvars, {}, degree)
        for e, c in self._coeffs.items():
            term = MultiSeries(self._field, target.nvars, {(0,) * target.nvars: c}, degree)
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * values[i].truncate(degree))
                if k:
                    term = term * powers[i][k]
            result = result + term
        return result

    def compose_into(self, f: Series) -> "MultiSeries":
        """f(F) for a univariate power series f and this series without constant term."""
        degree = min(self._degree, f.trunc or self._degree)
        result = MultiSeries(self._field, self._nvars, {}, degree)
        power = MultiSeries(self._field, self._nvars, {(0,) * self._nvars: 1}, degree)
        for k in range(0, degree):
            if k:
                power = power * self
            c = f.coeffs.get(k)
            if c is not None:
                result = result + power.scale(c.constant())
        return result

    def __repr__(self):
        names = "XYWVU"
        parts = []
        for e in sorted(self._coeffs, key=lambda x: (sum(x), tuple(-a for a in x))):
            mono = "*".join(f"{names[i]}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"({self._coeffs[e]!r})" + (f"*{mono}" if mono else ""))
        return (" + ".join(parts) if parts else "0") + f" + O(deg {self._degree})"
