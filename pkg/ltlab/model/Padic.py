# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 02/05/2023
 * Time: 11:02
 *
 * Edited by: eniocc
 * Date: 23/05/2023
 * Time: 19:47
"""
import itertools
import logging
import math
import threading
from contextlib import contextmanager
from contextvars import ContextVar
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Poly, cyclotomic_poly, isprime, symbols

from ltlab.core.Errors import (FieldMismatch, NotEisenstein, NotIrreducibleDetected, OutOfConvergenceDomain,
                               PrecisionExhausted)
from ltlab.core.Utils import ceil_div

_logger = logging.getLogger(__name__)

INF = math.inf

DEFAULT_DIGITS = 20
_working_digits: ContextVar[int] = ContextVar("working_digits", default=DEFAULT_DIGITS)

_X = symbols("X")

_cache_lock = threading.RLock()
_qp_fields: Dict[int, "LocalField"] = {}
_stage_fields: Dict[tuple, "LocalField"] = {}
_closures: Dict[tuple, Tuple["LocalField", "FieldElem"]] = {}


def default_digits() -> int:
    """Precision used where no explicit ``prec`` is given; ``DEFAULT_DIGITS`` outside ``working_digits``."""
    return _working_digits.get()


@contextmanager
def working_digits(n: int):
    """Run a block with ``n`` as the implicit working precision."""
    if n < 1:
        raise ValueError(f"working precision must be positive, got {n}")
    token = _working_digits.set(n)
    try:
        yield n
    finally:
        _working_digits.reset(token)


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _min_prec(*precs):
    finite = [n for n in precs if n is not None]
    return min(finite) if finite else None


class LocalField:
    """
    A finite extension of Q_p given by a tower of monic stage polynomials.

    ``base is None`` stands for Q_p itself, whose raw elements are Fractions. A stage
    raw element is a tuple of ``degree`` raw elements of the base, the coordinates in
    the power basis of the stage generator. Valuations are integers normalized by
    ``v(pi) = 1`` for the field at hand.
    """

    def __init__(self, p: int, base: Optional["LocalField"] = None, poly: Optional[tuple] = None,
                 label: Optional[str] = None, cyclotomic_level: int = 0):
        self._p = p
        self._base = base
        self._poly = poly
        self._cyclotomic_level = cyclotomic_level
        self._lock = threading.RLock()
        self._residue_cache: Dict[int, List["FieldElem"]] = {}
        if base is None:
            self._kind = "rational"
            self._degree = 1
            self._e = 1
            self._f = 1
            self._label = label or f"Q_{p}"
            self._var = None
            return
        self._degree = len(poly) - 1
        self._kind = self._classify_stage()
        if self._kind == "eisenstein":
            self._e = base.e * self._degree
            self._f = base.f
        else:
            self._e = base.e
            self._f = base.f * self._degree
        self._var = f"a{self.height}"
        self._label = label or f"{base.label}[{self._var}]"

    # ------------------------------------------------------------------ structure
    @property
    def p(self) -> int:
        return self._p

    @property
    def base(self) -> Optional["LocalField"]:
        return self._base

    @property
    def poly(self) -> Optional[tuple]:
        return self._poly

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def degree(self) -> int:
        """Degree of the top stage over its base."""
        return self._degree

    @property
    def absolute_degree(self) -> int:
        return self._e * self._f

    @property
    def e(self) -> int:
        return self._e

    @property
    def f(self) -> int:
        return self._f

    @property
    def q(self) -> int:
        return self._p ** self._f

    @property
    def label(self) -> str:
        return self._label

    @property
    def cyclotomic_level(self) -> int:
        return self._cyclotomic_level

    @property
    def height(self) -> int:
        return 0 if self._base is None else self._base.height + 1

    def chain(self) -> List["LocalField"]:
        """The tower from this field down to Q_p."""
        fields, current = [], self
        while current is not None:
            fields.append(current)
            current = current.base
        return fields

    def contains(self, other: "LocalField") -> bool:
        return any(other is f for f in self.chain())

    def __repr__(self):
        return f"LocalField({self._label}, p={self._p}, e={self._e}, f={self._f})"

    def _classify_stage(self) -> str:
        base, poly, d = self._base, self._poly, self._degree
        if d < 2:
            raise NotIrreducibleDetected(stage=base.height + 1, detail="stage of degree < 2 has a root")
        if not base.is_zero_raw(base.add_raw(poly[d], base.neg_raw(base.one_raw()))):
            raise NotEisenstein(stage=base.height + 1, detail="stage polynomial is not monic")
        vals = [base.val_raw(c) for c in poly[:d]]
        if all(v > 0 for v in vals):
            if vals[0] != 1:
                raise NotEisenstein(stage=base.height + 1,
                                    detail=f"constant term has valuation {vals[0]}, expected 1")
            return "eisenstein"
        if any(v < 0 for v in vals):
            raise NotIrreducibleDetected(stage=base.height + 1, detail="non-integral coefficients")
        for digit in base.digit_raws():
            value = base.zero_raw()
            for c in reversed(poly):
                value = base.add_raw(base.mul_raw(value, digit), c)
            if base.val_raw(value) >= 1:
                raise NotIrreducibleDetected(stage=base.height + 1,
                                             detail="residue polynomial has a root in the residue field")
        if base.f == 1 and d >= 4:
            residue = [base.digit_of(c) for c in poly]
            if not Poly(list(reversed(residue)), _X, modulus=self._p).is_irreducible:
                raise NotIrreducibleDetected(stage=base.height + 1, detail="residue polynomial factors over F_p")
        return "unramified"

    # ------------------------------------------------------------------ raw arithmetic
    def zero_raw(self):
        if self._base is None:
            return Fraction(0)
        return (self._base.zero_raw(),) * self._degree

    def one_raw(self):
        if self._base is None:
            return Fraction(1)
        return self.embed_raw(self._base.one_raw())

    def embed_raw(self, base_raw):
        return (base_raw,) + (self._base.zero_raw(),) * (self._degree - 1)

    def from_rational_raw(self, x):
        if self._base is None:
            return Fraction(x)
        return self.embed_raw(self._base.from_rational_raw(x))

    def is_zero_raw(self, raw) -> bool:
        if self._base is None:
            return raw == 0
        return all(self._base.is_zero_raw(c) for c in raw)

    def add_raw(self, a, b):
        if self._base is None:
            return a + b
        return tuple(self._base.add_raw(x, y) for x, y in zip(a, b))

    def neg_raw(self, a):
        if self._base is None:
            return -a
        return tuple(self._base.neg_raw(x) for x in a)

    def mul_raw(self, a, b):
        if self._base is None:
            return a * b
        base, d = self._base, self._degree
        coeffs = [base.zero_raw()] * (2 * d - 1)
        for i, x in enumerate(a):
            if base.is_zero_raw(x):
                continue
            for j, y in enumerate(b):
                if base.is_zero_raw(y):
                    continue
                coeffs[i + j] = base.add_raw(coeffs[i + j], base.mul_raw(x, y))
        return self._reduce_poly(coeffs)

    def _reduce_poly(self, coeffs: list):
        base, d, poly = self._base, self._degree, self._poly
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k]
            if base.is_zero_raw(c):
                continue
            for j in range(d):
                coeffs[k - d + j] = base.add_raw(coeffs[k - d + j], base.neg_raw(base.mul_raw(c, poly[j])))
            coeffs[k] = base.zero_raw()
        return tuple(coeffs[:d])

    def _mul_generator(self, a):
        base = self._base
        return self._reduce_poly([base.zero_raw()] + list(a))

    def _matrix_raw(self, a) -> list:
        """Columns are the coordinates of ``a * x^j``."""
        columns, current = [], a
        for _ in range(self._degree):
            columns.append(current)
            current = self._mul_generator(current)
        return [[columns[j][i] for j in range(self._degree)] for i in range(self._degree)]

    def inv_raw(self, a):
        if self._base is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        base, d = self._base, self._degree
        matrix = self._matrix_raw(a)
        rhs = [base.one_raw()] + [base.zero_raw()] * (d - 1)
        rows = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
        for col in range(d):
            pivot = min((r for r in range(col, d) if not base.is_zero_raw(rows[r][col])),
                        key=lambda r: base.val_raw(rows[r][col]), default=None)
            if pivot is None:
                raise ZeroDivisionError("inverse of zero")
            rows[col], rows[pivot] = rows[pivot], rows[col]
            inv_pivot = base.inv_raw(rows[col][col])
            rows[col] = [base.mul_raw(inv_pivot, x) for x in rows[col]]
            for r in range(d):
                if r != col and not base.is_zero_raw(rows[r][col]):
                    factor = rows[r][col]
                    rows[r] = [base.add_raw(x, base.neg_raw(base.mul_raw(factor, y)))
                               for x, y in zip(rows[r], rows[col])]
        return tuple(rows[i][d] for i in range(d))

    def trace_raw(self, a):
        """Trace of the top stage, a raw element of the base."""
        if self._base is None:
            return a
        base, total, current = self._base, self._base.zero_raw(), a
        for i in range(self._degree):
            total = base.add_raw(total, current[i])
            current = self._mul_generator(current)
        return total

    def norm_raw(self, a):
        if self._base is None:
            return a
        base, d = self._base, self._degree
        rows = self._matrix_raw(a)
        det = base.one_raw()
        for col in range(d):
            pivot = next((r for r in range(col, d) if not base.is_zero_raw(rows[r][col])), None)
            if pivot is None:
                return base.zero_raw()
            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                det = base.neg_raw(det)
            det = base.mul_raw(det, rows[col][col])
            inv_pivot = base.inv_raw(rows[col][col])
            for r in range(col + 1, d):
                if not base.is_zero_raw(rows[r][col]):
                    factor = base.mul_raw(rows[r][col], inv_pivot)
                    rows[r] = [base.add_raw(x, base.neg_raw(base.mul_raw(factor, y)))
                               for x, y in zip(rows[r], rows[col])]
        return det

    def val_raw(self, a):
        if self._base is None:
            if a == 0:
                return INF
            return _vp_int(a.numerator, self._p) - _vp_int(a.denominator, self._p)
        base = self._base
        if self._kind == "eisenstein":
            vals = [self._degree * base.val_raw(c) + i for i, c in enumerate(a) if not base.is_zero_raw(c)]
        else:
            vals = [base.val_raw(c) for c in a if not base.is_zero_raw(c)]
        return min(vals) if vals else INF

    def reduce_raw(self, a, n: int):
        """Canonical representative of ``a`` modulo pi^n."""
        if self._base is None:
            if a == 0:
                return a
            v = self.val_raw(a)
            if v >= n:
                return Fraction(0)
            unit = a / Fraction(self._p) ** v
            modulus = self._p ** (n - v)
            r = unit.numerator * pow(unit.denominator, -1, modulus) % modulus
            return Fraction(r) * Fraction(self._p) ** v
        base = self._base
        if self._kind == "eisenstein":
            return tuple(base.reduce_raw(c, ceil_div(n - i, self._degree)) for i, c in enumerate(a))
        return tuple(base.reduce_raw(c, n) for c in a)

    def pi_raw(self):
        if self._base is None:
            return Fraction(self._p)
        if self._kind == "eisenstein":
            return (self._base.zero_raw(), self._base.one_raw()) + (self._base.zero_raw(),) * (self._degree - 2)
        return self.embed_raw(self._base.pi_raw())

    def generator_raw(self):
        if self._base is None:
            return Fraction(1)
        return (self._base.zero_raw(), self._base.one_raw()) + (self._base.zero_raw(),) * (self._degree - 2)

    def digit_raws(self) -> list:
        """Exact representatives of the residue field, zero first."""
        if self._base is None:
            return [Fraction(i) for i in range(self._p)]
        base_digits = self._base.digit_raws()
        if self._kind == "eisenstein":
            return [self.embed_raw(d) for d in base_digits]
        return [tuple(combo) for combo in itertools.product(base_digits, repeat=self._degree)]

    def digit_of(self, a):
        """Index of the residue class of an integral raw element among ``digit_raws``."""
        key = self.reduce_raw(a, 1)
        for i, d in enumerate(self.digit_raws()):
            if self.reduce_raw(d, 1) == key:
                return i
        raise PrecisionExhausted(detail="element is not integral")

    def residue_vector(self, a) -> Tuple[int, ...]:
        """F_p-coordinates of the residue of an integral raw element."""
        if self._base is None:
            return (int(self.reduce_raw(a, 1)),)
        if self._kind == "eisenstein":
            return self._base.residue_vector(a[0])
        return tuple(x for c in a for x in self._base.residue_vector(c))

    def format_raw(self, a) -> str:
        if self._base is None:
            return str(a)
        terms = []
        for i, c in enumerate(a):
            if self._base.is_zero_raw(c):
                continue
            body = self._base.format_raw(c)
            if i == 0:
                terms.append(body)
            else:
                power = self._var if i == 1 else f"{self._var}^{i}"
                terms.append(power if body == "1" else f"({body})*{power}")
        return " + ".join(terms) if terms else "0"

    # ------------------------------------------------------------------ elements
    def __call__(self, x, prec: Optional[int] = None) -> "FieldElem":
        return self.coerce(x, prec)

    def coerce(self, x, prec: Optional[int] = None) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.field is self:
                elem = x
            elif self.contains(x.field):
                elem = self._lift(x)
            else:
                raise FieldMismatch(left=x.field.label, right=self.label)
        elif isinstance(x, (int, Fraction)):
            elem = FieldElem(self, self.from_rational_raw(x))
        elif isinstance(x, (tuple, list)):
            elem = FieldElem(self, self._raw_from_nested(x))
        else:
            raise TypeError(f"cannot coerce {type(x).__name__} into {self.label}")
        return elem if prec is None else elem.with_prec(prec)

    def _raw_from_nested(self, x):
        if self._base is None:
            return Fraction(x)
        coords = list(x) + [0] * (self._degree - len(x))
        return tuple(self._base.coerce(c).raw for c in coords)

    def _lift(self, x: "FieldElem") -> "FieldElem":
        path = []
        current = self
        while current is not x.field:
            path.append(current)
            current = current.base
        raw = x.raw
        for stage in reversed(path):
            raw = stage.embed_raw(raw)
        prec = None if x.prec is None else x.prec * (self.e // x.field.e)
        return FieldElem(self, raw, prec)

    def zero(self) -> "FieldElem":
        return FieldElem(self, self.zero_raw())

    def one(self) -> "FieldElem":
        return FieldElem(self, self.one_raw())

    @property
    def pi(self) -> "FieldElem":
        return FieldElem(self, self.pi_raw())

    @property
    def generator(self) -> "FieldElem":
        return FieldElem(self, self.generator_raw())

    def different_generator(self) -> "FieldElem":
        """Product over the stages of the derivative of the stage polynomial at its generator."""
        d = self.one()
        current = self
        while current.base is not None:
            x = current.generator
            deriv = current.zero()
            for i in range(1, len(current.poly)):
                deriv = deriv + current.coerce(FieldElem(current.base, current.poly[i])) * i * x ** (i - 1)
            d = d * self.coerce(deriv)
            current = current.base
        return d

    def residues(self, n: int) -> List["FieldElem"]:
        """Exact representatives sum d_i pi^i (i < n) of o_L / pi^n."""
        with self._lock:
            if n not in self._residue_cache:
                digits = [FieldElem(self, d) for d in self.digit_raws()]
                powers = [self.pi ** i for i in range(n)]
                reps = []
                for combo in itertools.product(range(len(digits)), repeat=n):
                    x = self.zero()
                    for i, idx in enumerate(combo):
                        if idx:
                            x = x + digits[idx] * powers[i]
                    reps.append(x)
                self._residue_cache[n] = reps
            return list(self._residue_cache[n])

    def units(self, n: int) -> List["FieldElem"]:
        zero_digit = self.reduce_raw(self.zero_raw(), 1)
        return [x for x in self.residues(n) if self.reduce_raw(x.raw, 1) != zero_digit]

    def residue_key(self, x: "FieldElem", n: int):
        x = self.coerce(x)
        if x.prec is not None and x.prec < n:
            raise PrecisionExhausted(detail=f"element known modulo pi^{x.prec}, class modulo pi^{n} requested")
        return self.reduce_raw(x.raw, n)

    def trace(self, x: "FieldElem", down_to: Optional["LocalField"] = None) -> "FieldElem":
        x = self.coerce(x)
        target = down_to or self.chain()[-1]
        if not self.contains(target):
            raise FieldMismatch(left=self.label, right=target.label)
        current, raw, prec = self, x.raw, x.prec
        while current is not target:
            raw = current.trace_raw(raw)
            if prec is not None:
                prec = prec // (current.e // current.base.e)
            current = current.base
        return FieldElem(target, raw, prec)

    def norm(self, x: "FieldElem", down_to: Optional["LocalField"] = None) -> "FieldElem":
        x = self.coerce(x)
        target = down_to or self.chain()[-1]
        current, raw = self, x.raw
        while current is not target:
            raw = current.norm_raw(raw)
            current = current.base
        prec = None if x.prec is None else x.prec // (self.e // target.e)
        return FieldElem(target, raw, prec)


class FieldElem:
    """
    An element of a LocalField, known modulo pi^prec (``prec is None`` means exact).

    Equality is agreement modulo pi^min(N1, N2); hashing is only consistent with
    equality for exact elements.
    """
    __slots__ = ("_field", "_raw", "_prec")

    def __init__(self, field: LocalField, raw, prec: Optional[int] = None):
        self._field = field
        self._prec = prec
        self._raw = raw if prec is None else field.reduce_raw(raw, prec)

    @property
    def field(self) -> LocalField:
        return self._field

    @property
    def raw(self):
        return self._raw

    @property
    def prec(self) -> Optional[int]:
        return self._prec

    @property
    def is_exact(self) -> bool:
        return self._prec is None

    def with_prec(self, n: Optional[int]) -> "FieldElem":
        return FieldElem(self._field, self._raw, _min_prec(self._prec, n))

    def exact(self) -> "FieldElem":
        """Forget the precision bound and treat the representative as exact."""
        return FieldElem(self._field, self._raw)

    def is_zero(self) -> bool:
        return self._field.is_zero_raw(self._raw)

    def valuation(self):
        if self.is_zero():
            if self._prec is None:
                return INF
            raise PrecisionExhausted(detail=f"element is zero modulo pi^{self._prec}")
        return self._field.val_raw(self._raw)

    def valuation_lower(self):
        """A lower bound for the valuation, usable on inexact zeros."""
        if self.is_zero():
            return INF if self._prec is None else self._prec
        return self._field.val_raw(self._raw)

    def v_p(self):
        v = self.valuation()
        return INF if v == INF else Fraction(v, self._field.e)

    def is_unit(self) -> bool:
        return not self.is_zero() and self.valuation() == 0

    def is_integral(self) -> bool:
        return self.valuation_lower() >= 0

    def _pair(self, other) -> Tuple["FieldElem", "FieldElem"]:
        if isinstance(other, (int, Fraction)):
            return self, self._field.coerce(other)
        if isinstance(other, FieldElem):
            if other._field is self._field:
                return self, other
            if self._field.contains(other._field):
                return self, self._field.coerce(other)
            if other._field.contains(self._field):
                return other._field.coerce(self), other
            raise FieldMismatch(left=self._field.label, right=other._field.label)
        return NotImplemented, NotImplemented

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElem(a._field, a._field.add_raw(a._raw, b._raw), _min_prec(a._prec, b._prec))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self._field, self._field.neg_raw(self._raw), self._prec)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        field = a._field
        raw = field.mul_raw(a._raw, b._raw)
        if a._prec is None and b._prec is None:
            return FieldElem(field, raw)
        bound = min(INF if a._prec is None else a._prec + b.valuation_lower(),
                    INF if b._prec is None else b._prec + a.valuation_lower())
        if bound == INF:
            return FieldElem(field, field.zero_raw())
        return FieldElem(field, raw, int(bound))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            if self._prec is None:
                raise ZeroDivisionError("inverse of zero")
            raise PrecisionExhausted(detail="inverse of an element indistinguishable from zero")
        raw = self._field.inv_raw(self._raw)
        if self._prec is None:
            return FieldElem(self._field, raw)
        v = self._field.val_raw(self._raw)
        return FieldElem(self._field, raw, self._prec - 2 * v)

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = self._field.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            try:
                return (self - other).is_zero()
            except FieldMismatch:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((id(self._field), self._raw))

    def residue_key(self, n: int):
        return self._field.residue_key(self, n)

    def trace(self, down_to: Optional[LocalField] = None) -> "FieldElem":
        return self._field.trace(self, down_to)

    def to_rational(self) -> Fraction:
        """The Q_p coordinate of an element lying in Q_p (after descent)."""
        if self._field.base is None:
            return self._raw
        raw, current = self._raw, self._field
        while current.base is not None:
            if not all(current.base.is_zero_raw(c) for c in raw[1:]):
                raise FieldMismatch(left=self._field.label, right=f"Q_{self._field.p}")
            raw, current = raw[0], current.base
        return raw

    def descend(self, target: LocalField) -> "FieldElem":
        """Rewrite an element of an extension that lies in ``target`` as an element of ``target``."""
        if self._field is target:
            return self
        raw, current, prec = self._raw, self._field, self._prec
        while current is not target:
            if current.base is None:
                raise FieldMismatch(left=self._field.label, right=target.label)
            if not all(current.base.is_zero_raw(c) for c in raw[1:]):
                raise PrecisionExhausted(detail=f"element does not descend to {target.label}")
            if prec is not None:
                prec = prec // (current.e // current.base.e)
            raw, current = raw[0], current.base
        return FieldElem(target, raw, prec)

    def __repr__(self):
        body = self._field.format_raw(self._raw)
        return body if self._prec is None else f"{body} + O(pi^{self._prec})"


class OmegaScalar:
    """Laurent polynomial in the formal period Omega with FieldElem coefficients."""
    __slots__ = ("_field", "_terms")

    def __init__(self, field: LocalField, terms: Optional[Dict[int, FieldElem]] = None):
        self._field = field
        self._terms = {}
        for k, c in (terms or {}).items():
            c = field.coerce(c)
            if not (c.is_exact and c.is_zero()):
                self._terms[k] = c

    @classmethod
    def const(cls, x, field: Optional[LocalField] = None) -> "OmegaScalar":
        if isinstance(x, OmegaScalar):
            return x if field is None else x.lift(field)
        if field is None:
            field = x.field
        return cls(field, {0: field.coerce(x)})

    @classmethod
    def omega(cls, field: LocalField, k: int = 1) -> "OmegaScalar":
        return cls(field, {k: field.one()})

    @property
    def field(self) -> LocalField:
        return self._field

    @property
    def terms(self) -> Dict[int, FieldElem]:
        return dict(self._terms)

    def coefficient(self, k: int) -> FieldElem:
        return self._terms.get(k, self._field.zero())

    def lift(self, field: LocalField) -> "OmegaScalar":
        if field is self._field:
            return self
        return OmegaScalar(field, {k: field.coerce(c) for k, c in self._terms.items()})

    def _pair(self, other) -> Tuple["OmegaScalar", "OmegaScalar"]:
        if not isinstance(other, OmegaScalar):
            if isinstance(other, FieldElem):
                other = OmegaScalar.const(other)
            elif isinstance(other, (int, Fraction)):
                other = OmegaScalar.const(other, self._field)
            else:
                return NotImplemented, NotImplemented
        if other._field is self._field:
            return self, other
        if self._field.contains(other._field):
            return self, other.lift(self._field)
        if other._field.contains(self._field):
            return self.lift(other._field), other
        raise FieldMismatch(left=self._field.label, right=other._field.label)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        terms = dict(a._terms)
        for k, c in b._terms.items():
            terms[k] = terms[k] + c if k in terms else c
        return OmegaScalar(a._field, terms)

    __radd__ = __add__

    def __neg__(self):
        return OmegaScalar(self._field, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        terms: Dict[int, FieldElem] = {}
        for i, x in a._terms.items():
            for j, y in b._terms.items():
                prod = x * y
                terms[i + j] = terms[i + j] + prod if i + j in terms else prod
        return OmegaScalar(a._field, terms)

    __rmul__ = __mul__

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def inverse(self) -> "OmegaScalar":
        if not self.is_monomial():
            raise ZeroDivisionError("only Omega-monomials are invertible")
        (k, c), = self._terms.items()
        return OmegaScalar(self._field, {-k: c.inverse()})

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = OmegaScalar.const(1, self._field)
        for _ in range(exponent):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self._terms.values())

    def __eq__(self, other):
        if isinstance(other, (OmegaScalar, FieldElem, int, Fraction)):
            try:
                return (self - other).is_zero()
            except FieldMismatch:
                return False
        return NotImplemented

    __hash__ = None

    def omega_degrees(self) -> Tuple[int, int]:
        keys = [k for k, c in self._terms.items() if not c.is_zero()]
        return (min(keys), max(keys)) if keys else (0, 0)

    def is_constant(self) -> bool:
        return all(k == 0 or c.is_zero() for k, c in self._terms.items())

    def constant(self) -> FieldElem:
        if not self.is_constant():
            raise ValueError(f"{self!r} depends on Omega")
        return self.coefficient(0)

    def specialize(self, value) -> FieldElem:
        value = self._field.coerce(value)
        total = self._field.zero()
        for k, c in self._terms.items():
            total = total + c * value ** k
        return total

    def with_prec(self, n: Optional[int]) -> "OmegaScalar":
        return OmegaScalar(self._field, {k: c.with_prec(n) for k, c in self._terms.items()})

    def min_prec(self) -> Optional[int]:
        return _min_prec(*(c.prec for c in self._terms.values()))

    def valuation_lower(self):
        """Minimal pi-adic valuation of the coefficients (Omega counted as weight 0)."""
        vals = [c.valuation_lower() for c in self._terms.values()]
        return min(vals) if vals else INF

    def valuation_p(self, lt_field: Optional[LocalField] = None):
        """Lower bound for v_p using v_p(Omega) = 1/(p-1) - 1/(e(q-1)) of the Lubin-Tate field."""
        lt = lt_field or self._field.chain()[-1]
        v_omega = Fraction(1, lt.p - 1) - Fraction(1, lt.e * (lt.q - 1))
        vals = [c.v_p() + k * v_omega for k, c in self._terms.items() if not c.is_zero()]
        return min(vals) if vals else INF

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms):
            c = repr(self._terms[k])
            parts.append(c if k == 0 else f"({c})*Omega" + ("" if k == 1 else f"^{k}"))
        return " + ".join(parts)


Scalar = Union[int, Fraction, FieldElem, OmegaScalar]


# ---------------------------------------------------------------------- constructors
def qp_field(p: int) -> LocalField:
    if not isprime(p):
        raise NotIrreducibleDetected(stage=0, detail=f"{p} is not prime")
    with _cache_lock:
        if p not in _qp_fields:
            _qp_fields[p] = LocalField(p)
        return _qp_fields[p]


def _shifted_cyclotomic(p: int, m: int) -> List[int]:
    """Coefficients (low to high) of the p^m-th cyclotomic polynomial evaluated at X + 1."""
    poly = Poly(cyclotomic_poly(p ** m, _X).subs(_X, _X + 1), _X)
    return [int(c) for c in reversed(poly.all_coeffs())]


def adjoin(base: LocalField, poly: Sequence, label: Optional[str] = None, cyclotomic_level: int = 0) -> LocalField:
    """Adjoin a root of the monic polynomial ``poly`` (coefficients low to high) to ``base``."""
    raw_poly = tuple(base.coerce(c).raw for c in poly)
    key = (base, raw_poly)
    with _cache_lock:
        if key not in _stage_fields:
            if not cyclotomic_level and base.e == 1 and base.base is None:
                for m in (1, 2, 3):
                    if base.p ** m > 64:
                        break
                    if list(raw_poly) == [Fraction(c) for c in _shifted_cyclotomic(base.p, m)]:
                        cyclotomic_level = m
            field = LocalField(base.p, base, raw_poly, label, cyclotomic_level)
            _logger.debug("Adjoined %s stage of degree %d to %s", field.kind, field.degree, base.label)
            _stage_fields[key] = field
        return _stage_fields[key]


def make_field(p: int, tower: Iterable[Sequence] = ()) -> LocalField:
    """
    Build a LocalField from a prime and a list of stage polynomials.

    :param p: the prime.
    :param tower: monic stage polynomials, each a coefficient list (low to high) over the previous stage.
    :return: the top field of the tower.
    """
    field = qp_field(p)
    for poly in tower:
        field = adjoin(field, poly)
    return field


# ---------------------------------------------------------------------- transcendental helpers
def _working_prec(x: FieldElem, prec: Optional[int]) -> int:
    if prec is not None:
        return prec if x.prec is None else min(prec, x.prec)
    return default_digits() if x.prec is None else x.prec


def teichmuller(r, field: Optional[LocalField] = None, prec: Optional[int] = None) -> FieldElem:
    """
    Teichmuller lift of the residue class of ``r``.

    :param r: an integer or an integral unit of ``field`` representing the residue.
    :param field: the field, needed when ``r`` is an integer.
    :param prec: working precision (default ``default_digits()``).
    """
    field = field or r.field
    x = field.coerce(r)
    if x.valuation_lower() > 0:
        raise PrecisionExhausted(detail="zero residue has no Teichmuller lift")
    n = _working_prec(x, prec)
    q = field.q
    for candidate in (field.one(), -field.one()):
        if (x - candidate).valuation_lower() >= 1:
            return candidate
    x = x.with_prec(n)
    for _ in range(2 * n + 4):
        y = x ** q
        if y == x:
            return y
        x = y
    raise PrecisionExhausted(detail="Teichmuller iteration did not stabilize")


def _log_horizon(v: int, e: int, p: int, n: int) -> int:
    k = 1
    start = max(1, int(e / (v * math.log(p))) + 1)
    while k < start or k * v - e * math.log(k, p) < n:
        k += 1
    return k


def padic_log(x: FieldElem, prec: Optional[int] = None) -> FieldElem:
    """Mercator series log(1 + y) for v(y) >= 1."""
    field = x.field
    y = x - 1
    if y.is_zero() and y.is_exact:
        return field.zero()
    v = y.valuation_lower()
    if v < 1:
        raise OutOfConvergenceDomain(function="log", detail=f"v(x - 1) = {v} < 1")
    n = _working_prec(x, prec)
    horizon = _log_horizon(int(min(v, n)), field.e, field.p, n)
    guard = field.e * int(math.log(horizon, field.p) + 1)
    y = y.with_prec(n + guard)
    total, power = field.zero(), field.one()
    for k in range(1, horizon + 1):
        power = power * y
        term = power * Fraction(1, k)
        total = total + term if k % 2 == 1 else total - term
    return total.with_prec(n)


def padic_exp(y: FieldElem, prec: Optional[int] = None) -> FieldElem:
    field, p = y.field, y.field.p
    if y.is_zero() and y.is_exact:
        return field.one()
    v = Fraction(y.valuation_lower(), field.e)
    if v <= Fraction(1, p - 1):
        raise OutOfConvergenceDomain(function="exp", detail=f"v_p(y) = {v} <= 1/(p-1)")
    n = _working_prec(y, prec)
    slope = v - Fraction(1, p - 1)
    horizon = int(Fraction(n, field.e) / slope) + 2
    guard = field.e * (horizon // (p - 1) + 1)
    y = y.with_prec(n + guard)
    total, term = field.one(), field.one()
    for k in range(1, horizon + 1):
        term = term * y * Fraction(1, k)
        total = total + term
    return total.with_prec(n)


def unit_log(u: FieldElem, prec: Optional[int] = None) -> FieldElem:
    """log of a unit, through u^(q-1) which is a principal unit."""
    q = u.field.q
    return padic_log(u ** (q - 1), prec) * Fraction(1, q - 1)


def evaluate(poly: Sequence, x: FieldElem) -> FieldElem:
    value = x.field.zero()
    for c in reversed(poly):
        value = value * x + c
    return value


def find_root(poly: Sequence, field: LocalField, prec: Optional[int] = None, depth: int = 4) -> Optional[FieldElem]:
    """
    A root of ``poly`` (coefficients low to high) in ``field``, or None.

    Residues modulo pi^s are searched for a Hensel start (v(P) > 2 v(P')), which
    Newton iteration then refines.
    """
    n = prec or default_digits()
    coeffs = [field.coerce(c) for c in poly]
    deriv = [coeffs[i] * i for i in range(1, len(coeffs))]
    for s in range(1, depth + 1):
        for r in field.residues(s):
            value = evaluate(coeffs, r)
            if value.is_zero():
                return r
            dvalue = evaluate(deriv, r)
            if dvalue.is_zero():
                continue
            if value.valuation() > 2 * dvalue.valuation():
                guard = 2 * dvalue.valuation() + 2
                x = r.with_prec(n + guard)
                for _ in range(2 * n + 4):
                    step = evaluate(coeffs, x) / evaluate(deriv, x)
                    x_next = x - step
                    if x_next == x and step.valuation_lower() >= n + guard // 2:
                        break
                    x = x_next
                _logger.debug("Hensel root found in %s from a residue modulo pi^%d", field.label, s)
                return x.with_prec(n)
    return None


def _nonsquare_stage(field: LocalField) -> list:
    """A monic quadratic with irreducible reduction over the residue field of ``field``."""
    for digit in field.digit_raws():
        candidate = [FieldElem(field, field.neg_raw(digit)), 0, 1]
        if not any(evaluate(candidate, FieldElem(field, d)).valuation_lower() >= 1 for d in field.digit_raws()):
            return candidate
    return [1, 1, 1]


def cyclotomic_closure(field: LocalField, m: int) -> Tuple[LocalField, FieldElem]:
    """
    An extension of ``field`` containing a primitive p^m-th root of unity, and that root.

    Results are cached per (field, m); the returned root is compatible across m when
    it comes from the same cyclotomic stage.
    """
    if m <= 0:
        return field, field.one()
    key = (field, m)
    with _cache_lock:
        if key in _closures:
            return _closures[key]
    p = field.p
    result = (field, -field.one()) if p ** m == 2 else None
    for stage in field.chain() if result is None else ():
        if stage.cyclotomic_level >= m:
            zeta = field.coerce(1 + stage.generator) ** (p ** (stage.cyclotomic_level - m))
            result = (field, zeta)
            break
    if result is None and field.e == 1:
        if m == 1:
            closure = adjoin(field, _shifted_cyclotomic(p, 1), label=f"{field.label}(zeta_{p})", cyclotomic_level=1)
        else:
            lower, zeta_lower = cyclotomic_closure(field, m - 1)
            # (Y + 1)^p - zeta_{p^(m-1)} is Eisenstein over the previous layer
            poly = [1 - zeta_lower] + [math.comb(p, k) for k in range(1, p)] + [1]
            closure = adjoin(lower, poly, label=f"{field.label}(zeta_{p ** m})", cyclotomic_level=m)
        result = (closure, 1 + closure.generator)
    if result is None:
        phi = [int(c) for c in reversed(Poly(cyclotomic_poly(p ** m, _X), _X).all_coeffs())]
        root = find_root(phi, field)
        if root is not None:
            result = (field, root)
        else:
            extension = adjoin(field, _nonsquare_stage(field))
            root = find_root(phi, extension)
            if root is None:
                raise NotIrreducibleDetected(stage=field.height + 1,
                                             detail=f"no p^{m}-th root of unity found near {field.label}")
            result = (extension, root)
    _logger.info("Cyclotomic closure of %s at level %d: %s", field.label, m, result[0].label)
    with _cache_lock:
        _closures.setdefault(key, result)
        return _closures[key]
