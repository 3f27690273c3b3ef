# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 12/05/2023
 * Time: 10:18
 *
 * Edited by: eniocc
 * Date: 29/05/2023
 * Time: 21:05
"""
import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Union

from ltlab.core.Errors import (CharacterMismatch, ConductorExceedsLevel, ExceptionalPole, FieldMismatch,
                               LevelUnsupported, NotDeRham, NotLocallyConstantOnUnits, RamifiedCharacter,
                               WrongVariant)
from ltlab.core.Utils import ceil_div
from ltlab.model.Padic import (FieldElem, LocalField, OmegaScalar, cyclotomic_closure, default_digits, padic_exp,
                               teichmuller, unit_log)

_logger = logging.getLogger(__name__)

MAX_ENUMERATION_LEVEL = 2


def coefficient_field(field: LocalField, level: int) -> LocalField:
    """The field holding values of characters and additive characters of a given level."""
    if level <= 0:
        return field
    return cyclotomic_closure(field, ceil_div(level, field.e))[0]


def _larger(a: LocalField, b: LocalField) -> LocalField:
    if a.contains(b):
        return a
    if b.contains(a):
        return b
    raise FieldMismatch(left=a.label, right=b.label)


class Character:
    """
    A character of L^x.

    ``delta(pi^v u) = c^v rho(u mod pi^a) u^k exp(s log<u>)`` where ``rho`` is a value
    table on (o_L/pi^a)^x keyed by residue classes, ``c = delta(pi)`` and ``k`` the
    integer weight. Values live in ``values_field``, an extension of L.
    """

    def __init__(self, field: LocalField, pi_value, table: Optional[Mapping] = None, level: int = 0,
                 weight: int = 0, exponent_s: Optional[FieldElem] = None,
                 values_field: Optional[LocalField] = None, label: Optional[str] = None):
        self._field = field
        self._values_field = values_field or field
        self._pi_value = self._values_field.coerce(pi_value)
        if self._pi_value.is_zero():
            raise ValueError("delta(pi) must be nonzero")
        self._level = level
        self._table = {k: self._values_field.coerce(v) for k, v in (table or {}).items()}
        self._weight = weight
        self._exponent_s = None if exponent_s is None or exponent_s.is_zero() else exponent_s
        self._label = label

    # ------------------------------------------------------------------ constructors
    @classmethod
    def trivial(cls, field: LocalField) -> "Character":
        return cls(field, 1, label="1")

    @classmethod
    def unramified(cls, field: LocalField, c) -> "Character":
        if isinstance(c, FieldElem) and c.field is not field:
            return cls(field, c, values_field=c.field, label=f"unr({c!r})")
        return cls(field, c, label=f"unr({c})")

    @classmethod
    def power(cls, field: LocalField, k: int) -> "Character":
        """x^k."""
        return cls(field, field.pi ** k, weight=k, label=f"x^{k}")

    @classmethod
    def absolute_value(cls, field: LocalField) -> "Character":
        """|x|, normalized by |pi| = 1/q."""
        return cls(field, Fraction(1, field.q), label="|x|")

    @classmethod
    def chi(cls, field: LocalField) -> "Character":
        """chi = x|x|."""
        return cls(field, field.pi * Fraction(1, field.q), weight=1, label="chi")

    @classmethod
    def from_unit_function(cls, field: LocalField, level: int, fn, pi_value=1, weight: int = 0,
                           values_field: Optional[LocalField] = None, label: Optional[str] = None) -> "Character":
        values_field = values_field or coefficient_field(field, level)
        table = {field.residue_key(u, level): fn(u) for u in field.units(level)} if level else {}
        return cls(field, pi_value, table, level, weight, values_field=values_field, label=label)

    # ------------------------------------------------------------------ properties
    @property
    def field(self) -> LocalField:
        return self._field

    @property
    def values_field(self) -> LocalField:
        return self._values_field

    @property
    def pi_value(self) -> FieldElem:
        return self._pi_value

    @property
    def level(self) -> int:
        return self._level

    @property
    def table(self) -> Dict:
        return dict(self._table)

    @property
    def weight(self) -> int:
        return self._weight

    @property
    def exponent_s(self) -> Optional[FieldElem]:
        return self._exponent_s

    @property
    def label(self) -> str:
        return self._label or f"delta(pi={self._pi_value!r}, a={self._level}, k={self._weight})"

    @property
    def is_de_rham(self) -> bool:
        return self._exponent_s is None

    def omega_weight(self):
        """omega_delta = k + s."""
        return self._weight if self._exponent_s is None else self._exponent_s + self._weight

    def __repr__(self):
        return f"Character({self.label})"

    # ------------------------------------------------------------------ evaluation
    def rho(self, u: FieldElem) -> FieldElem:
        """The locally constant part on a unit."""
        if not self._level:
            return self._values_field.one()
        return self._table[self._field.residue_key(u, self._level)]

    def on_unit(self, u: FieldElem) -> FieldElem:
        u = self._field.coerce(u)
        value = self.rho(u)
        if self._weight:
            value = value * self._values_field.coerce(u ** self._weight)
        if self._exponent_s is not None:
            value = value * self._values_field.coerce(padic_exp(self._exponent_s * unit_log(u), default_digits()))
        return value

    def __call__(self, x, extend_by_zero: bool = False) -> FieldElem:
        x = self._field.coerce(x) if not isinstance(x, FieldElem) or x.field is not self._field else x
        if x.is_zero():
            if extend_by_zero:
                return self._values_field.zero()
            raise ZeroDivisionError("characters of L^x are not defined at 0")
        v = x.valuation()
        if v and extend_by_zero:
            return self._values_field.zero()
        unit = x / self._field.pi ** v
        return self._pi_value ** v * self.on_unit(unit)

    # ------------------------------------------------------------------ algebra
    def _level_table(self, level: int) -> Dict:
        if level == self._level:
            return dict(self._table)
        return {self._field.residue_key(u, level): self.rho(u) for u in self._field.units(level)}

    def __mul__(self, other: "Character") -> "Character":
        if other._field is not self._field:
            raise FieldMismatch(left=self._field.label, right=other._field.label)
        values_field = _larger(self._values_field, other._values_field)
        level = max(self._level, other._level)
        mine, theirs = self._level_table(level), other._level_table(level)
        table = {k: values_field.coerce(mine[k]) * values_field.coerce(theirs[k]) for k in mine}
        s = self._exponent_s if other._exponent_s is None else (
            other._exponent_s if self._exponent_s is None else self._exponent_s + other._exponent_s)
        pi_value = values_field.coerce(self._pi_value) * values_field.coerce(other._pi_value)
        label = f"{self.label}*{other.label}" if self._label and other._label else None
        return Character(self._field, pi_value, table, level, self._weight + other._weight, s, values_field, label)

    def inverse(self) -> "Character":
        table = {k: v.inverse() for k, v in self._table.items()}
        s = None if self._exponent_s is None else -self._exponent_s
        label = f"({self._label})^-1" if self._label else None
        return Character(self._field, self._pi_value.inverse(), table, self._level, -self._weight, s,
                         self._values_field, label)

    def __pow__(self, n: int) -> "Character":
        result = Character.trivial(self._field)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            result = result * base
        return result

    def reduced(self) -> "Character":
        """The same character with its table cut down to the conductor level."""
        a = self.conductor()
        if a == self._level:
            return self
        table = {self._field.residue_key(u, a): self.rho(u) for u in self._field.units(a)} if a else {}
        return Character(self._field, self._pi_value, table, a, self._weight, self._exponent_s,
                         self._values_field, self._label)

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        if other._field is not self._field or self._weight != other._weight:
            return False
        if (self._exponent_s is None) != (other._exponent_s is None):
            return False
        if self._exponent_s is not None and not self._exponent_s == other._exponent_s:
            return False
        try:
            field = _larger(self._values_field, other._values_field)
        except FieldMismatch:
            return False
        if not field.coerce(self._pi_value) == field.coerce(other._pi_value):
            return False
        level = max(self._level, other._level)
        mine, theirs = self._level_table(level), other._level_table(level)
        return all(field.coerce(mine[k]) == field.coerce(theirs[k]) for k in mine)

    __hash__ = None

    # ------------------------------------------------------------------ invariants
    def conductor(self) -> int:
        """Smallest m with 1 + pi^m o_L in the kernel of the locally constant part."""
        if self._exponent_s is not None:
            raise NotLocallyConstantOnUnits(detail=f"{self.label} has an analytic exponent on 1-units")
        if not self._level:
            return 0
        one = self._values_field.one()
        units = self._field.units(self._level)
        if all(self.rho(u) == one for u in units):
            return 0
        pi = self._field.pi
        for m in range(1, self._level):
            modulus = pi ** m
            if all(self.rho(u) == one for u in units if ((u - 1) / modulus).is_integral()):
                return m
        return self._level

    def alpha(self) -> FieldElem:
        """Frobenius eigenvalue delta(pi) pi^-k on D_cris."""
        return self._pi_value * self._values_field.coerce(self._field.pi ** (-self._weight))


def absolute_value_character(field: LocalField) -> Character:
    return Character.absolute_value(field)


def chi_character(field: LocalField) -> Character:
    return Character.chi(field)


def power_character(field: LocalField, k: int) -> Character:
    return Character.power(field, k)


def unramified_character(field: LocalField, c) -> Character:
    return Character.unramified(field, c)


def enumerate_characters(field: LocalField, level: int, pi_value=1) -> List[Character]:
    """
    All characters of (o_L/pi^level)^x, extended to L^x by delta(pi) = ``pi_value``.

    A unit is written x = omega(xbar) (1 + pi y); the characters are
    omega(xbar)^j zeta_p^(c . ybar) for 0 <= j < q-1 and c in F_p^f (level 2 only).
    """
    if level < 0 or level > MAX_ENUMERATION_LEVEL:
        raise LevelUnsupported(level=level, detail=f"characters are enumerated up to level {MAX_ENUMERATION_LEVEL}")
    if level == 0:
        return [Character(field, pi_value, label="1")]
    values_field = coefficient_field(field, level)
    q, p, f = field.q, field.p, field.f
    units = field.units(level)
    lifts = {field.residue_key(u, 1): teichmuller(u, field, default_digits() + level) for u in units}
    generator = _residue_generator(field, lifts)
    logs = _discrete_logs(field, generator, lifts, q)
    zeta_p = None
    if level == 2:
        closure, zeta = cyclotomic_closure(field, ceil_div(2, field.e))
        zeta_p = values_field.coerce(zeta) ** (p ** (ceil_div(2, field.e) - 1))
    twists = [tuple(c) for c in itertools.product(range(p), repeat=f)] if level == 2 else [()]
    characters = []
    for j in range(q - 1):
        for c in twists:
            table = {}
            for u in units:
                key1 = field.residue_key(u, 1)
                value = values_field.coerce(lifts[generator] ** (logs[key1] * j))
                if c:
                    y = ((u / lifts[key1]) - 1) / field.pi
                    exponent = sum(a * b for a, b in zip(c, field.residue_vector(y.raw))) % p
                    value = value * zeta_p ** exponent
                table[field.residue_key(u, level)] = value
            label = f"omega^{j}" + (f"*psi{list(c)}" if any(c) else "")
            characters.append(Character(field, pi_value, table, level, values_field=values_field, label=label))
    _logger.debug("Enumerated %d characters of level %d over %s", len(characters), level, field.label)
    return characters


def _residue_generator(field: LocalField, lifts: Dict):
    """A residue class whose Teichmuller lift generates mu_(q-1)."""
    q = field.q
    order_needed = q - 1
    for key, w in lifts.items():
        power, order = w, 1
        while not power == 1 and order <= order_needed:
            power, order = power * w, order + 1
        if order == order_needed:
            return key
    raise LevelUnsupported(level=1, detail="no generator of the residue multiplicative group")


def _discrete_logs(field: LocalField, generator, lifts: Dict, q: int) -> Dict:
    w = lifts[generator]
    logs, power = {}, field.one()
    for n in range(q - 1):
        for key, lift in lifts.items():
            if key not in logs and lift == power:
                logs[key] = n
        power = power * w
    return logs


class AdditiveCharacter:
    """
    Additive character of level n: c(x) = zeta^(p^m Tr_{L/Q_p}(x / (pi^n d)) mod p^m), m = ceil(n / e).

    ``d`` generates the different, so the induced psi(x / pi^n) = c(x) has n(psi) = 0.
    """

    def __init__(self, field: LocalField, level: int, scale: Optional[FieldElem] = None):
        self._field = field
        self._level = level
        self._m = ceil_div(level, field.e) if level else 0
        self._values_field, self._zeta = cyclotomic_closure(field, self._m) if self._m else (field, field.one())
        self._different = field.different_generator()
        self._scale = field.one() if scale is None else field.coerce(scale)
        self._denominator = (field.pi ** level * self._different).inverse()

    @classmethod
    def standard(cls, field: LocalField, level: int) -> "AdditiveCharacter":
        return cls(field, level)

    @property
    def field(self) -> LocalField:
        return self._field

    @property
    def level(self) -> int:
        return self._level

    @property
    def zeta_order(self) -> int:
        return self._field.p ** self._m

    @property
    def values_field(self) -> LocalField:
        return self._values_field

    @property
    def different_generator(self) -> FieldElem:
        return self._different

    @property
    def scale(self) -> FieldElem:
        return self._scale

    def scaled(self, b) -> "AdditiveCharacter":
        """x -> c(b x)."""
        return AdditiveCharacter(self._field, self._level, self._scale * self._field.coerce(b))

    def exponent(self, x) -> int:
        x = self._field.coerce(x) * self._scale
        modulus = self.zeta_order
        trace = (x * self._denominator * modulus).trace().to_rational()
        if trace.denominator % self._field.p == 0:
            raise ValueError(f"trace {trace} is not p-integral")
        return trace.numerator * pow(trace.denominator, -1, modulus) % modulus

    def __call__(self, x) -> FieldElem:
        return self._zeta ** self.exponent(x)

    def at_level(self, a: int, x) -> FieldElem:
        """The level-a character x -> c(pi^(n-a) x)."""
        if a > self._level:
            raise ConductorExceedsLevel(conductor=a, level=self._level)
        return self(self._field.coerce(x) * self._field.pi ** (self._level - a))

    def is_additive(self) -> bool:
        residues = self._field.residues(self._level)
        return all(self(x + y) == self(x) * self(y) for x in residues for y in residues)

    def conductor_is_zero(self) -> bool:
        """c is trivial on pi^n o_L and nontrivial on pi^(n-1) o_L / pi^n."""
        if not self._level:
            return True
        pi = self._field.pi
        one = self._values_field.one()
        lower = [x * pi ** (self._level - 1) for x in self._field.residues(1)]
        trivial_on_top = all(self(x * pi ** self._level) == one for x in self._field.residues(1))
        return trivial_on_top and any(not self(x) == one for x in lower)


@dataclass
class EquivariantEps:
    """Gamma-equivariant epsilon: the component at b is epsilon for x -> psi(b x)."""
    level: int
    components: Dict[object, FieldElem] = dc_field(default_factory=dict)
    field: Optional[LocalField] = None

    def component(self, b) -> FieldElem:
        key = self.field.residue_key(self.field.coerce(b), self.level) if self.level else ()
        return self.components[key]

    def __getitem__(self, b) -> FieldElem:
        return self.component(b)


@dataclass(frozen=True)
class Classification:
    kind: str
    index: Optional[int] = None
    de_rham: bool = True
    weight: Optional[int] = None

    def __str__(self):
        body = self.kind if self.index is None else f"{self.kind}({self.index})"
        return body + (f", de Rham weight {self.weight}" if self.de_rham else "")


def conductor(delta: Character) -> int:
    return delta.conductor()


def classify(delta: Character) -> Classification:
    """Membership in Sigma_1 = {x^-i}, Sigma_2 = {x^i chi}, exceptional, or generic."""
    field = delta.field
    if not delta.is_de_rham:
        return Classification("generic", de_rham=False)
    k = delta.weight
    unramified = delta.conductor() == 0
    if unramified and k <= 0 and delta == Character.power(field, k):
        return Classification("sigma1", -k, True, k)
    if unramified and k >= 1 and delta == Character.power(field, k - 1) * Character.chi(field):
        return Classification("sigma2", k - 1, True, k)
    if unramified:
        alpha = delta.alpha()
        if alpha == 1 or alpha == Fraction(1, field.q):
            return Classification("exceptional", None, True, k)
    return Classification("generic", None, True, k)


def weil_character(delta: Character) -> Character:
    """delta_W = delta_lc * unr(pi^-k): value delta_lc(pi) pi^-k at pi, unit part rho."""
    if not delta.is_de_rham:
        raise NotDeRham(detail=f"{delta.label} has a non-integral weight")
    k = delta.weight
    pi_value = delta.pi_value * delta.values_field.coerce(delta.field.pi ** (-2 * k))
    label = f"W({delta.label})" if delta._label else None
    return Character(delta.field, pi_value, delta.table, delta.level, 0, None, delta.values_field, label)


def _gauss_field(delta: Character, psi: AdditiveCharacter) -> LocalField:
    return _larger(delta.values_field, psi.values_field)


def gauss_sum_epsilon(delta: Character, psi: AdditiveCharacter, n_psi: int = 0) -> FieldElem:
    """
    epsilon(delta, psi) = delta(pi)^a q^n sum_{i in (o/pi^a)^x} delta(i)^-1 c_a(i).

    Characters of nonzero weight go through their Weil character.
    """
    if delta.weight or not delta.is_de_rham:
        delta = weil_character(delta)
    delta = delta.reduced()
    a = delta.conductor()
    if a > psi.level:
        raise ConductorExceedsLevel(conductor=a, level=psi.level)
    field = delta.field
    values = _gauss_field(delta, psi)
    total = values.one()
    if a:
        total = values.zero()
        for i in field.units(a):
            total = total + values.coerce(delta.rho(i)).inverse() * values.coerce(psi.at_level(a, i))
    q = Fraction(field.q)
    prefactor = values.coerce(delta.pi_value) ** a * values.coerce(q ** n_psi)
    return prefactor * total


def equivariant_epsilon(delta: Character, psi: AdditiveCharacter, n_psi: int = 0) -> EquivariantEps:
    """Components epsilon(delta, psi(b .)) over unit classes b modulo pi^a."""
    a = (weil_character(delta) if delta.weight else delta).conductor()
    if a > psi.level:
        raise ConductorExceedsLevel(conductor=a, level=psi.level)
    field = delta.field
    components = {}
    for b in field.units(a) if a else [field.one()]:
        key = field.residue_key(b, a) if a else ()
        components[key] = gauss_sum_epsilon(delta, psi.scaled(b), n_psi)
    return EquivariantEps(a, components, field)


def crystalline_factor(delta: Character) -> FieldElem:
    """(1 - q^-1 alpha^-1) / (1 - alpha) for alpha = delta(pi) pi^-k."""
    a = delta.conductor()
    if a:
        raise RamifiedCharacter(conductor=a)
    alpha = delta.alpha()
    if alpha == 1:
        raise ExceptionalPole(detail=f"alpha = 1 for {delta.label}")
    q = Fraction(delta.field.q)
    return (1 - alpha.inverse() * (1 / q)) / (1 - alpha)


def _gamma_star(r: int) -> Fraction:
    if r > 0:
        return Fraction(math.factorial(r - 1))
    return Fraction((-1) ** (-r), math.factorial(-r))


def gamma_factor(weights: Union[Mapping[int, int], Iterable[int]], field: LocalField) -> OmegaScalar:
    """prod_r (Omega^r Gamma*(r))^(-n(r))."""
    counts = Counter(weights) if not isinstance(weights, Mapping) else Counter(dict(weights))
    result = OmegaScalar.const(1, field)
    for r, n in counts.items():
        term = OmegaScalar(field, {r: _gamma_star(r)})
        result = result * term ** (-n)
    return result


def interp_constant(delta: Character, variant: str, psi: Optional[AdditiveCharacter] = None,
                    n_psi: int = 0) -> Union[OmegaScalar, Dict[object, OmegaScalar]]:
    """
    The interpolation constants.

    ``variant="C"`` (k <= 0): ((-Omega)^k / (-k)!) times the inverse equivariant epsilon
    (componentwise, as a dict over unit classes) or the crystalline factor when a = 0.
    ``variant="Cprime"`` (k >= 1): Omega^k (k-1)! times the same factor.
    """
    if not delta.is_de_rham:
        raise NotDeRham(detail=f"{delta.label} has a non-integral weight")
    k = delta.weight
    if variant == "C" and k > 0 or variant == "Cprime" and k < 1 or variant not in ("C", "Cprime"):
        raise WrongVariant(variant=variant, weight=k)
    if variant == "C":
        prefactor = OmegaScalar(delta.field, {k: Fraction((-1) ** (-k), math.factorial(-k))})
    else:
        prefactor = OmegaScalar(delta.field, {k: Fraction(math.factorial(k - 1))})
    a = weil_character(delta).conductor()
    if a == 0:
        factor = crystalline_factor(delta)
        return prefactor.lift(factor.field) * factor
    if psi is None:
        psi = AdditiveCharacter.standard(delta.field, a)
    eps = equivariant_epsilon(delta, psi, n_psi)
    return {b: prefactor.lift(value.field) * value.inverse() for b, value in eps.components.items()}


def check_complementary(delta: Character, other: Character):
    """Raise unless delta * other = chi."""
    product = delta * other
    if not product == Character.chi(delta.field):
        raise CharacterMismatch(detail=f"{delta.label} * {other.label} is not chi")
