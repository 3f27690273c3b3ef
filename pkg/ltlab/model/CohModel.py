# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 22/05/2023
 * Time: 09:12
 *
 * Edited by: eniocc
 * Date: 05/06/2023
 * Time: 11:27
"""
import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ltlab.model.Chareps import Character, check_complementary, classify
from ltlab.model.LubinTate import FormalGroup
from ltlab.model.Padic import FieldElem, OmegaScalar
from ltlab.model.PhiGamma import RankOneModule, residue_pairing
from ltlab.model.Series import Series

_logger = logging.getLogger(__name__)

KINDS = ("Pol", "D")


@dataclass
class Line:
    """A character-isotypic line: Psi acts by ``psi_scalar``, Gamma through ``character`` on units."""
    label: str
    psi_scalar: FieldElem
    character: Character


@dataclass
class CohTable:
    dims: Tuple[int, ...]
    generators: Dict[int, List[str]] = dc_field(default_factory=dict)

    @property
    def euler(self) -> int:
        return euler_characteristic(self)

    def __getitem__(self, i: int) -> int:
        return self.dims[i]

    def as_dict(self) -> dict:
        return {"dims": list(self.dims), "generators": {str(k): v for k, v in self.generators.items()}}


class IsotypicModel:
    """
    Finite (Psi, z)-models.

    ``Pol``: Pol_{<=N}(o_L)(chi^-1 delta) with lines z^k, Psi(z^k e) = pi^(k+1) / (q delta(pi)) z^k e
    and Gamma acting on units through x^(-k-1) delta.
    ``D``: D_N(delta) with lines t^l, Psi(t^l e) = pi^-l delta(pi)^-1 t^l e and Gamma through x^l delta.
    """

    def __init__(self, kind: str, delta: Character, degree_bound: int, lines: Sequence[Line]):
        if kind not in KINDS:
            raise ValueError(f"unknown model kind {kind!r}")
        self._kind = kind
        self._delta = delta
        self._degree_bound = degree_bound
        self._lines = list(lines)

    @classmethod
    def create(cls, kind: str, delta: Character, degree_bound: int, start: int = 0) -> "IsotypicModel":
        if degree_bound < 0:
            raise ValueError(f"degree bound must be non-negative, got {degree_bound}")
        lines = [cls._process_line(kind, delta, k) for k in range(start, degree_bound + 1)]
        return cls(kind, delta, degree_bound, lines)

    @staticmethod
    def _process_line(kind: str, delta: Character, k: int) -> Line:
        field = delta.field
        values = delta.values_field
        pi = values.coerce(field.pi)
        if kind == "Pol":
            scalar = pi ** (k + 1) * Fraction(1, field.q) / delta.pi_value
            return Line(f"z^{k}", scalar, Character.power(field, -k - 1) * delta)
        scalar = (pi ** k * delta.pi_value).inverse()
        return Line(f"t^{k}", scalar, Character.power(field, k) * delta)

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def delta(self) -> Character:
        return self._delta

    @property
    def degree_bound(self) -> int:
        return self._degree_bound

    @property
    def lines(self) -> List[Line]:
        return list(self._lines)

    def __repr__(self):
        return f"IsotypicModel({self._kind}, {self._delta.label}, N={self._degree_bound})"


# ---------------------------------------------------------------------- scalars on lines
def _trivial_on(rho: Character, level: int) -> bool:
    """rho = 1 on 1 + pi^level o_L (level 0 means all of o_L^x)."""
    if not rho.omega_weight() == 0:
        return False
    if rho.level <= level and level > 0:
        return True
    field = rho.field
    one = rho.values_field.one()
    units = field.units(max(rho.level, 1))
    if level == 0:
        return all(rho.rho(u) == one for u in units)
    modulus = field.pi ** level
    return all(rho.rho(u) == one for u in units if ((u - 1) / modulus).is_integral())


def zn_scalar_is_zero(rho: Character, n: int) -> bool:
    """
    Whether z_n acts by zero on the rho-isotypic part.

    z_n generates the augmentation ideal of D(Gamma_n), so its scalar on a line vanishes exactly
    when rho is trivial on Gamma_n = 1 + pi^n o_L. The scalar itself is the coordinate of the
    character on the character variety, of the shape exp_LT(omega pi^n / Omega) - 1 for a locally
    analytic weight omega; only its vanishing enters the tables.
    """
    if n < 1:
        raise ValueError(f"level must be positive, got {n}")
    return _trivial_on(rho, n)


def _line_kills(line: Line, n: Optional[int]) -> Tuple[bool, bool]:
    psi_zero = line.psi_scalar == 1
    z_zero = _trivial_on(line.character, 0) if n is None else zn_scalar_is_zero(line.character, n)
    return psi_zero, z_zero


def psi_only_cohomology(model: IsotypicModel) -> CohTable:
    """(h0, h1) of the complex Psi - 1 on the model."""
    generators: Dict[int, List[str]] = {0: [], 1: []}
    for line in model.lines:
        if line.psi_scalar == 1:
            generators[0].append(line.label)
            generators[1].append(line.label)
    return CohTable((len(generators[0]), len(generators[1])), generators)


def model_cohomology(kind: str, delta: Character, degree_bound: int, n: Optional[int] = None,
                     with_z: bool = True) -> CohTable:
    """
    Cohomology of the (Psi - 1, z) Koszul complex on a finite model.

    Every line is isotypic, so both operators act by scalars and a line contributes
    (1, 2, 1) when both scalars vanish and nothing otherwise. With ``n`` the complex is taken
    for z_n over Gamma_n; without it over Gamma_L, where only lines whose character is trivial
    on all of o_L^x survive.
    """
    model = IsotypicModel.create(kind, delta, degree_bound)
    if not with_z:
        return psi_only_cohomology(model)
    generators: Dict[int, List[str]] = {0: [], 1: [], 2: []}
    for line in model.lines:
        psi_zero, z_zero = _line_kills(line, n)
        if psi_zero and z_zero:
            generators[0].append(line.label)
            generators[1].extend([f"{line.label}.psi", f"{line.label}.z"])
            generators[2].append(line.label)
    _logger.debug("model %s(%s), N=%d: %s", kind, delta.label, degree_bound, generators)
    return CohTable(tuple(len(generators[i]) for i in range(3)), generators)


def closed_form_table(kind: str, delta: Character, degree_bound: int, with_z: bool = True) -> CohTable:
    """
    The closed forms for the finite models.

    Pol: H_Psi is K z^k when delta(pi) = pi^(k+1) / q, and survives z exactly when delta = x^k chi.
    D: H_Psi is K t^k when delta(pi) = pi^-k, and survives z exactly when delta = x^-k.
    """
    field = delta.field
    values = delta.values_field
    pi = values.coerce(field.pi)
    for k in range(degree_bound + 1):
        if kind == "Pol":
            target = pi ** (k + 1) * Fraction(1, field.q)
            reference = Character.power(field, k) * Character.chi(field)
            label = f"z^{k}"
        else:
            target = pi ** (-k)
            reference = Character.power(field, -k)
            label = f"t^{k}"
        if not delta.pi_value == target:
            continue
        if not with_z:
            return CohTable((1, 1), {0: [label], 1: [label]})
        if delta == reference:
            return CohTable((1, 2, 1), {0: [label], 1: [f"{label}.psi", f"{label}.z"], 2: [label]})
        break
    return CohTable((0, 0, 0) if with_z else (0, 0), {})


def chenevier_check(delta: Character, degree_bound: int, extra: int = 8) -> bool:
    """
    Psi - 1 is invertible on the Pol-lines above N once N > v_pi(chi^-1 delta (pi)).

    Checked line by line on z^(N+1) .. z^(N+extra).
    """
    field = delta.field
    ratio = delta.values_field.e // field.e
    threshold = Fraction((delta.pi_value * Fraction(field.q) / delta.values_field.coerce(field.pi)).valuation(), ratio)
    if degree_bound <= threshold:
        raise ValueError(f"N = {degree_bound} must exceed {threshold}")
    model = IsotypicModel.create("Pol", delta, degree_bound + extra, start=degree_bound + 1)
    return all(not (line.psi_scalar - 1).is_zero() for line in model.lines)


# ---------------------------------------------------------------------- oracle tables
def expected_dims(delta: Character, module: str = "R") -> CohTable:
    """
    Dimensions of the analytic (phi, D(Gamma_L))-cohomology of rank-one modules.

    ``R``: (1, 2, 0) on Sigma_1, (0, 2, 1) on Sigma_2, (0, 1, 0) otherwise.
    ``R+``: (1, 2, 1) on Sigma_1, zero otherwise.
    ``LA``: LA(o_L)(delta) gives (0, 2, 1) when delta^-1 is in Sigma_1, (0, 1, 0) otherwise.
    """
    if module == "R":
        kind = classify(delta).kind
        dims = {"sigma1": (1, 2, 0), "sigma2": (0, 2, 1)}.get(kind, (0, 1, 0))
    elif module == "R+":
        dims = (1, 2, 1) if classify(delta).kind == "sigma1" else (0, 0, 0)
    elif module == "LA":
        dims = (0, 2, 1) if classify(delta.inverse()).kind == "sigma1" else (0, 1, 0)
    else:
        raise ValueError(f"unknown module {module!r}")
    return CohTable(dims)


def duality_mirror_check(delta: Character) -> bool:
    """h^i(delta) == h^(2-i)(chi delta^-1) for i = 0, 1, 2."""
    mine = expected_dims(delta)
    dual = expected_dims(Character.chi(delta.field) * delta.inverse())
    return all(mine[i] == dual[2 - i] for i in range(3))


def euler_characteristic(table: CohTable) -> int:
    return sum((-1) ** i * h for i, h in enumerate(table.dims))


def euler_poincare_check(table: CohTable, index: int = 1, rank: int = 1) -> bool:
    """|chi| = [Gamma_L : Gamma_n] rk."""
    return abs(euler_characteristic(table)) == index * rank


# ---------------------------------------------------------------------- pairings
@dataclass
class ScalarModel:
    """A line R(delta) e on which phi, z and lambda act through cohomology by scalars."""
    module: RankOneModule
    phi_scalar: object = 1
    lambda_scalar: object = -1

    @property
    def delta(self) -> Character:
        return self.module.delta


def pairing_constant(model: ScalarModel, dual: ScalarModel) -> OmegaScalar:
    """r = Res(Z^-1 e_delta . e_dual dt_LT)."""
    field = model.module.group.field
    left = model.module.element(Series.monomial(field, -1))
    right = dual.module.basis()
    return residue_pairing(left, right)


class KoszulPairing:
    """
    Chain-level pairings between the Koszul complexes of M and its Tate dual on scalar models.

    (1, 1): <(m, n), (f, g)> = -Res(phi(g) m + (lambda^iota f) n);
    (2, 0): <m, n~> = -Res(n~ lambda^iota phi(m));
    (0, 2): <m, n~> = Res(n~ m).
    """

    def __init__(self, model: ScalarModel, dual: ScalarModel):
        check_complementary(model.delta, dual.delta)
        self._model = model
        self._dual = dual
        self._r = pairing_constant(model, dual)

    @property
    def constant(self) -> OmegaScalar:
        return self._r

    def _scalar(self, x) -> OmegaScalar:
        field = self._r.field
        if isinstance(x, OmegaScalar):
            return x
        if isinstance(x, FieldElem):
            return OmegaScalar.const(x)
        return OmegaScalar.const(field.coerce(x), field)

    def degree_11(self, x: Sequence, y: Sequence) -> OmegaScalar:
        m, n = (self._scalar(c) for c in x)
        f, g = (self._scalar(c) for c in y)
        phi = self._scalar(self._model.phi_scalar)
        lam_iota = self._scalar(self._dual.lambda_scalar).inverse()
        return -(self._r * (phi * g * m + lam_iota * f * n))

    def degree_20(self, m, n) -> OmegaScalar:
        phi = self._scalar(self._model.phi_scalar)
        lam_iota = self._scalar(self._model.lambda_scalar).inverse()
        return -(self._r * lam_iota * phi * self._scalar(m) * self._scalar(n))

    def degree_02(self, m, n) -> OmegaScalar:
        return self._r * self._scalar(m) * self._scalar(n)

    def matrix(self) -> List[List[OmegaScalar]]:
        """Gram matrix of the (1, 1) pairing on the bases (1, 0), (0, 1)."""
        return [[self.degree_11(e, u) for u in ((1, 0), (0, 1))] for e in ((1, 0), (0, 1))]

    def reversed(self) -> "KoszulPairing":
        return KoszulPairing(self._dual, self._model)


def koszul_pairing_scalar(model: ScalarModel, dual: ScalarModel) -> List[List[OmegaScalar]]:
    return KoszulPairing(model, dual).matrix()


def lambda_scalar_on(rho: Character) -> int:
    """lambda = -1 + (terms divisible by z): its scalar on a line where z acts by zero."""
    if not _trivial_on(rho, 0):
        raise ValueError(f"lambda has no closed scalar on the {rho.label}-line")
    return -1


def grid_characters(group: FormalGroup, degree_bound: int = 3) -> List[Character]:
    """Characters covering every branch of the model tables."""
    field = group.field
    chi = Character.chi(field)
    grid = []
    for k in range(degree_bound + 2):
        grid.append(Character.power(field, k) * chi)
        grid.append(Character.power(field, -k))
        grid.append(Character.unramified(field, field.pi ** (k + 1) * Fraction(1, field.q)))
        grid.append(Character.unramified(field, field.pi ** (-k)))
        grid.append(Character.power(field, k + 1))
        grid.append(Character.unramified(field, 1 + field.p) * Character.power(field, -k))
    return grid
