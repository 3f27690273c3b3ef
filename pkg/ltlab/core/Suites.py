# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 11/06/2023
 * Time: 14:12
 *
 * Edited by: eniocc
 * Date: 17/06/2023
 * Time: 23:31
"""
import logging
import zlib
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from ltlab.core.Config import Config
from ltlab.core.Errors import (FrobeniusUnsupported, LevelUnsupported, LtlabError, RamifiedCharacter,
                               TruncationTooShort)
from ltlab.core.Report import CheckRecord
from ltlab.model.Chareps import (AdditiveCharacter, Character, enumerate_characters, equivariant_epsilon,
                                 gamma_factor, gauss_sum_epsilon)
from ltlab.model.CohModel import (KINDS, KoszulPairing, ScalarModel, chenevier_check, closed_form_table,
                                  duality_mirror_check, euler_poincare_check, expected_dims, grid_characters,
                                  model_cohomology)
from ltlab.model.Dist import (Measure, amice_eta, amice_series, convolve, coset_restriction_via_translates,
                              derivative_at, differentiate, from_moments, mellin, moments, multiply_x,
                              restrict_coset, restrict_units, twist, units_projector)
from ltlab.model.LubinTate import EtaSum, FormalGroup
from ltlab.model.Padic import (LocalField, OmegaScalar, padic_exp, padic_log, teichmuller, unit_log,
                               working_digits)
from ltlab.model.PhiGamma import RankOneModule, phi, psi, psi_eta_span
from ltlab.model.Recip import (CheckResult, coleman_checks, descent_grid, exceptional_residue, lhs_trace_theta_iota,
                               lhs_via_iota, log_coleman_dirac, random_measure, scalar_constants_suite,
                               twist_consistency, verify_descent)
from ltlab.model.Series import Series

_logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 50
DEFAULT_MEASURES = 20
GUARD_DIGITS = 10

SKIPPABLE = (LevelUnsupported, FrobeniusUnsupported, RamifiedCharacter, TruncationTooShort)


@dataclass
class Check:
    """A deferred comparison: ``compute`` returns (lhs, rhs) or a finished CheckRecord."""
    id: str
    ref: str
    compute: Callable[[], Any]


@dataclass
class SuiteContext:
    config: Config
    field: LocalField
    group: FormalGroup
    samples: int = DEFAULT_SAMPLES
    measures: int = DEFAULT_MEASURES
    _rngs: Dict[str, np.random.Generator] = dc_field(default_factory=dict, repr=False)

    @classmethod
    def create_context_from_config(cls, config: Config, samples: int = DEFAULT_SAMPLES,
                                   measures: int = DEFAULT_MEASURES) -> "SuiteContext":
        field = config.build_field()
        return cls(config, field, config.build_group(field), samples, measures)

    @property
    def precision(self) -> Dict[str, int]:
        c = self.config
        return {"padic_digits": c.padic_digits, "series_order": c.series_order, "t_order": c.t_order,
                "moment_horizon": c.moment_horizon}

    @property
    def order(self) -> int:
        return self.config.series_order

    @property
    def level(self) -> int:
        return min(self.config.level, 2)

    def rng(self, suite: str) -> np.random.Generator:
        """One generator per suite, seeded from the config seed and the suite name."""
        if suite not in self._rngs:
            self._rngs[suite] = np.random.default_rng([self.config.seed, zlib.crc32(suite.encode())])
        return self._rngs[suite]


# ---------------------------------------------------------------------- random inputs
def _random_ints(rng: np.random.Generator, size: int, low: int = -5, high: int = 6) -> List[int]:
    return [int(v) for v in rng.integers(low, high, size=size)]


def random_polynomial(rng: np.random.Generator, field: LocalField, degree: int, start: int = 0,
                      unit_constant: bool = False) -> Series:
    coeffs = dict(enumerate(_random_ints(rng, degree - start + 1), start=start))
    if unit_constant:
        coeffs[0] = 1 + field.p * int(rng.integers(-3, 4))
    return Series(field, coeffs)


def random_unit(rng: np.random.Generator, p: int, bound: int = 50) -> int:
    while True:
        a = int(rng.integers(1, bound))
        if a % p:
            return a


def random_eta_sum(rng: np.random.Generator, group: FormalGroup, terms: int = 3) -> EtaSum:
    points = group.field.residues(2)
    picks = rng.choice(len(points), size=terms, replace=False)
    return EtaSum(group, {points[int(i)]: c for i, c in zip(picks, _random_ints(rng, terms, 1, 6))})


def _from_result(suite: str, ref: str, result: CheckResult) -> Check:
    def compute():
        status = "pass" if result.passed else "fail"
        return CheckRecord(f"{suite}.{result.name}", ref, status, result.values or None, None,
                           reason=result.detail or None)
    return Check(f"{suite}.{result.name}", ref, compute)


# ---------------------------------------------------------------------- suites
def suite_padic(ctx: SuiteContext) -> List[Check]:
    field, rng = ctx.field, ctx.rng("padic")
    p, prec = field.p, ctx.config.padic_digits
    checks = []
    for u in field.units(1):
        def teich(u=u):
            omega = teichmuller(u, field, prec)
            return omega ** field.q, omega
        checks.append(Check(f"padic.teichmuller[{u!r}]", "omega(x)^q = omega(x)", teich))
        checks.append(Check(f"padic.unit_log_teichmuller[{u!r}]", "log omega(x) = 0",
                            lambda u=u: (unit_log(teichmuller(u, field, prec), prec), field.zero())))
    for i in range(ctx.samples // 5 or 1):
        a = field.coerce(1 + p ** 2 * int(rng.integers(1, 1000)))
        b = field.coerce(1 + p ** 2 * int(rng.integers(1, 1000)))
        checks.append(Check(f"padic.exp_log[{i}]", "exp(log(1 + y)) = 1 + y",
                            lambda a=a: (padic_exp(padic_log(a, prec), prec), a.with_prec(prec))))
        checks.append(Check(f"padic.log_product[{i}]", "log(ab) = log(a) + log(b)",
                            lambda a=a, b=b: (padic_log(a * b, prec), padic_log(a, prec) + padic_log(b, prec))))
    checks.append(Check("padic.trace_one", "Tr(1) = [L:Q_p]",
                        lambda: (field.trace(field.one()), field.absolute_degree)))
    checks.append(Check("padic.residue_count", "#o/pi^2 = q^2",
                        lambda: (len(field.residues(2)), field.q ** 2)))
    checks.append(Check("padic.unit_count", "#(o/pi^2)^x = (q - 1) q",
                        lambda: (len(field.units(2)), (field.q - 1) * field.q)))
    return checks


def _group_law_checks(ctx: SuiteContext) -> List[Check]:
    group, field = ctx.group, ctx.field
    degree = min(ctx.order, 13)
    checks = []
    if group.variant == "special" and field.p == 2 and field.base is None:
        def closed_form():
            law = group.group_law(degree)
            x, y = (v.truncate(degree) for v in law.variables(field, 2, degree))
            return law, x + y + x * y
        checks.append(Check("series.group_law_closed_form", "F(X, Y) = X + Y + XY", closed_form))

    def commutative():
        law = group.group_law(min(degree, 8))
        x, y = law.variables(field, 2, law.degree)
        return law.substitute([y, x]), law
    checks.append(Check("series.group_law_commutative", "F(X, Y) = F(Y, X)", commutative))
    return checks


def suite_series(ctx: SuiteContext) -> List[Check]:
    field, rng, n = ctx.field, ctx.rng("series"), ctx.order
    checks = _group_law_checks(ctx)
    for i in range(ctx.samples // 5 or 1):
        f = random_polynomial(rng, field, 4, unit_constant=True).truncate(n)
        checks.append(Check(f"series.inverse[{i}]", "f f^-1 = 1",
                            lambda f=f: (f * f.inverse(trunc=n), Series.const(1, field, trunc=n))))
        g = (Series.variable(field) + random_polynomial(rng, field, 4, start=2).scale(field.p)).truncate(n)
        checks.append(Check(f"series.reversion[{i}]", "f(f^-1(Z)) = Z",
                            lambda g=g: (g.compose(g.reversion()), Series.variable(field).truncate(n))))
    return checks


def suite_identities(ctx: SuiteContext) -> List[Check]:
    group, field, rng = ctx.group, ctx.field, ctx.rng("identities")
    n, q, pi = ctx.order, ctx.group.q, ctx.group.pi
    module = RankOneModule(group)
    checks = []
    for i in range(ctx.samples):
        f = random_polynomial(rng, field, 3)
        g = random_polynomial(rng, field, 3)
        a = random_unit(rng, field.p)
        m = module.element(f)
        checks.append(Check(f"identities.psi_phi[{i}]", "psi o phi = (q / pi) id",
                            lambda m=m: (psi(phi(m)), m.scale(pi.inverse() * q))))

        def projection(f=f, g=g):
            image = psi(module.element(phi(module.element(f)).coefficient * g))
            return image, module.element(f * psi(module.element(g)).coefficient)
        checks.append(Check(f"identities.projection[{i}]", "psi(phi(f) g) = f psi(g)", projection))

        def partial_phi(f=f):
            frobenius = group.frobenius
            lhs = group.invariant_derivative(f.compose(frobenius), n)
            rhs = group.invariant_derivative(f, n).compose(frobenius).scale(pi)
            return lhs, rhs
        checks.append(Check(f"identities.partial_phi[{i}]", "d o phi = pi phi o d", partial_phi))

        def partial_gamma(f=f, a=a):
            endo = group.endomorphism(a, n)
            lhs = group.invariant_derivative(f.compose(endo), n)
            rhs = group.invariant_derivative(f, n).compose(endo).scale(a)
            return lhs, rhs
        checks.append(Check(f"identities.partial_gamma[{i}]", "d o gamma = chi(gamma) gamma o d", partial_gamma))

        def log_endo(a=a):
            log = group.log_lt(n)
            return log.compose(group.endomorphism(a, n)), log.scale(a)
        checks.append(Check(f"identities.log_endomorphism[{i}]", "log_LT([a](Z)) = a log_LT(Z)", log_endo))

        def g_endo(a=a):
            g, endo = group.g_lt(n), group.endomorphism(a, n)
            return g.scale(a), g.compose(endo) * endo.derivative()
        checks.append(Check(f"identities.g_endomorphism[{i}]", "a g_LT = g_LT([a]) [a]'", g_endo))

        e = random_eta_sum(rng, group)
        checks.append(Check(f"identities.psi_capital_phi[{i}]", "Psi o phi = id on eta-sums",
                            lambda e=e: (e.phi().psi_capital(), e)))
    return checks


def suite_residues(ctx: SuiteContext) -> List[Check]:
    group, field, rng = ctx.group, ctx.field, ctx.rng("residues")
    q = group.q
    checks = []
    try:
        for result in coleman_checks(group):
            checks.append(_from_result("residues", "Res(dg/g dt_LT) = 1; Psi((1+Z)/Z) = (pi/q)(1+Z)/Z", result))
    except LtlabError as e:
        checks.append(_failed_check("residues.coleman", "Res(dg/g dt_LT) = 1", e, ctx))
    for i in range(ctx.samples):
        f = random_polynomial(rng, field, 3)
        checks.append(Check(f"residues.exceptional[{i}]", "Res((phi(f)/q - f) g_LT/t_LT) = -(q-1)/q f(0)",
                            lambda f=f: (exceptional_residue(f, group, ctx.order),
                                         f.constant_term() * Fraction(1 - q, q))))
    for i in range(2 * ctx.samples):
        f = random_polynomial(rng, field, 3, start=-3)
        checks.append(Check(f"residues.derivative[{i}]", "Res(f' dZ) = 0",
                            lambda f=f: (f.derivative().residue(), 0)))
    return checks


def _eps_level_checks(field: LocalField, level: int) -> List[Check]:
    psi_ = AdditiveCharacter.standard(field, level)
    absolute = Character.absolute_value(field)
    minus_one = field.coerce(-1)
    q = field.q
    checks = [Check(f"eps.additive_level[{level}]", "n(psi) = 0", lambda: (psi_.conductor_is_zero(), True))]
    characters = enumerate_characters(field, level)
    checks.append(Check(f"eps.count[{level}]", "#characters of (o/pi^n)^x = (q-1) q^(n-1)",
                        lambda: (len(characters), (q - 1) * q ** (level - 1))))
    for index, delta in enumerate(characters):
        def duality(delta=delta):
            lhs = gauss_sum_epsilon(delta, psi_) * gauss_sum_epsilon(delta.inverse() * absolute, psi_)
            return lhs, delta.on_unit(minus_one)
        checks.append(Check(f"eps.duality[{level}][{index}]", "eps(delta) eps(delta^-1 |.|) = delta(-1) q^n(psi)",
                            duality))

        def absolute_shift(delta=delta):
            a = delta.conductor()
            lhs = gauss_sum_epsilon(delta.inverse() * absolute, psi_)
            return lhs, gauss_sum_epsilon(delta.inverse(), psi_) * Fraction(1, q ** a)
        checks.append(Check(f"eps.absolute_shift[{level}][{index}]",
                            "eps(delta^-1 |.|) = q^(-a - n(psi)) eps(delta^-1)", absolute_shift))
        for b in field.units(level):
            def equivariance(delta=delta, b=b):
                eps = equivariant_epsilon(delta, psi_)
                return eps.component(b), delta.on_unit(b) * gauss_sum_epsilon(delta, psi_)
            checks.append(Check(f"eps.equivariant[{level}][{index}][{b!r}]",
                                "eps(delta, psi(b .)) = delta_W(b) eps(delta, psi)", equivariance))
        if level == 1 and field.p != 2 and delta.conductor() == 1 and (delta ** 2) == Character.trivial(field):
            checks.append(Check(f"eps.quadratic[{index}]", "G(delta)^2 = delta(-1) q",
                                lambda delta=delta: (gauss_sum_epsilon(delta, psi_) ** 2,
                                                     delta.on_unit(minus_one) * q)))
    return checks


def suite_eps(ctx: SuiteContext) -> List[Check]:
    checks = []
    for level in range(1, ctx.level + 1):
        checks.extend(_eps_level_checks(ctx.field, level))
    return checks


def _generic_characters(ctx: SuiteContext, count: int) -> List[Character]:
    field, rng = ctx.field, ctx.rng("coh.generic")
    result = []
    for _ in range(count):
        c = 1 + field.p * int(rng.integers(1, 20))
        k = int(rng.integers(-4, 5))
        result.append(Character.unramified(field, c) * Character.power(field, k))
    return result


def suite_coh(ctx: SuiteContext) -> List[Check]:
    group, field = ctx.group, ctx.field
    chi = Character.chi(field)
    bound = 3
    checks = []
    for index, delta in enumerate(grid_characters(group, bound)):
        for kind in KINDS:
            for with_z in (False, True):
                tag = "psi_z" if with_z else "psi"
                checks.append(Check(f"coh.model[{kind}][{tag}][{index}]", "finite model tables",
                                    lambda delta=delta, kind=kind, with_z=with_z: (
                                        model_cohomology(kind, delta, bound, with_z=with_z).dims,
                                        closed_form_table(kind, delta, bound, with_z).dims)))
    for i in range(6):
        sigma1 = Character.power(field, -i)
        sigma2 = Character.power(field, i) * chi
        checks.append(Check(f"coh.expected_sigma1[{i}]", "dims on Sigma_1",
                            lambda d=sigma1: (expected_dims(d).dims, (1, 2, 0))))
        checks.append(Check(f"coh.expected_sigma2[{i}]", "dims on Sigma_2",
                            lambda d=sigma2: (expected_dims(d).dims, (0, 2, 1))))
        for name, delta in (("sigma1", sigma1), ("sigma2", sigma2)):
            checks.append(Check(f"coh.mirror[{name}][{i}]", "h^i(delta) = h^(2-i)(chi delta^-1)",
                                lambda d=delta: (duality_mirror_check(d), True)))
            checks.append(Check(f"coh.euler[{name}][{i}]", "|Euler characteristic| = 1",
                                lambda d=delta: (euler_poincare_check(expected_dims(d)), True)))
    for i, delta in enumerate(_generic_characters(ctx, 20)):
        checks.append(Check(f"coh.mirror[generic][{i}]", "h^i(delta) = h^(2-i)(chi delta^-1)",
                            lambda d=delta: (duality_mirror_check(d), True)))
        checks.append(Check(f"coh.euler[generic][{i}]", "|Euler characteristic| = 1",
                            lambda d=delta: (euler_poincare_check(expected_dims(d)), True)))
    for k in range(4):
        delta = Character.power(field, k) * chi
        checks.append(Check(f"coh.chenevier[{k}]", "Psi - 1 invertible above the slope bound",
                            lambda d=delta, k=k: (chenevier_check(d, k + 2), True)))

    def pairing_constant():
        pairing = KoszulPairing(ScalarModel(RankOneModule(group)), ScalarModel(RankOneModule(group, chi)))
        return pairing.constant, 1
    checks.append(Check("coh.pairing_constant", "Res(Z^-1 dt_LT) = 1", pairing_constant))
    rng = ctx.rng("coh")
    for i in range(5):
        x, y = tuple(_random_ints(rng, 2)), tuple(_random_ints(rng, 2))

        def antisymmetry(x=x, y=y):
            pairing = KoszulPairing(ScalarModel(RankOneModule(group)), ScalarModel(RankOneModule(group, chi)))
            return pairing.degree_11(x, y), -pairing.reversed().degree_11(y, x)
        checks.append(Check(f"coh.pairing_antisymmetry[{i}]", "<x, y> = -<y, x> in degree (1, 1)", antisymmetry))
    return checks


def suite_amice(ctx: SuiteContext) -> List[Check]:
    group, field, rng = ctx.group, ctx.field, ctx.rng("amice")
    omega = OmegaScalar.omega(field)
    x_character = Character.power(field, 1)
    horizon = ctx.config.moment_horizon
    levels = [1] if ctx.level == 1 else [1, 2]
    checks = []
    for level in levels:
        count = len(field.residues(1)) if level == 1 else ctx.measures
        for i in range(count):
            if level == 1:
                mu = Measure.dirac(group, field.residues(1)[i], 1)
                lam = random_measure(group, 1, int(rng.integers(0, 2 ** 31)))
            else:
                mu = random_measure(group, level, int(rng.integers(0, 2 ** 31)))
                lam = random_measure(group, level, int(rng.integers(0, 2 ** 31)))
            tag = f"[{level}][{i}]"
            checks.append(Check(f"amice.convolution{tag}", "A_(lam * mu) = A_lam A_mu",
                                lambda lam=lam, mu=mu: (amice_eta(convolve(lam, mu)),
                                                        amice_eta(lam) * amice_eta(mu))))
            checks.append(Check(f"amice.units_restriction{tag}", "A_(Res_(o^x) mu) = (1 - phi Psi) A_mu",
                                lambda mu=mu: (amice_eta(restrict_units(mu)), units_projector(amice_eta(mu)))))
            checks.append(Check(f"amice.twist_x{tag}", "A_(Tw_x mu) = Omega^-1 d A_mu on o^x",
                                lambda mu=mu: (amice_eta(twist(restrict_units(mu), x_character)),
                                               amice_eta(restrict_units(mu)).derivative().scale(omega.inverse()))))
            checks.append(Check(f"amice.derivative{tag}", "d A_mu = A_(Omega x mu)",
                                lambda mu=mu: (amice_eta(mu).derivative(), amice_eta(multiply_x(mu)).scale(omega))))

            def mellin_psi(mu=mu):
                delta = Character.unramified(field, field.p + 1)
                image = psi_eta_span(mellin(restrict_units(mu), delta))
                return image.coefficient, EtaSum(group)
            checks.append(Check(f"amice.mellin_psi{tag}", "psi(Mellin(mu)) = 0", mellin_psi))
            if level == 1 and i < 2:
                def round_trip(mu=mu):
                    values = moments(mu, horizon)
                    series = amice_series(from_moments(group, values), horizon + 1)
                    return Measure.create_from_amice(group, series, horizon), from_moments(group, values)
                checks.append(Check(f"amice.moment_round_trip{tag}", "moments of A_mu recover mu", round_trip))

                def differentiated(mu=mu):
                    nu = from_moments(group, moments(mu, horizon))
                    lhs = amice_series(differentiate(nu), horizon + 1)
                    rhs = (group.log_lt(horizon + 1) * amice_series(nu, horizon + 1)).scale(omega)
                    return lhs, rhs.truncate(horizon + 1)
                checks.append(Check(f"amice.differentiate{tag}", "A_(d mu) = Omega t_LT A_mu", differentiated))
            if group.variant == "cyclotomic" and level == 1:
                b = i % field.p
                checks.append(Check(f"amice.coset_translates{tag}",
                                    "A_(Res_(b + p Z_p) mu) via torsion translates",
                                    lambda mu=lam, b=b: (
                                        coset_restriction_via_translates(mu, b, 1),
                                        amice_eta(restrict_coset(mu, b, 1)).to_polynomial())))
    return checks


def suite_descent(ctx: SuiteContext) -> List[Check]:
    group, field = ctx.group, ctx.field
    ref = "(q-1)/q Tr theta iota_n (A_mu e_delta) = delta(-1) C(delta) int_(o^x) delta^-1 mu"
    if field.p == 2:
        def excluded():
            raise LevelUnsupported(level=ctx.level, detail="the descent grid excludes p = 2")
        return [Check("descent.grid", ref, excluded)]
    checks = []
    measures = ctx.measures
    for level in range(1, ctx.level + 1):
        cases = descent_grid(group, level, measures, ctx.config.seed)
        for index, case in enumerate(cases):
            def compare(case=case):
                report = verify_descent([case])[0]
                return report.lhs, report.rhs
            checks.append(Check(f"descent.identity[{level}][{index}]", ref, compare))
            if group.variant == "cyclotomic" and level == 1 and case.delta.conductor() == 1 and index < 4:
                checks.append(Check(f"descent.iota_bridge[{index}]", "theta o iota_1 bridge",
                                    lambda case=case: (lhs_via_iota(case.measure, case.delta, group),
                                                       lhs_trace_theta_iota(case.measure, case.delta))))
    return checks


def _gamma_duality_expected(k: int, field: LocalField) -> OmegaScalar:
    sign = (-1) ** (k - 1) if k >= 1 else (-1) ** (-k)
    return OmegaScalar(field, {-1: field.coerce(sign)})


def suite_constants(ctx: SuiteContext) -> List[Check]:
    group, field = ctx.group, ctx.field
    checks = [_from_result("constants", "C_g C_Tr = q/(q-1); theta-bar = -Omega; level shifts", result)
              for result in scalar_constants_suite(group, 4)]
    checks.append(Check("constants.gamma_chi", "Gamma(R(chi)) = Omega^-1",
                        lambda: (gamma_factor([1], field), OmegaScalar.omega(field, -1))))
    for k in range(-4, 5):
        checks.append(Check(f"constants.gamma_duality[{k}]", "Gamma({k}) Gamma({1-k}) = +-Omega^-1",
                            lambda k=k: (gamma_factor([k], field) * gamma_factor([1 - k], field),
                                         _gamma_duality_expected(k, field))))
    for c in (field.p, 3 * field.p + 2):
        delta = Character.unramified(field, c)
        checks.append(Check(f"constants.twist_consistency[{c}]", "C'(x delta) = Omega C(delta)",
                            lambda delta=delta: (twist_consistency(delta), True)))
    rng = ctx.rng("constants")
    for i in range(5):
        points = {field.coerce(1 + field.p * int(rng.integers(1, 30))): int(rng.integers(-3, 4)) for _ in range(3)}

        def coleman(points=points):
            lam = Measure.create_from_points(group, 1, points)
            return derivative_at(lam, "one"), OmegaScalar.const(log_coleman_dirac(points, group))
        checks.append(Check(f"constants.log_coleman[{i}]", "L'_lam(1) = sum a_i log chi(gamma_i)", coleman))
    return checks


GUARDED_SUITES = ("series", "identities", "residues", "amice", "descent")


def _guarded(ctx: SuiteContext) -> SuiteContext:
    config = ctx.config.replace(padic_digits=ctx.config.padic_digits + GUARD_DIGITS)
    return SuiteContext(config, ctx.field, ctx.group, ctx.samples, ctx.measures)


def _same_value(a, b) -> bool:
    # rendered values carry their O(pi^n) tail, so only their shape is compared
    if isinstance(a, str) or isinstance(b, str):
        return isinstance(a, str) and isinstance(b, str)
    if isinstance(a, dict) or isinstance(b, dict):
        return isinstance(a, dict) and isinstance(b, dict) and a.keys() == b.keys()
    try:
        return bool(a == b)
    except Exception as e:
        _logger.debug("guard comparison raised %s", e)
        return False


def _run_quietly(ctx: SuiteContext, suite: str) -> List[CheckRecord]:
    with working_digits(ctx.config.padic_digits):
        return [run_check(c, ctx.config.allow_skip, ctx.precision) for c in collect_checks(ctx, [suite])]


def records_agree(base: List[CheckRecord], guarded: List[CheckRecord]) -> List[str]:
    """Ids whose status or values change once the guard digits are dropped; empty when the runs agree."""
    guarded_by_id = {record.id: record for record in guarded}
    base_ids = {record.id for record in base}
    differing = [record.id for record in guarded if record.id not in base_ids]
    for record in base:
        other = guarded_by_id.get(record.id)
        if other is None or other.status != record.status or not (_same_value(record.lhs, other.lhs)
                                                                   and _same_value(record.rhs, other.rhs)):
            differing.append(record.id)
    return differing


def suite_precision(ctx: SuiteContext) -> List[Check]:
    field, rng = ctx.field, ctx.rng("precision")
    p, prec = field.p, ctx.config.padic_digits
    allow_skip = ctx.config.allow_skip
    checks = []
    for i in range(ctx.samples // 5 or 1):
        x = field.coerce(1 + p ** 2 * int(rng.integers(1, 1000)))

        def guarded_log(x=x):
            return padic_log(x, prec + GUARD_DIGITS).with_prec(prec).raw, padic_log(x, prec).raw
        checks.append(Check(f"precision.log_guard[{i}]", "answers stable under +10 guard digits", guarded_log))
    for u in field.units(1):
        checks.append(Check(f"precision.teichmuller_guard[{u!r}]", "answers stable under +10 guard digits",
                            lambda u=u: (teichmuller(u, field, prec + GUARD_DIGITS).with_prec(prec).raw,
                                         teichmuller(u, field, prec).raw)))
    for suite in GUARDED_SUITES:
        def rerun(suite=suite):
            base = _run_quietly(_fresh(ctx), suite)
            guarded = _run_quietly(_guarded(ctx), suite)
            differing = records_agree(base, guarded)
            status = "fail" if differing else "pass"
            reason = f"differs at +{GUARD_DIGITS} digits: {', '.join(differing[:10])}" if differing else None
            return CheckRecord(f"precision.guard[{suite}]", "records stable under +10 guard digits", status,
                               len(base) - len(differing), len(base), reason=reason)
        checks.append(Check(f"precision.guard[{suite}]", "records stable under +10 guard digits", rerun))

    def determinism():
        first = [run_check(c, allow_skip, ctx.precision).as_dict() for c in suite_padic(_fresh(ctx))]
        second = [run_check(c, allow_skip, ctx.precision).as_dict() for c in suite_padic(_fresh(ctx))]
        return first, second
    checks.append(Check("precision.determinism", "identical config gives identical records", determinism))
    return checks


def _fresh(ctx: SuiteContext) -> SuiteContext:
    return SuiteContext(ctx.config, ctx.field, ctx.group, ctx.samples, ctx.measures)


SUITE_BUILDERS: Dict[str, Callable[[SuiteContext], List[Check]]] = {
    "padic": suite_padic,
    "series": suite_series,
    "identities": suite_identities,
    "residues": suite_residues,
    "eps": suite_eps,
    "coh": suite_coh,
    "amice": suite_amice,
    "descent": suite_descent,
    "constants": suite_constants,
    "precision": suite_precision,
}


# ---------------------------------------------------------------------- execution
def _failed_check(id_: str, ref: str, error: Exception, ctx: SuiteContext) -> Check:
    def compute():
        raise error
    return Check(id_, ref, compute)


def run_check(check: Check, allow_skip: bool = False, precision: Optional[Dict[str, int]] = None) -> CheckRecord:
    """
    Evaluate one check. Capability gaps become skips only with ``allow_skip``; every other
    error is a failure.
    """
    try:
        outcome = check.compute()
    except SKIPPABLE as e:
        if allow_skip:
            return CheckRecord(check.id, check.ref, "skipped", precision=precision, reason=str(e))
        return CheckRecord(check.id, check.ref, "fail", precision=precision, reason=str(e))
    except (LtlabError, ArithmeticError, ValueError) as e:
        _logger.warning("check %s raised %s: %s", check.id, type(e).__name__, e)
        return CheckRecord(check.id, check.ref, "fail", precision=precision, reason=f"{type(e).__name__}: {e}")
    if isinstance(outcome, CheckRecord):
        outcome.precision = outcome.precision or precision
        return outcome
    lhs, rhs = outcome
    return CheckRecord.create_record_from_comparison(check.id, check.ref, lhs, rhs, precision)


def collect_checks(ctx: SuiteContext, suites: Iterable[str]) -> List[Check]:
    checks: List[Check] = []
    for name in suites:
        try:
            built = SUITE_BUILDERS[name](ctx)
        except LtlabError as e:
            built = [_failed_check(f"{name}.setup", name, e, ctx)]
        _logger.info("suite %s: %d checks", name, len(built))
        checks.extend(built)
    return checks


def run_suites(ctx: SuiteContext, suites: Iterable[str], progress: bool = True) -> List[CheckRecord]:
    with working_digits(ctx.config.padic_digits):
        checks = collect_checks(ctx, suites)
        records = []
        for check in tqdm(checks, desc="verify", unit="check", ncols=100, disable=not progress):
            records.append(run_check(check, ctx.config.allow_skip, ctx.precision))
    failed = sum(1 for r in records if r.status == "fail")
    if failed:
        _logger.warning("%d of %d checks failed", failed, len(records))
    return records


def summarize(records: List[CheckRecord]) -> Tuple[int, int, int]:
    passed = sum(1 for r in records if r.status == "pass")
    failed = sum(1 for r in records if r.status == "fail")
    return passed, failed, len(records) - passed - failed
