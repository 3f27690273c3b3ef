# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 12/06/2023
 * Time: 17:45
 *
 * Edited by: eniocc
 * Date: 18/06/2023
 * Time: 12:10
"""
import logging
import pathlib
import time
from typing import List, Optional, Tuple

import pandas as pd

from ltlab.core.Config import Config, field_signature, standard_configurations
from ltlab.core.Report import CheckRecord, Report
from ltlab.core.Suites import DEFAULT_MEASURES, DEFAULT_SAMPLES, Check, SuiteContext, run_check, run_suites
from ltlab.model.Chareps import (AdditiveCharacter, Character, classify, enumerate_characters, equivariant_epsilon,
                                 gauss_sum_epsilon)
from ltlab.model.CohModel import KINDS, closed_form_table, expected_dims, grid_characters, model_cohomology
from ltlab.model.Dist import amice_eta, amice_series, mellin, moments, restrict_units
from ltlab.model.Padic import working_digits
from ltlab.model.Recip import random_measure
from ltlab.model.Series import MultiSeries

_logger = logging.getLogger(__name__)

SUBCOMMANDS = ("group-law", "torsion", "eps", "coh", "dist", "verify")


def _multi_series_rows(law: MultiSeries) -> List[dict]:
    return [{"exponent": list(e), "coeff": c} for e, c in sorted(law.coeffs.items())]


def _frame_records(frame: pd.DataFrame) -> List[dict]:
    return frame.astype(str).to_dict(orient="records")


# ---------------------------------------------------------------------- subcommands
def group_law_report(config: Config, order: Optional[int] = None) -> Report:
    """F(X, Y), log_LT, exp_LT and a few [a](Z) for the configured datum."""
    order = order or config.series_order
    field = config.build_field()
    group = config.build_group(field)
    law = group.group_law(order)
    endomorphisms = {}
    for a in (-1, 2, field.p + 1):
        endomorphisms[str(a)] = group.endomorphism(a, order)
    report = Report(config.echo())
    report.results = {"field": field.label, "signature": field_signature(field), "frobenius": group.frobenius,
                      "group_law": repr(law), "group_law_coeffs": _multi_series_rows(law),
                      "log": group.log_lt(order), "exp": group.exp_lt(order), "endomorphisms": endomorphisms}

    def functional_equation():
        degree = min(order, 8)
        truncated = law.truncate(degree)
        px = MultiSeries.from_series(group.frobenius, 0, 2, degree)
        py = MultiSeries.from_series(group.frobenius, 1, 2, degree)
        return truncated.substitute([px, py]), truncated.compose_into(group.frobenius.truncate(degree))
    report.add(run_check(Check("group_law.functional_equation", "F(P(X), P(Y)) = P(F(X, Y))",
                               functional_equation), config.allow_skip, {"series_order": order}))
    return report


def torsion_report(config: Config, level: Optional[int] = None) -> Report:
    """Fields, generators and the level-1 orbit of the torsion tower."""
    level = level or config.level
    group = config.build_group()
    tower = group.torsion_tower(level)
    report = Report(config.echo())
    report.results = {
        "levels": [{"level": k + 1, "field": f.label,
                    "degree_over_base": f.absolute_degree // group.field.absolute_degree, "point": u,
                    "valuation_p": str(tower.valuation_p(k + 1))}
                   for k, (f, u) in enumerate(zip(tower.fields, tower.points))],
        "orbit": list(tower.orbit),
    }
    top = tower.field
    iterate = group.iterate(level).lift(top)
    report.add(run_check(Check(f"torsion.kills[{level}]", "[pi^n](u_n) = 0",
                               lambda: (iterate.evaluate(tower.point), 0)), config.allow_skip))
    return report


def eps_table(config: Config, conductor: int = 1, all_characters: bool = False) -> pd.DataFrame:
    """
    Gauss-sum epsilon constants of the characters of (o/pi^conductor)^x.

    :param conductor: the level of the enumeration.
    :param all_characters: keep characters of smaller conductor as well.
    """
    field = config.build_field()
    psi = AdditiveCharacter.standard(field, conductor)
    absolute = Character.absolute_value(field)
    minus_one = field.coerce(-1)
    rows = []
    for index, delta in enumerate(enumerate_characters(field, conductor)):
        a = delta.conductor()
        if not all_characters and a != conductor:
            continue
        eps = gauss_sum_epsilon(delta, psi)
        product = eps * gauss_sum_epsilon(delta.inverse() * absolute, psi)
        expected = delta.on_unit(minus_one)
        rows.append({"index": index, "character": delta.label, "conductor": a, "epsilon": repr(eps),
                     "duality": repr(product), "delta(-1) q^n(psi)": repr(expected),
                     "holds": bool(product == expected)})
    return pd.DataFrame(rows, columns=["index", "character", "conductor", "epsilon", "duality",
                                       "delta(-1) q^n(psi)", "holds"])


def equivariant_table(config: Config, conductor: int = 1) -> pd.DataFrame:
    """Components epsilon(delta, psi(b .)) for every character and unit class b."""
    field = config.build_field()
    psi = AdditiveCharacter.standard(field, conductor)
    rows = []
    for index, delta in enumerate(enumerate_characters(field, conductor)):
        eps = equivariant_epsilon(delta, psi)
        for key, value in eps.components.items():
            rows.append({"index": index, "character": delta.label, "b": str(key), "epsilon": repr(value)})
    return pd.DataFrame(rows, columns=["index", "character", "b", "epsilon"])


def eps_report(config: Config, table: str = "gauss", conductor: int = 1,
               all_characters: bool = False) -> Tuple[Report, pd.DataFrame]:
    if table == "gauss":
        frame = eps_table(config, conductor, all_characters)
    elif table == "equivariant":
        frame = equivariant_table(config, conductor)
    else:
        raise ValueError(f"unknown epsilon table {table!r}")
    report = Report(config.echo())
    report.results = {"table": table, "rows": _frame_records(frame)}
    if table == "gauss":
        for row in frame.to_dict(orient="records"):
            status = "pass" if row["holds"] else "fail"
            ref = "eps(delta) eps(delta^-1 |.|) = delta(-1) q^n(psi)"
            report.add(CheckRecord(f"eps.duality[{row['index']}]", ref,
                                   status, row["duality"], row["delta(-1) q^n(psi)"],
                                   {"padic_digits": config.padic_digits}))
    return report, frame


def coh_table(config: Config, degree_bound: int = 3) -> pd.DataFrame:
    """Model and oracle cohomology over the branch-covering character grid."""
    group = config.build_group()
    rows = []
    for index, delta in enumerate(grid_characters(group, degree_bound)):
        row = {"index": index, "character": delta.label, "class": str(classify(delta))}
        for kind in KINDS:
            model = model_cohomology(kind, delta, degree_bound).dims
            closed = closed_form_table(kind, delta, degree_bound).dims
            row[f"{kind} model"] = str(model)
            row[f"{kind} closed form"] = str(closed)
        for module in ("R", "R+", "LA"):
            row[f"H({module})"] = str(expected_dims(delta, module).dims)
        rows.append(row)
    return pd.DataFrame(rows)


def coh_report(config: Config, degree_bound: int = 3) -> Tuple[Report, pd.DataFrame]:
    frame = coh_table(config, degree_bound)
    report = Report(config.echo())
    report.results = {"degree_bound": degree_bound, "rows": _frame_records(frame)}
    for row in frame.to_dict(orient="records"):
        for kind in KINDS:
            status = "pass" if row[f"{kind} model"] == row[f"{kind} closed form"] else "fail"
            report.add(CheckRecord(f"coh.model[{kind}][{row['index']}]", "finite model tables", status,
                                   row[f"{kind} model"], row[f"{kind} closed form"]))
    return report, frame


def dist_report(config: Config, count: int = 2) -> Report:
    """Amice and Mellin transforms of a few seeded random measures."""
    group = config.build_group()
    field = group.field
    delta = Character.unramified(field, field.p + 1)
    demos = []
    for s in range(count):
        mu = random_measure(group, config.level, config.seed + s)
        units = restrict_units(mu)
        demos.append({
            "measure": repr(mu),
            "amice": repr(amice_eta(mu)),
            "amice_series": amice_series(mu, min(config.series_order, 6)),
            "moments": moments(mu, min(config.moment_horizon, 4)),
            "mellin": repr(mellin(units, delta).coefficient),
        })
    report = Report(config.echo())
    report.results = {"character": delta.label, "demos": demos}
    return report


def verify(config: Config, progress: bool = True, samples: int = DEFAULT_SAMPLES,
           measures: int = DEFAULT_MEASURES) -> Report:
    """Run the selected suites and collect the records into a report."""
    start = time.time()
    ctx = SuiteContext.create_context_from_config(config, samples, measures)
    records = run_suites(ctx, config.selected_suites, progress)
    report = Report(config.echo(), records)
    _logger.info("verified %d checks in %.1f s over %s", len(records), time.time() - start, ctx.field.label)
    return report


def verify_standard(config: Config, progress: bool = True, samples: int = DEFAULT_SAMPLES,
                    measures: int = DEFAULT_MEASURES) -> Report:
    """
    Run the selected suites over the three standard configurations.

    Precision, suites, seed and ``allow_skip`` come from ``config``; record ids get the
    ``@(p,e,f)`` signature of the configuration they were checked in.
    """
    shared = {"padic_digits": config.padic_digits, "series_order": config.series_order, "t_order": config.t_order,
              "moment_horizon": config.moment_horizon, "suites": list(config.suites),
              "allow_skip": config.allow_skip, "log_level": config.log_level}
    report = Report(config.echo(), results={"configurations": []})
    for standard in standard_configurations(config.seed, **shared):
        sub = verify(standard, progress, samples, measures)
        signature = field_signature(standard.build_field())
        for record in sub.checks:
            record.id = f"{record.id}@{signature}"
        report.extend(sub.checks)
        report.results["configurations"].append(standard.echo())
    return report


def write_report(report: Report, out: Optional[str] = None) -> Optional[pathlib.Path]:
    text = report.to_json()
    if out is None:
        return None
    path = pathlib.Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n", encoding="utf-8")
    _logger.info("report written to %s", path)
    return path


def run(subcommand: str, config: Config, **options) -> Report:
    """
    Dispatch a subcommand.

    :param subcommand: one of ``SUBCOMMANDS``.
    :param config: the validated configuration.
    :return: the report; its ``exit_code()`` is 1 when a check failed.
    """
    if subcommand not in SUBCOMMANDS:
        raise ValueError(f"unknown subcommand {subcommand!r}")
    with working_digits(config.padic_digits):
        return _dispatch(subcommand, config, options)


def _dispatch(subcommand: str, config: Config, options: dict) -> Report:
    if subcommand == "group-law":
        return group_law_report(config, options.get("order"))
    if subcommand == "torsion":
        return torsion_report(config, options.get("level"))
    if subcommand == "eps":
        return eps_report(config, options.get("table", "gauss"), options.get("conductor", 1),
                          options.get("all_characters", False))[0]
    if subcommand == "coh":
        return coh_report(config, options.get("degree_bound", 3))[0]
    if subcommand == "dist":
        return dist_report(config, options.get("count", 2))
    runner = verify_standard if options.get("standard", False) else verify
    return runner(config, options.get("progress", True), options.get("samples", DEFAULT_SAMPLES),
                  options.get("measures", DEFAULT_MEASURES))
