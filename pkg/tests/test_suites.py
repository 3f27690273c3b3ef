#!/usr/bin/env python

"""Tests for `ltlab.core.Suites`."""

import pytest

from ltlab.core.Config import SUITES, Config
from ltlab.core.Errors import LevelUnsupported, NotEisenstein
from ltlab.core.Report import CheckRecord
from ltlab.core.Suites import (GUARDED_SUITES, SUITE_BUILDERS, Check, SuiteContext, collect_checks, random_polynomial,
                               random_unit, records_agree, run_check, run_suites, suite_precision, summarize)


@pytest.fixture
def context(small_config):
    return SuiteContext.create_context_from_config(small_config, samples=3, measures=4)


def _raise(error):
    def compute():
        raise error
    return compute


def test_every_suite_has_a_builder():
    assert set(SUITE_BUILDERS) == set(SUITES)


def test_run_check_outcomes():
    assert run_check(Check("a", "ref", lambda: (2, 2))).status == "pass"
    assert run_check(Check("a", "ref", lambda: (2, 3))).status == "fail"
    gap = Check("a", "ref", _raise(LevelUnsupported(level=3)))
    skipped = run_check(gap, allow_skip=True)
    assert skipped.status == "skipped"
    assert skipped.reason
    assert run_check(gap, allow_skip=False).status == "fail"
    broken = Check("a", "ref", _raise(NotEisenstein(detail="x")))
    assert run_check(broken, allow_skip=True).status == "fail"
    assert run_check(Check("a", "ref", _raise(ValueError("bad"))), precision={"padic_digits": 5}).precision == {
        "padic_digits": 5}


def test_rng_streams_are_reproducible(context, small_config):
    other = SuiteContext.create_context_from_config(small_config, samples=3, measures=4)
    assert context.rng("series").integers(0, 1000) == other.rng("series").integers(0, 1000)
    assert random_unit(context.rng("x"), 3) % 3
    f = random_polynomial(context.rng("y"), context.field, 3, unit_constant=True)
    assert f.constant_term().is_unit()


@pytest.mark.parametrize("suite", ["padic", "series", "eps", "constants", "residues"])
def test_suite_passes(context, suite):
    records = run_suites(context, [suite], progress=False)
    assert records
    failures = [(r.id, r.reason) for r in records if r.status == "fail"]
    assert not failures


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["identities", "coh", "amice", "descent", "precision"])
def test_slow_suite_passes(context, suite):
    records = run_suites(context, [suite], progress=False)
    assert not [(r.id, r.reason) for r in records if r.status == "fail"]


def test_descent_skipped_for_p2():
    config = Config(p=2, padic_digits=12, series_order=8, allow_skip=True)
    ctx = SuiteContext.create_context_from_config(config, samples=2, measures=2)
    records = run_suites(ctx, ["descent"], progress=False)
    assert [r.status for r in records] == ["skipped"]
    strict = SuiteContext.create_context_from_config(config.replace(allow_skip=False), samples=2, measures=2)
    assert [r.status for r in run_suites(strict, ["descent"], progress=False)] == ["fail"]


def test_collect_and_summarize(context):
    checks = collect_checks(context, ["padic"])
    assert all(c.id.startswith("padic.") for c in checks)
    records = [run_check(c) for c in checks[:3]]
    passed, failed, skipped = summarize(records)
    assert passed + failed + skipped == 3


@pytest.fixture
def level_two_context(small_config):
    return SuiteContext.create_context_from_config(small_config.replace(level=2), samples=3, measures=2)


def test_eps_suite_at_level_two(level_two_context):
    records = run_suites(level_two_context, ["eps"], progress=False)
    ids = {r.id for r in records}
    assert {"eps.count[1]", "eps.count[2]", "eps.additive_level[2]"} <= ids
    assert any(i.startswith("eps.equivariant[2]") for i in ids)
    assert not [(r.id, r.reason) for r in records if r.status == "fail"]


def test_descent_uses_every_measure(level_two_context):
    checks = collect_checks(level_two_context, ["descent"])
    level_one = [c for c in checks if c.id.startswith("descent.identity[1]")]
    level_two = [c for c in checks if c.id.startswith("descent.identity[2]")]
    assert level_one and level_two
    assert len(level_two) % level_two_context.measures == 0


@pytest.mark.slow
def test_descent_suite_at_level_two(level_two_context):
    records = run_suites(level_two_context, ["descent"], progress=False)
    assert any(r.id.startswith("descent.identity[2]") for r in records)
    assert not [(r.id, r.reason) for r in records if r.status == "fail"]


@pytest.mark.slow
def test_descent_suite_p5(small_config):
    ctx = SuiteContext.create_context_from_config(small_config.replace(p=5), samples=3, measures=2)
    records = run_suites(ctx, ["descent"], progress=False)
    assert records
    assert not [(r.id, r.reason) for r in records if r.status == "fail"]


def test_records_agree(q3):
    base = [CheckRecord("a", "ref", "pass", q3.coerce(1).with_prec(12), 1), CheckRecord("b", "ref", "fail", 2, 3),
            CheckRecord("c", "ref", "pass", {"residue": "1 + O(pi^12)"}, None)]
    guarded = [CheckRecord("a", "ref", "pass", q3.coerce(1 + 3 ** 15), 1), CheckRecord("b", "ref", "pass", 3, 3),
               CheckRecord("c", "ref", "pass", {"residue": "1 + O(pi^22)"}, None)]
    assert records_agree(base, guarded) == ["b"]
    assert records_agree(base, base) == []
    assert records_agree(base[:1], base) == ["b", "c"]
    wrong = [CheckRecord("a", "ref", "pass", q3.coerce(2), 1)] + guarded[1:]
    assert records_agree(base, wrong) == ["a", "b"]


def test_precision_reruns_randomized_suites(context):
    checks = {c.id: c for c in suite_precision(context)}
    assert {f"precision.guard[{suite}]" for suite in GUARDED_SUITES} <= set(checks)
    record = run_check(checks["precision.guard[series]"])
    assert record.status == "pass", record.reason
    assert record.lhs == record.rhs > 0
