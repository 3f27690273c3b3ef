#!/usr/bin/env python

"""Tests for `ltlab.core.Report`."""

import json

import jsonschema
import pytest

from ltlab.core.Report import SCHEMA_VERSION, CheckRecord, Report


@pytest.fixture
def report(small_config, q3):
    checks = [
        CheckRecord.create_record_from_comparison("series.b", "f f^-1 = 1", q3.one(), 1, {"padic_digits": 12}),
        CheckRecord.create_record_from_comparison("padic.a", "log(xy) = log x + log y", q3.one(), q3.coerce(2)),
        CheckRecord("descent.identity[1][0]", "descent", "skipped", reason="p = 2 is excluded"),
    ]
    return Report(small_config.echo(), checks)


def test_comparison_records(q3):
    assert CheckRecord.create_record_from_comparison("x", "ref", q3.coerce(4), 4).passed
    assert CheckRecord.create_record_from_comparison("x", "ref", q3.one(), "one").status == "fail"


def test_record_validation():
    with pytest.raises(ValueError):
        CheckRecord("x", "ref", "unknown")
    with pytest.raises(ValueError):
        CheckRecord("x", "ref", "skipped")


def test_summary_and_exit_code(report):
    assert report.summary() == {"pass": 1, "fail": 1, "skipped": 1, "total": 3}
    assert report.failed
    assert report.exit_code() == 1
    assert Report({}, [report.checks[0]]).exit_code() == 0


def test_checks_are_sorted(report):
    ids = [record["id"] for record in report.as_dict()["checks"]]
    assert ids == sorted(ids)
    assert list(report.to_frame()["id"]) == ids


def test_report_matches_schema(report, report_schema):
    data = json.loads(report.to_json())
    assert data["schema_version"] == SCHEMA_VERSION
    jsonschema.validate(data, report_schema)
    skipped = [c for c in data["checks"] if c["status"] == "skipped"][0]
    assert skipped["reason"] == "p = 2 is excluded"


def test_schema_rejects_floats(report, report_schema):
    data = json.loads(report.to_json())
    data["checks"][0]["lhs"] = 0.5
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(data, report_schema)


def test_results_section(small_config, report_schema):
    data = json.loads(Report(small_config.echo(), [], {"rows": [{"k": 1}]}).to_json())
    assert data["results"] == {"rows": [{"k": 1}]}
    jsonschema.validate(data, report_schema)


def test_summary_frame(report):
    frame = report.summary_frame()
    assert list(frame.columns) == ["pass", "fail", "skipped"]
    assert frame.loc["descent", "skipped"] == 1
    assert frame.loc["series", "pass"] == 1
    assert Report({}).summary_frame().empty
