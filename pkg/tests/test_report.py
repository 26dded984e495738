import json

import pytest

from huacheck.report import (
    CheckRecord,
    VerificationReport,
    complex_to_json,
    merge_reports,
    record_from_values,
)


def make_record(name="check", residual=1e-12, tol=1e-9, direction="max_below"):
    return CheckRecord(
        name=name,
        anchor="test anchor",
        residual_max=residual,
        residual_mean=residual / 2.0,
        samples=10,
        tolerance=tol,
        direction=direction,
    )


def test_complex_serialization():
    assert complex_to_json(1.5 - 2.0j) == [1.5, -2.0]


def test_record_pass_semantics_both_directions():
    assert make_record().passed
    assert not make_record(residual=1e-6).passed
    assert make_record(residual=0.5, tol=0.1, direction="min_above").passed
    assert not make_record(residual=0.05, tol=0.1, direction="min_above").passed


def test_record_from_values_statistics():
    rec = record_from_values("r", "a", [1.0, -3.0, 2.0], 10.0)
    assert rec.residual_max == 3.0
    assert rec.residual_mean == 2.0
    assert rec.samples == 3
    low = record_from_values("r", "a", [1.0, 3.0], 0.5, direction="min_above")
    assert low.residual_max == 1.0  # minimum governs negative controls
    assert low.passed


def test_report_round_trip_and_determinism():
    rep = VerificationReport(campaign="demo")
    rep.add(make_record("a"))
    rep.add(make_record("b", residual=1e-3))
    text1 = rep.to_json()
    text2 = rep.to_json()
    assert text1 == text2
    back = VerificationReport.from_dict(json.loads(text1))
    assert back.campaign == "demo"
    assert [r.name for r in back.records] == ["a", "b"]
    assert back.to_json() == text1
    assert not rep.passed


def test_report_text_rendering():
    rep = VerificationReport(campaign="demo")
    rep.add(make_record("good"))
    rep.add(make_record("bad", residual=1.0))
    text = rep.to_text()
    assert "PASS good" in text
    assert "FAIL bad" in text
    assert text.strip().endswith("overall: FAIL")


def test_schema_version_is_enforced():
    with pytest.raises(ValueError):
        VerificationReport.from_dict({"schema": 999, "campaign": "x", "records": []})


def test_merge_reports_concatenates_records():
    r1 = VerificationReport(campaign="one")
    r1.add(make_record("a"))
    r2 = VerificationReport(campaign="two")
    r2.add(make_record("b"))
    merged = merge_reports([r1, r2], campaign="joint")
    assert merged.campaign == "joint"
    assert [r.name for r in merged.records] == ["a", "b"]
    assert merged.passed
