"""Unit tests for check records and reports."""

import json

import pytest
from pydantic import ValidationError

from src.validation.interfaces import CheckRecord, VerificationReport


class TestCheckRecord:
    """Tests for CheckRecord.compare."""

    def test_below(self):
        """Should pass strictly below the tolerance."""
        assert CheckRecord.compare("energy", 1e-13, 1e-12).passed
        assert not CheckRecord.compare("energy", 1e-12, 1e-12).passed

    def test_above(self):
        """Should pass strictly above the tolerance for negative controls."""
        assert CheckRecord.compare("control", 0.5, 1e-3, mode="above").passed
        assert not CheckRecord.compare("control", 1e-4, 1e-3, mode="above").passed

    def test_non_finite_fails(self):
        """Should fail NaN and infinite deviations in both modes."""
        assert not CheckRecord.compare("nan", float("nan"), 1.0).passed
        assert not CheckRecord.compare("inf", float("inf"), 1.0, mode="above").passed

    def test_tolerance_positive(self):
        """Should reject a zero tolerance."""
        with pytest.raises(ValidationError):
            CheckRecord.compare("zero", 0.0, 0.0)

    def test_fields(self):
        """Should carry the quantities and description."""
        record = CheckRecord.compare("h", 0.0, 1e-12, quantities=["H"], description="energy")
        assert record.quantities == ["H"]
        assert record.description == "energy"
        assert record.mode == "below"


class TestVerificationReport:
    """Tests for VerificationReport."""

    def test_passes_when_empty(self):
        """Should pass with no records."""
        assert VerificationReport(name="empty").passed

    def test_failures(self):
        """Should fail on any failing record and list it."""
        report = VerificationReport(name="run")
        report.add(CheckRecord.compare("ok", 0.0, 1.0))
        bad = report.add(CheckRecord.compare("bad", 2.0, 1.0))
        assert not report.passed
        assert report.failures == [bad]

    def test_to_json(self):
        """Should serialize records and the computed passed flag."""
        report = VerificationReport(name="run", metadata={"seed": 3}, files=["a.csv"])
        report.add(CheckRecord.compare("ok", 0.0, 1.0))
        data = json.loads(report.to_json())
        assert data["passed"] is True
        assert data["metadata"] == {"seed": 3}
        assert data["records"][0]["check_id"] == "ok"
        assert data["files"] == ["a.csv"]
