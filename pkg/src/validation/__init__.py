"""Verification records, reports and the built-in acceptance suite."""

from .interfaces import CheckRecord, VerificationReport
from .acceptance import AcceptanceSuite, run_acceptance_suite

__all__ = ["CheckRecord", "VerificationReport", "AcceptanceSuite", "run_acceptance_suite"]
