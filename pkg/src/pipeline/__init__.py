"""Scenario orchestration."""

from .runner import ScenarioRunner, run_scenario

__all__ = ["ScenarioRunner", "run_scenario"]
