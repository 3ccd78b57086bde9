"""Scenario documents: JSON validated by pydantic models."""

import json
import math
from enum import Enum
from pathlib import Path
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..model.interfaces import OrbitError, OrbitSpec, PhaseState, PotentialParams
from .settings import settings


class ScenarioError(OrbitError):
    """Scenario document missing, unreadable or inconsistent."""


class Task(str, Enum):
    SIMULATE = "simulate"
    ANALYTIC = "analytic"
    DUALITY = "duality"
    INVARIANTS = "invariants"
    FIGURES = "figures"


class FigureKind(str, Enum):
    GEOMETRY = "fig1"
    ZERO_ENERGY_FAMILY = "fig2"
    STEREOGRAPHIC = "fig3"
    HYPERBOLIC_FAMILY = "fig4"
    TRAJECTORY = "trajectory"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PotentialSection(_Section):
    alpha: float = Field(default_factory=lambda: settings.alpha, gt=0)
    sigma: float = 0.0
    mass: float = Field(default_factory=lambda: settings.mass, gt=0)

    def to_params(self) -> PotentialParams:
        return PotentialParams(alpha=self.alpha, mass=self.mass, sigma=self.sigma)


class OrbitSection(_Section):
    R: float = Field(gt=0)
    l: float = Field(default=0.0, ge=0)
    n_angle: float = 0.0
    sense: Literal[1, -1] = 1

    def to_spec(self) -> OrbitSpec:
        return OrbitSpec(R=self.R, l=self.l, n_angle=self.n_angle, sense=self.sense)


class StateSection(_Section):
    x: float
    y: float
    px: float
    py: float
    t: float = 0.0

    def to_state(self) -> PhaseState:
        return PhaseState(x=self.x, y=self.y, px=self.px, py=self.py, t=self.t)


class InitialSection(_Section):
    orbit: Optional[OrbitSection] = None
    state: Optional[StateSection] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "InitialSection":
        if (self.orbit is None) == (self.state is None):
            raise ValueError("initial must give exactly one of 'orbit' or 'state'")
        return self


class IntegrationSection(_Section):
    method: Literal["dopri54", "stormer_verlet"] = "dopri54"
    rtol: float = Field(default_factory=lambda: settings.rtol, gt=0)
    atol: float = Field(default_factory=lambda: settings.atol, gt=0)
    t_end: Optional[float] = Field(default=None, gt=0)
    samples: int = Field(default_factory=lambda: settings.samples_per_period + 1, ge=2)
    max_step: Optional[float] = Field(default=None, gt=0)
    dt: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _verlet_needs_dt(self) -> "IntegrationSection":
        if self.method == "stormer_verlet" and self.dt is None:
            raise ValueError("stormer_verlet integration needs 'dt'")
        return self


class OutputSection(_Section):
    directory: Optional[Path] = None
    formats: List[OutputFormat] = Field(
        default_factory=lambda: [OutputFormat.CSV, OutputFormat.JSON, OutputFormat.SVG]
    )


class ScenarioConfig(BaseModel):
    """One scenario document."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: Literal[1] = Field(alias="schema")
    name: str = "scenario"
    potential: PotentialSection = Field(default_factory=PotentialSection)
    initial: InitialSection
    integration: IntegrationSection = Field(default_factory=IntegrationSection)
    tasks: List[Task] = Field(min_length=1)
    output: OutputSection = Field(default_factory=OutputSection)
    figures: List[FigureKind] = Field(default_factory=lambda: [FigureKind.TRAJECTORY])
    seed: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _consistent(self) -> "ScenarioConfig":
        orbit = self.initial.orbit
        sigma = self.potential.sigma

        if Task.ANALYTIC in self.tasks:
            if orbit is None:
                raise ValueError("task 'analytic' needs initial.orbit")
            if orbit.l >= orbit.R:
                raise ValueError("task 'analytic' needs l < R")
            expected = orbit.R ** 2 - orbit.l ** 2
            if not math.isclose(sigma, expected, rel_tol=1e-12, abs_tol=1e-12 * orbit.R ** 2):
                raise ValueError(
                    f"task 'analytic' needs sigma = R^2 - l^2 = {expected}, got {sigma}"
                )

        if Task.DUALITY in self.tasks:
            if orbit is None:
                raise ValueError("task 'duality' needs initial.orbit")
            if sigma < 0:
                raise ValueError("task 'duality' is defined for sigma >= 0 only")
            if not math.isclose(sigma, orbit.R ** 2 - orbit.l ** 2, rel_tol=1e-12, abs_tol=1e-12 * orbit.R ** 2):
                raise ValueError("task 'duality' needs sigma = R^2 - l^2")

        integrates = {Task.SIMULATE, Task.INVARIANTS} & set(self.tasks) or (
            Task.FIGURES in self.tasks and FigureKind.TRAJECTORY in self.figures
        )
        if integrates and orbit is None and self.integration.t_end is None:
            raise ValueError("integrating from an explicit state needs integration.t_end")

        return self

    @property
    def params(self) -> PotentialParams:
        return self.potential.to_params()

    @property
    def effective_seed(self) -> int:
        return settings.seed if self.seed is None else self.seed

    def restricted_to(self, task: Task) -> "ScenarioConfig":
        """Re-validated copy that runs a single task."""
        return self.with_overrides(tasks=[task])

    def with_overrides(self, **changes) -> "ScenarioConfig":
        """Re-validated copy with top-level fields replaced."""
        data = self.model_dump(mode="json", by_alias=True, exclude_none=True)
        data.update({k: v for k, v in changes.items() if v is not None})
        return ScenarioConfig.model_validate(data)


def parse_scenario(data: Union[dict, str]) -> ScenarioConfig:
    """Validate a scenario document given as a dict or JSON text."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ScenarioError(f"scenario is not valid JSON: {e}") from e
    return ScenarioConfig.model_validate(data)


def load_scenario(config_path: Union[str, Path]) -> ScenarioConfig:
    """Load and validate a scenario document from a JSON file."""
    path = Path(config_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"cannot read scenario {path}: {e}") from e
    return parse_scenario(text)


def scenario_dir() -> Path:
    return settings.config_dir / "scenarios"


__all__ = [
    "ScenarioError", "Task", "FigureKind", "OutputFormat",
    "PotentialSection", "OrbitSection", "StateSection", "InitialSection",
    "IntegrationSection", "OutputSection", "ScenarioConfig",
    "parse_scenario", "load_scenario", "scenario_dir", "ValidationError",
]
