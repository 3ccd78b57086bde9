"""Interface definitions for analytic and integrated trajectories."""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..model.interfaces import (
    DomainError, OrbitError, OrbitSpec, PhaseState, PotentialParams,
)

SNAPSHOT_FIELDS = ("H", "Lz", "Q", "Ix", "Iy", "Iz")


class IntegrationError(OrbitError):
    """Integration stopped before t_end; carries what was computed so far."""

    def __init__(self, message: str, last_state: PhaseState, partial: "Trajectory" = None):
        super().__init__(message)
        self.last_state = last_state
        self.partial = partial


class StepSizeUnderflowError(IntegrationError):
    """Step size fell below the floating-point resolution of t."""


class BoundaryProximityError(IntegrationError):
    """Hyperbolic trajectory reached the border circle r^2 = -sigma."""


@dataclass(frozen=True)
class AnalyticTrajectory:
    """Exact zero-energy motion l sin(theta) + R theta = c (t - t0)."""
    spec: OrbitSpec
    alpha: float
    mass: float
    c: float
    t0: float = 0.0

    def __post_init__(self):
        expected = self.alpha / (2.0 * self.mass * self.spec.R ** 4)
        if not math.isclose(self.c * self.c, expected, rel_tol=1e-12):
            raise DomainError(f"c^2 must equal alpha/(2 m R^4) = {expected}, got {self.c ** 2}")
        if (self.c > 0) != (self.spec.sense > 0):
            raise DomainError("sign of c must match the orbit sense")

    @classmethod
    def from_orbit(
        cls, spec: OrbitSpec, alpha: float = 1.0, mass: float = 1.0, t0: float = 0.0
    ) -> "AnalyticTrajectory":
        c = spec.sense * math.sqrt(alpha / (2.0 * mass)) / (spec.R * spec.R)
        return cls(spec=spec, alpha=alpha, mass=mass, c=c, t0=t0)

    @property
    def params(self) -> PotentialParams:
        return PotentialParams.for_orbit(self.spec, self.alpha, self.mass)

    @property
    def period(self) -> float:
        """Time for theta to advance by 2 pi."""
        return 2.0 * math.pi * self.spec.R / abs(self.c)


@dataclass(frozen=True)
class Sample:
    """A state with its conserved-quantity snapshot."""
    state: PhaseState
    snapshot: Dict[str, float]


@dataclass(frozen=True)
class IntegratorStats:
    """How a trajectory was produced."""
    method: str
    rtol: Optional[float] = None
    atol: Optional[float] = None
    accepted_steps: int = 0
    rejected_steps: int = 0
    evaluations: int = 0


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered samples of one run."""
    samples: Tuple[Sample, ...]
    params: PotentialParams
    stats: IntegratorStats = field(default_factory=lambda: IntegratorStats(method="unknown"))

    def __post_init__(self):
        times = [s.state.t for s in self.samples]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise DomainError("sample times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def states(self) -> List[PhaseState]:
        return [s.state for s in self.samples]

    @property
    def times(self) -> np.ndarray:
        return np.array([s.state.t for s in self.samples])

    @property
    def positions(self) -> np.ndarray:
        return np.array([[s.state.x, s.state.y] for s in self.samples])

    @property
    def phase_array(self) -> np.ndarray:
        """(n, 4) array of x, y, px, py."""
        return np.array([s.state.as_array() for s in self.samples])

    def column(self, name: str) -> np.ndarray:
        """One snapshot column across all samples."""
        if name not in SNAPSHOT_FIELDS:
            raise KeyError(f"unknown snapshot column: {name}")
        return np.array([s.snapshot[name] for s in self.samples])

    @property
    def span(self) -> float:
        if not self.samples:
            return 0.0
        return self.samples[-1].state.t - self.samples[0].state.t
