"""Domain types for the potential family V(r) = -alpha / (r^2 + sigma)^2."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np


class OrbitError(ValueError):
    """Base class for all domain errors."""


class SingularEvaluationError(OrbitError):
    """Evaluation at a pole of the potential or of the orbit parametrization."""


class DomainError(OrbitError):
    """Quantity requested outside the domain where it is defined."""


class RegimeError(OrbitError):
    """Operation not available in the orbit's regime."""


class NonConvergenceError(OrbitError):
    """Root finder did not reach its tolerance."""


class Regime(Enum):
    """Sign of sigma selects the geometry behind the potential."""
    SPHERICAL = "spherical"    # sigma = calR^2 > 0
    QUARTIC = "quartic"        # sigma = 0
    HYPERBOLIC = "hyperbolic"  # sigma = -calR~^2 < 0


class Observable(Enum):
    """Phase-space functions the bracket engine is closed over."""
    H = "H"
    LZ = "Lz"
    Q = "Q"
    IX = "Ix"
    IY = "Iy"
    IZ = "Iz"


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")


@dataclass(frozen=True)
class PotentialParams:
    """Coupling, mass and regime parameter of the potential."""
    alpha: float
    mass: float = 1.0
    sigma: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "mass", "sigma"):
            _require_finite(name, getattr(self, name))
        if self.alpha <= 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if self.mass <= 0:
            raise DomainError(f"mass must be positive, got {self.mass}")

    @property
    def regime(self) -> Regime:
        if self.sigma > 0:
            return Regime.SPHERICAL
        if self.sigma < 0:
            return Regime.HYPERBOLIC
        return Regime.QUARTIC

    @property
    def length_scale(self) -> float:
        """calR for sigma > 0, calR~ for sigma < 0, 0 in the quartic case."""
        return math.sqrt(abs(self.sigma))

    @classmethod
    def for_orbit(cls, spec: "OrbitSpec", alpha: float, mass: float = 1.0) -> "PotentialParams":
        """Parameters whose zero-energy orbits include ``spec``."""
        return cls(alpha=alpha, mass=mass, sigma=spec.sigma)


@dataclass(frozen=True)
class PhaseState:
    """Planar position, momentum and time."""
    x: float
    y: float
    px: float
    py: float
    t: float = 0.0

    def __post_init__(self):
        for name in ("x", "y", "px", "py", "t"):
            _require_finite(name, getattr(self, name))

    @property
    def r2(self) -> float:
        return self.x * self.x + self.y * self.y

    @property
    def r(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def phi(self) -> float:
        """Polar angle of the position."""
        return math.atan2(self.y, self.x)

    @property
    def position(self) -> Tuple[float, float]:
        return (self.x, self.y)

    @property
    def momentum(self) -> Tuple[float, float]:
        return (self.px, self.py)

    def as_array(self) -> np.ndarray:
        """Phase-space vector (x, y, px, py)."""
        return np.array([self.x, self.y, self.px, self.py], dtype=float)

    @classmethod
    def from_array(cls, values, t: float = 0.0) -> "PhaseState":
        x, y, px, py = (float(v) for v in values)
        return cls(x=x, y=y, px=px, py=py, t=float(t))


@dataclass(frozen=True)
class OrbitSpec:
    """Geometric circle orbit: radius R, center offset l along direction n_angle.

    sense = +1 travels counter-clockwise (c > 0), -1 clockwise.
    """
    R: float
    l: float = 0.0
    n_angle: float = 0.0
    sense: int = 1

    def __post_init__(self):
        for name in ("R", "l", "n_angle"):
            _require_finite(name, getattr(self, name))
        if self.R <= 0:
            raise DomainError(f"orbit radius must be positive, got {self.R}")
        if self.l < 0:
            raise DomainError(f"orbit offset must be non-negative, got {self.l}")
        if self.sense not in (1, -1):
            raise DomainError(f"sense must be +1 or -1, got {self.sense}")

    @property
    def sigma(self) -> float:
        """sigma = R^2 - l^2 of the potential that carries this orbit at E = 0."""
        return self.R * self.R - self.l * self.l

    @property
    def regime(self) -> Regime:
        if self.l < self.R:
            return Regime.SPHERICAL
        if self.l > self.R:
            return Regime.HYPERBOLIC
        return Regime.QUARTIC

    @property
    def center(self) -> Tuple[float, float]:
        return (self.l * math.cos(self.n_angle), self.l * math.sin(self.n_angle))

    def matches(self, params: PotentialParams, rel_tol: float = 1e-12) -> bool:
        """True if ``params.sigma`` equals R^2 - l^2."""
        scale = max(self.R * self.R, self.l * self.l)
        return abs(params.sigma - self.sigma) <= rel_tol * scale


@dataclass(frozen=True)
class InvariantVector:
    """Sphere angular momentum expressed through planar phase-space variables."""
    Ix: float
    Iy: float
    Iz: float

    @property
    def planar_norm2(self) -> float:
        return self.Ix * self.Ix + self.Iy * self.Iy

    @property
    def norm2(self) -> float:
        return self.planar_norm2 + self.Iz * self.Iz

    @property
    def orientation(self) -> float:
        """Angle of (Ix, Iy) with the x axis."""
        return math.atan2(self.Iy, self.Ix)

    def as_array(self) -> np.ndarray:
        return np.array([self.Ix, self.Iy, self.Iz], dtype=float)


@dataclass(frozen=True)
class SpherePoint:
    """Unit vector s' on the dual stereographic sphere."""
    sx: float
    sy: float
    sz: float

    NORM_TOLERANCE = 1e-12

    def __post_init__(self):
        for name in ("sx", "sy", "sz"):
            _require_finite(name, getattr(self, name))
        norm2 = self.sx * self.sx + self.sy * self.sy + self.sz * self.sz
        if abs(norm2 - 1.0) > 2 * self.NORM_TOLERANCE:
            raise DomainError(f"sphere point must be a unit vector, |s|^2 = {norm2}")

    def as_array(self) -> np.ndarray:
        return np.array([self.sx, self.sy, self.sz], dtype=float)

    @classmethod
    def from_vector(cls, values, normalize: bool = False) -> "SpherePoint":
        v = np.asarray(values, dtype=float)
        if normalize:
            norm = float(np.linalg.norm(v))
            if norm == 0.0:
                raise DomainError("cannot normalize the zero vector")
            v = v / norm
        return cls(sx=float(v[0]), sy=float(v[1]), sz=float(v[2]))
