"""Interface definitions for circle geometry."""

import math
from dataclasses import dataclass
from typing import Tuple

from ..model.interfaces import OrbitError

Point = Tuple[float, float]


class GeometryError(OrbitError):
    """Base class for geometric verification failures."""


class NoIntersectionError(GeometryError):
    """Two circles do not meet."""


class DegenerateGeometryError(GeometryError):
    """Coincident circles or a degenerate frame."""


class CollinearPointsError(GeometryError):
    """Points do not determine a circle."""


@dataclass(frozen=True)
class Circle:
    cx: float
    cy: float
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise DegenerateGeometryError(f"circle radius must be positive, got {self.radius}")

    @property
    def center(self) -> Point:
        return (self.cx, self.cy)

    def distance(self, point: Point) -> float:
        """Signed orthogonal distance of a point from the circle."""
        return math.hypot(point[0] - self.cx, point[1] - self.cy) - self.radius

    def point_at(self, angle: float) -> Point:
        return (self.cx + self.radius * math.cos(angle), self.cy + self.radius * math.sin(angle))


@dataclass(frozen=True)
class FittedCircle(Circle):
    """Least-squares circle with its RMS orthogonal residual."""
    rms_residual: float = 0.0

    def __post_init__(self):
        super().__post_init__()
        if self.rms_residual < 0:
            raise ValueError(f"rms_residual must be non-negative, got {self.rms_residual}")


@dataclass(frozen=True)
class CircleIntersection:
    """Meeting points of two circles; one point when they are tangent."""
    points: Tuple[Point, ...]
    tangent: bool = False
