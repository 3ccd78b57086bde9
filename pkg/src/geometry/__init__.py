"""Geometric verification primitives."""

from .interfaces import (
    Point, GeometryError, NoIntersectionError, DegenerateGeometryError,
    CollinearPointsError, Circle, FittedCircle, CircleIntersection,
)
from .fitting import fit_circle
from .analysis import (
    intersect_circles, equator_crossings, crossing_angle, boundary_angle_defect,
    interpolate_state, closure_defect,
)

__all__ = [
    "Point", "GeometryError", "NoIntersectionError", "DegenerateGeometryError",
    "CollinearPointsError", "Circle", "FittedCircle", "CircleIntersection",
    "fit_circle",
    "intersect_circles", "equator_crossings", "crossing_angle", "boundary_angle_defect",
    "interpolate_state", "closure_defect",
]
