"""Intersections, antipodality, right-angle and closure metrics."""

import math
from typing import Tuple

import numpy as np

from ..model.interfaces import DomainError, PhaseState
from ..model.potential import force_vector
from ..trajectory.interfaces import Trajectory
from .interfaces import (
    Circle, CircleIntersection, DegenerateGeometryError, NoIntersectionError, Point,
)

_TANGENT_TOLERANCE = 1e-14
_COINCIDENT_TOLERANCE = 1e-12


def intersect_circles(c1: Circle, c2: Circle) -> CircleIntersection:
    """Closed-form intersection; tangency is reported, not raised."""
    dx, dy = c2.cx - c1.cx, c2.cy - c1.cy
    d = math.hypot(dx, dy)
    scale = max(c1.radius, c2.radius)

    if d <= _COINCIDENT_TOLERANCE * scale:
        if abs(c1.radius - c2.radius) <= _COINCIDENT_TOLERANCE * scale:
            raise DegenerateGeometryError("circles coincide")
        raise NoIntersectionError("concentric circles do not meet")

    a = (d * d + c1.radius ** 2 - c2.radius ** 2) / (2.0 * d)
    h2 = c1.radius ** 2 - a * a
    ux, uy = dx / d, dy / d
    mx, my = c1.cx + a * ux, c1.cy + a * uy

    if h2 < -_TANGENT_TOLERANCE * scale * scale:
        raise NoIntersectionError(f"circles do not intersect (separation {d})")
    if h2 <= _TANGENT_TOLERANCE * scale * scale:
        return CircleIntersection(points=((mx, my),), tangent=True)

    h = math.sqrt(h2)
    return CircleIntersection(
        points=((mx - h * uy, my + h * ux), (mx + h * uy, my - h * ux)),
    )


def equator_crossings(circle: Circle, R_ref: float) -> Tuple[Point, Point, float]:
    """Crossings with the origin circle of radius R_ref and |p1 + p2|."""
    meeting = intersect_circles(Circle(0.0, 0.0, R_ref), circle)
    p1 = meeting.points[0]
    p2 = meeting.points[-1]
    return p1, p2, math.hypot(p1[0] + p2[0], p1[1] + p2[1])


def crossing_angle(circle: Circle, point: Point) -> float:
    """Angle in [0, pi] between the radius of an origin circle and of ``circle`` at a common point."""
    u = np.array(point)
    v = np.array([point[0] - circle.cx, point[1] - circle.cy])
    return math.atan2(abs(float(u[0] * v[1] - u[1] * v[0])), float(u @ v))


def boundary_angle_defect(circle: Circle, R_tilde: float) -> float:
    """Largest |crossing angle - pi/2| against the disk border of radius R_tilde."""
    meeting = intersect_circles(Circle(0.0, 0.0, R_tilde), circle)
    return max(
        abs(crossing_angle(circle, p) - 0.5 * math.pi) for p in meeting.points
    )


def interpolate_state(traj: Trajectory, t: float) -> PhaseState:
    """Cubic Hermite state at time t using p/m and F as derivatives."""
    times = traj.times
    if len(times) == 0 or not (times[0] <= t <= times[-1]):
        raise DomainError(f"t={t} outside the trajectory span")
    span = max(times[-1] - times[0], 1.0)
    i = int(np.searchsorted(times, t))
    if i < len(times) and abs(times[i] - t) <= 1e-12 * span:
        return traj.samples[i].state
    if i > 0 and abs(times[i - 1] - t) <= 1e-12 * span:
        return traj.samples[i - 1].state

    s0, s1 = traj.samples[i - 1].state, traj.samples[i].state
    params = traj.params

    def derivative(s: PhaseState) -> np.ndarray:
        fx, fy = force_vector(params, s.x, s.y)
        return np.array([s.px / params.mass, s.py / params.mass, fx, fy])

    h = s1.t - s0.t
    u = (t - s0.t) / h
    y = (
        (2 * u ** 3 - 3 * u ** 2 + 1) * s0.as_array()
        + (u ** 3 - 2 * u ** 2 + u) * h * derivative(s0)
        + (-2 * u ** 3 + 3 * u ** 2) * s1.as_array()
        + (u ** 3 - u ** 2) * h * derivative(s1)
    )
    return PhaseState.from_array(y, t)


def closure_defect(traj: Trajectory, period: float, start_index: int = 0) -> float:
    """Distance between the start position and the position one period later."""
    if period <= 0:
        raise DomainError(f"period must be positive, got {period}")
    start = traj.samples[start_index].state
    end_time = start.t + period
    if end_time > traj.times[-1] + 1e-12 * max(abs(traj.times[-1]), 1.0):
        raise DomainError(
            f"trajectory ends at t={traj.times[-1]}, needs t={end_time}"
        )
    end = interpolate_state(traj, min(end_time, float(traj.times[-1])))
    return math.hypot(end.x - start.x, end.y - start.y)
