"""Exact zero-energy trajectories on off-center circles.

The orbit angle obeys the implicit law l sin(theta) + R theta = c (t - t0)
with c^2 = alpha / (2 m R^4), and theta' = c / (R + l cos(theta)).
"""

import math
from typing import Iterable, Optional

import structlog

from ..model.interfaces import (
    NonConvergenceError, OrbitSpec, PhaseState, RegimeError, SingularEvaluationError,
)
from ..model.observables import snapshot
from .interfaces import AnalyticTrajectory, IntegratorStats, Sample, Trajectory

logger = structlog.get_logger()

_MAX_ITERATIONS = 200


def solve_theta(traj: AnalyticTrajectory, t: float) -> float:
    """Unwrapped orbit angle at time t (elliptic regime only)."""
    R, l = traj.spec.R, traj.spec.l
    if l >= R:
        raise RegimeError(f"implicit law is monotone only for l < R, got l={l}, R={R}")

    g = traj.c * (t - traj.t0)
    if g == 0.0:
        return 0.0
    if l == 0.0:
        return g / R

    # sin(theta) within [-|theta|, |theta|] brackets the root
    lo, hi = g / (R + l), g / (R - l)
    if lo > hi:
        lo, hi = hi, lo

    def residual(theta: float) -> float:
        return l * math.sin(theta) + R * theta - g

    theta = 0.5 * (lo + hi)
    for _ in range(_MAX_ITERATIONS):
        f = residual(theta)
        if abs(f) < 1e-13 * R * (1.0 + abs(theta)):
            return theta
        if f > 0:
            hi = theta
        else:
            lo = theta
        step = f / (R + l * math.cos(theta))
        candidate = theta - step
        if not (lo < candidate < hi):
            candidate = 0.5 * (lo + hi)
        if candidate == theta:
            return theta
        theta = candidate

    raise NonConvergenceError(f"theta(t) did not converge at t={t}, residual={residual(theta)}")


def theta_rate(traj: AnalyticTrajectory, theta: float) -> float:
    """theta' = c / (R + l cos(theta))."""
    k = traj.spec.R + traj.spec.l * math.cos(theta)
    if k == 0.0:
        raise SingularEvaluationError(f"theta' diverges at theta={theta}")
    return traj.c / k


def orbit_state(
    spec: OrbitSpec,
    alpha: float,
    mass: float,
    theta: float,
    t: float = 0.0,
    n_angle: Optional[float] = None,
) -> PhaseState:
    """Zero-energy state at orbit angle theta, for l < R as well as l > R.

    Position l n + R (cos, sin)(theta) rotated by n_angle; momentum m R theta'
    along the tangent.
    """
    traj = AnalyticTrajectory.from_orbit(spec, alpha, mass)
    n = spec.n_angle if n_angle is None else n_angle
    rate = theta_rate(traj, theta)

    xl = spec.l + spec.R * math.cos(theta)
    yl = spec.R * math.sin(theta)
    vxl = -spec.R * rate * math.sin(theta)
    vyl = spec.R * rate * math.cos(theta)

    cn, sn = math.cos(n), math.sin(n)
    return PhaseState(
        x=cn * xl - sn * yl,
        y=sn * xl + cn * yl,
        px=mass * (cn * vxl - sn * vyl),
        py=mass * (sn * vxl + cn * vyl),
        t=t,
    )


def analytic_state(traj: AnalyticTrajectory, n_angle: Optional[float], t: float) -> PhaseState:
    """State at time t; n_angle=None uses the orbit's own direction."""
    theta = solve_theta(traj, t)
    return orbit_state(traj.spec, traj.alpha, traj.mass, theta, t=t, n_angle=n_angle)


def boundary_time(spec: OrbitSpec, alpha: float = 1.0, mass: float = 1.0) -> float:
    """Time from theta = pi to the disk border for an orbit with l > R."""
    if spec.l <= spec.R:
        raise RegimeError("only orbits with the force center outside have a border crossing")
    traj = AnalyticTrajectory.from_orbit(spec, alpha, mass)
    theta_b = math.acos(-spec.R / spec.l)
    border_radius = math.sqrt(spec.l ** 2 - spec.R ** 2)
    return (border_radius + spec.R * theta_b - spec.R * math.pi) / abs(traj.c)


def sample_analytic(
    traj: AnalyticTrajectory,
    times: Iterable[float],
    n_angle: Optional[float] = None,
) -> Trajectory:
    """Analytic trajectory with snapshots at the given times."""
    params = traj.params
    samples = []
    for t in times:
        state = analytic_state(traj, n_angle, float(t))
        samples.append(Sample(state=state, snapshot=snapshot(params, state)))
    logger.debug("analytic_sampled", samples=len(samples), period=traj.period)
    return Trajectory(
        samples=tuple(samples),
        params=params,
        stats=IntegratorStats(method="analytic"),
    )
