"""Analytic zero-energy trajectories and numerical integration."""

from .interfaces import (
    SNAPSHOT_FIELDS, IntegrationError, StepSizeUnderflowError, BoundaryProximityError,
    AnalyticTrajectory, Sample, IntegratorStats, Trajectory,
)
from .analytic import (
    solve_theta, theta_rate, orbit_state, analytic_state, boundary_time, sample_analytic,
)
from .integrator import (
    HamiltonianSystem, DormandPrince54, StormerVerlet, integrate, integrate_symplectic,
)
from .sphere import (
    angular_speed, sphere_free_motion, sphere_velocity, time_dilation, reparametrize_time,
)

__all__ = [
    "SNAPSHOT_FIELDS", "IntegrationError", "StepSizeUnderflowError", "BoundaryProximityError",
    "AnalyticTrajectory", "Sample", "IntegratorStats", "Trajectory",
    "solve_theta", "theta_rate", "orbit_state", "analytic_state", "boundary_time",
    "sample_analytic",
    "HamiltonianSystem", "DormandPrince54", "StormerVerlet", "integrate",
    "integrate_symplectic",
    "angular_speed", "sphere_free_motion", "sphere_velocity", "time_dilation",
    "reparametrize_time",
]
