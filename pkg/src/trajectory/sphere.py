"""Free motion on the dual sphere and the time change back to the plane."""

import math
from typing import List, Sequence, Tuple

import numpy as np
import structlog
from scipy.integrate import cumulative_simpson

from ..model.interfaces import DomainError, PotentialParams, SpherePoint

logger = structlog.get_logger()

Position = Tuple[float, float]

_FRAME_TOLERANCE = 1e-12


def _check_frame(a: SpherePoint, b: SpherePoint) -> Tuple[np.ndarray, np.ndarray]:
    va, vb = a.as_array(), b.as_array()
    if abs(float(va @ vb)) > _FRAME_TOLERANCE:
        raise DomainError(f"frame vectors must be orthogonal, a.b = {va @ vb}")
    return va, vb


def angular_speed(R_sphere: float, Ep: float, mass: float) -> float:
    """omega = v'/calR with v' = sqrt(2 E'/m)."""
    if R_sphere <= 0:
        raise DomainError(f"sphere radius must be positive, got {R_sphere}")
    if Ep <= 0:
        raise DomainError(f"dual energy must be positive, got {Ep}")
    if mass <= 0:
        raise DomainError(f"mass must be positive, got {mass}")
    return math.sqrt(2.0 * Ep / mass) / R_sphere


def sphere_free_motion(
    R_sphere: float, Ep: float, mass: float, a: SpherePoint, b: SpherePoint, tp: float
) -> SpherePoint:
    """s'(t') = cos(omega t') a + sin(omega t') b."""
    va, vb = _check_frame(a, b)
    phase = angular_speed(R_sphere, Ep, mass) * tp
    s = math.cos(phase) * va + math.sin(phase) * vb
    # renormalize away the rounding of the two-term sum
    return SpherePoint.from_vector(s, normalize=True)


def sphere_velocity(
    R_sphere: float, Ep: float, mass: float, a: SpherePoint, b: SpherePoint, tp: float
) -> np.ndarray:
    """ds'/dt' of the unit direction vector."""
    va, vb = _check_frame(a, b)
    omega = angular_speed(R_sphere, Ep, mass)
    phase = omega * tp
    return omega * (-math.sin(phase) * va + math.cos(phase) * vb)


def time_dilation(params: PotentialParams, r2: np.ndarray) -> np.ndarray:
    """dt/dt' = (r^2 + calR^2)^2 / (4 calR^4)."""
    if params.sigma <= 0:
        raise DomainError(f"time reparametrization needs sigma > 0, got {params.sigma}")
    s = params.sigma
    return (np.asarray(r2, dtype=float) + s) ** 2 / (4.0 * s * s)


def reparametrize_time(
    params: PotentialParams,
    plane_path: Sequence[Tuple[Position, float]],
    t_start: float = 0.0,
) -> List[Tuple[Position, float]]:
    """Map dual-time samples (position, t') to (position, t) by Simpson quadrature."""
    if len(plane_path) < 2:
        raise DomainError("need at least two samples to reparametrize time")
    positions = np.array([p for p, _ in plane_path], dtype=float)
    tp = np.array([t for _, t in plane_path], dtype=float)
    if np.any(np.diff(tp) <= 0):
        raise DomainError("dual times must be strictly increasing")

    factor = time_dilation(params, np.sum(positions * positions, axis=1))
    if tp.size == 2:
        elapsed = np.array([0.0, 0.5 * (factor[0] + factor[1]) * (tp[1] - tp[0])])
    else:
        elapsed = cumulative_simpson(factor, x=tp, initial=0.0)

    times = t_start + elapsed
    logger.debug("time_reparametrized", samples=tp.size, elapsed=float(elapsed[-1]))
    return [((float(x), float(y)), float(t)) for (x, y), t in zip(positions, times)]
