"""Circle fitting: Pratt algebraic fit with a geometric Gauss-Newton polish."""

from typing import Sequence

import numpy as np
import structlog
from scipy.linalg import svd

from .interfaces import CollinearPointsError, FittedCircle, Point

logger = structlog.get_logger()

# inverse of the Pratt constraint matrix B (A^T B A = b^2 + c^2 - 4ad)
_PRATT_BINV = np.array([
    [0.0, 0.0, 0.0, -0.5],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [-0.5, 0.0, 0.0, 0.0],
])

_SINGULAR_RATIO = 1e-12


def _pratt(xy: np.ndarray) -> np.ndarray:
    """Algebraic coefficients (a, b, c, d) of a(x^2+y^2) + bx + cy + d = 0."""
    z = np.sum(xy * xy, axis=1)
    design = np.column_stack([z, xy[:, 0], xy[:, 1], np.ones(len(xy))])
    _, s, vt = svd(design, full_matrices=True)
    v = vt.T

    if s.size < 4 or s[-1] / s[0] < _SINGULAR_RATIO:
        # exact data or three points: the null vector is the circle
        return v[:, 3]

    w = v @ np.diag(s)
    evals, evecs = np.linalg.eigh(w.T @ _PRATT_BINV @ w)
    coeffs = evecs[:, np.argsort(evals)[1]]
    return v @ np.diag(1.0 / s) @ coeffs


def _gauss_newton(xy: np.ndarray, cx: float, cy: float, radius: float):
    dx, dy = xy[:, 0] - cx, xy[:, 1] - cy
    dist = np.hypot(dx, dy)
    if np.any(dist == 0.0):
        return cx, cy, radius
    jac = np.column_stack([-dx / dist, -dy / dist, -np.ones_like(dist)])
    delta, *_ = np.linalg.lstsq(jac, -(dist - radius), rcond=None)
    return cx + delta[0], cy + delta[1], radius + delta[2]


def fit_circle(points: Sequence[Point]) -> FittedCircle:
    """Least-squares circle through >= 3 non-collinear points."""
    xy = np.asarray(points, dtype=float)
    if xy.ndim != 2 or xy.shape[1] != 2:
        raise ValueError(f"points must have shape (n, 2), got {xy.shape}")
    if len(xy) < 3:
        raise CollinearPointsError(f"need at least 3 points, got {len(xy)}")

    centroid = xy.mean(axis=0)
    local = xy - centroid
    scale = float(np.max(np.hypot(local[:, 0], local[:, 1])))
    if scale == 0.0:
        raise CollinearPointsError("all points coincide")
    local = local / scale

    a = _pratt(local)
    if abs(a[0]) < _SINGULAR_RATIO * float(np.max(np.abs(a))):
        raise CollinearPointsError("points are collinear")

    cx, cy = -a[1] / (2.0 * a[0]), -a[2] / (2.0 * a[0])
    radius = float(np.sqrt(max(cx * cx + cy * cy - a[3] / a[0], 0.0)))
    if radius == 0.0:
        raise CollinearPointsError("algebraic fit collapsed to a point")

    cx, cy, radius = _gauss_newton(local, cx, cy, radius)
    residuals = np.hypot(local[:, 0] - cx, local[:, 1] - cy) - radius
    rms = float(np.sqrt(np.mean(residuals * residuals))) * scale

    return FittedCircle(
        cx=float(cx * scale + centroid[0]),
        cy=float(cy * scale + centroid[1]),
        radius=float(abs(radius) * scale),
        rms_residual=rms,
    )
