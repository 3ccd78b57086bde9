"""Discretized Maupertuis-Jacobi action and its node gradient."""

import math
from typing import Sequence, Tuple

import numpy as np

from ..model.interfaces import DomainError, PotentialParams
from ..model.potential import force_vector, potential

Position = Tuple[float, float]


def _as_path(path: Sequence[Position]) -> np.ndarray:
    nodes = np.asarray(path, dtype=float)
    if nodes.ndim != 2 or nodes.shape[1] != 2 or len(nodes) == 0:
        raise ValueError(f"path must have shape (n, 2), got {nodes.shape}")
    return nodes


def _momentum_magnitude(params: PotentialParams, E: float, point: np.ndarray) -> float:
    """w = sqrt(2 m (E - V)) at a point."""
    excess = E - potential(params, math.hypot(point[0], point[1]))
    if excess < 0:
        raise DomainError(f"E - V = {excess} < 0 at {tuple(point)}")
    return math.sqrt(2.0 * params.mass * excess)


def maupertuis_action(params: PotentialParams, E: float, path: Sequence[Position]) -> float:
    """Composite midpoint rule for the integral of sqrt(2m(E - V)) dl."""
    nodes = _as_path(path)
    for node in nodes:
        _momentum_magnitude(params, E, node)
    if len(nodes) < 2:
        return 0.0

    total = 0.0
    for p, q in zip(nodes[:-1], nodes[1:]):
        mid = 0.5 * (p + q)
        total += _momentum_magnitude(params, E, mid) * math.hypot(*(q - p))
    return total


def action_gradient(params: PotentialParams, E: float, path: Sequence[Position]) -> np.ndarray:
    """dS/d(node) of the midpoint-rule action, shape (n, 2).

    Uses grad w = m F / w; endpoint rows are included, callers holding the
    ends fixed read the interior rows only.
    """
    nodes = _as_path(path)
    grad = np.zeros_like(nodes)
    for i, (p, q) in enumerate(zip(nodes[:-1], nodes[1:])):
        mid = 0.5 * (p + q)
        w = _momentum_magnitude(params, E, mid)
        if w == 0.0:
            raise DomainError(f"action gradient undefined at the turning point {tuple(mid)}")
        seg = q - p
        length = math.hypot(*seg)
        if length == 0.0:
            raise DomainError(f"repeated node at index {i}")
        grad_w = params.mass * np.array(force_vector(params, mid[0], mid[1])) / w
        half = 0.5 * length * grad_w
        unit = seg / length
        grad[i] += half - w * unit
        grad[i + 1] += half + w * unit
    return grad
