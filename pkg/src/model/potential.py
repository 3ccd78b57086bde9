"""Potential, force and energy evaluators.

Newton's on-orbit force law is written in terms of the orbit angle theta; the
potential and its gradient act everywhere in the plane.
"""

import math
from typing import Tuple

from ..config.settings import settings
from .interfaces import (
    OrbitSpec, PhaseState, PotentialParams, SingularEvaluationError,
)


def radius_at(spec: OrbitSpec, theta: float) -> float:
    """Distance from the force center to the orbit point at angle theta."""
    R, l = spec.R, spec.l
    # max() guards the l = R, theta = pi cancellation against a tiny negative
    return math.sqrt(max(R * R + l * l + 2.0 * R * l * math.cos(theta), 0.0))


def chord_at(spec: OrbitSpec, theta: float) -> float:
    """Signed length of the chord through the particle and the force center.

    Negative values occur only when the force center lies outside the orbit.
    """
    r = radius_at(spec, theta)
    if r <= settings.singular_tolerance * spec.R:
        raise SingularEvaluationError(
            f"orbit passes through the force center at theta={theta}"
        )
    return 2.0 * spec.R * (spec.R + spec.l * math.cos(theta)) / r


def newton_force_on_orbit(spec: OrbitSpec, alpha: float, theta: float) -> float:
    """Signed radial force -4 alpha / (r^2 chord^3); negative is attractive.

    For l = R the chord equals r and this is -4 alpha / r^5.
    """
    r = radius_at(spec, theta)
    chord = chord_at(spec, theta)
    if chord == 0.0:
        raise SingularEvaluationError(f"chord vanishes at theta={theta}")
    return -4.0 * alpha / (r * r * chord ** 3)


def kinetic_on_orbit(spec: OrbitSpec, alpha: float, theta: float) -> float:
    """Zero-energy kinetic energy alpha / (4 R^2 (R + l cos theta)^2)."""
    k = spec.R + spec.l * math.cos(theta)
    if k == 0.0:
        raise SingularEvaluationError(f"orbit speed diverges at theta={theta}")
    return alpha / (4.0 * spec.R * spec.R * k * k)


def _denominator(params: PotentialParams, r2: float) -> float:
    """r^2 + sigma, rejected where the potential has a pole."""
    d = r2 + params.sigma
    if abs(d) <= settings.singular_tolerance * max(r2, abs(params.sigma)):
        raise SingularEvaluationError(
            f"potential is singular at r^2={r2} for sigma={params.sigma}"
        )
    return d


def potential(params: PotentialParams, r: float) -> float:
    """V(r) = -alpha / (r^2 + sigma)^2."""
    if r < 0:
        raise ValueError(f"radius must be non-negative, got {r}")
    d = _denominator(params, r * r)
    return -params.alpha / (d * d)


def radial_force(params: PotentialParams, r: float) -> float:
    """Signed radial component -dV/dr = -4 alpha r / (r^2 + sigma)^3."""
    d = _denominator(params, r * r)
    return -4.0 * params.alpha * r / (d * d * d)


def force_vector(params: PotentialParams, x: float, y: float) -> Tuple[float, float]:
    """F = -grad V = -4 alpha (x, y) / (r^2 + sigma)^3."""
    d = _denominator(params, x * x + y * y)
    k = -4.0 * params.alpha / (d * d * d)
    return (k * x, k * y)


def kinetic_energy(params: PotentialParams, s: PhaseState) -> float:
    return (s.px * s.px + s.py * s.py) / (2.0 * params.mass)


def hamiltonian(params: PotentialParams, s: PhaseState) -> float:
    """p^2 / 2m + V(|r|)."""
    return kinetic_energy(params, s) + potential(params, s.r)
