"""Conserved quantities, the invariant vector I and the canonical bracket.

All six observables are rational in (x, y, px, py), so their phase-space
gradients are written out in closed form. The central-difference bracket is
kept as an independent oracle.
"""

import math
from typing import Dict, Tuple

import numpy as np

from .interfaces import (
    DomainError, InvariantVector, Observable, PhaseState, PotentialParams,
)
from .potential import force_vector, hamiltonian


def angular_momentum(s: PhaseState) -> float:
    """Lz = x py - y px."""
    return s.x * s.py - s.y * s.px


def virial_q(s: PhaseState) -> float:
    """Q = r . p."""
    return s.x * s.px + s.y * s.py


def _sphere_radius(params: PotentialParams) -> float:
    if params.sigma <= 0:
        raise DomainError(
            f"invariant vector needs sigma > 0, got sigma={params.sigma}"
        )
    return math.sqrt(params.sigma)


def invariant_vector(params: PotentialParams, s: PhaseState) -> InvariantVector:
    """(Ix, Iy) = -(1/2calR) [r Lz + (-y, x) Q + (-py, px) calR^2], Iz = Lz."""
    calR = _sphere_radius(params)
    lz = angular_momentum(s)
    q = virial_q(s)
    k = -0.5 / calR
    ix = k * (s.x * lz - s.y * q - s.py * params.sigma)
    iy = k * (s.y * lz + s.x * q + s.px * params.sigma)
    return InvariantVector(Ix=ix, Iy=iy, Iz=lz)


def orientation_ratio(params: PotentialParams, s: PhaseState) -> float:
    """Iy / Ix, the zero-energy integral independent of H and Lz."""
    inv = invariant_vector(params, s)
    if inv.Ix == 0.0:
        raise DomainError("orientation ratio undefined where Ix = 0")
    return inv.Iy / inv.Ix


def superintegrable_set(params: PotentialParams, s: PhaseState) -> Tuple[float, float, float]:
    """(H, Lz, Iy/Ix): three functionally independent integrals at E = 0."""
    return (hamiltonian(params, s), angular_momentum(s), orientation_ratio(params, s))


def evaluate(observable: Observable, params: PotentialParams, s: PhaseState) -> float:
    """Value of one observable at ``s``."""
    if observable is Observable.H:
        return hamiltonian(params, s)
    if observable in (Observable.LZ, Observable.IZ):
        return angular_momentum(s)
    if observable is Observable.Q:
        return virial_q(s)
    inv = invariant_vector(params, s)
    if observable is Observable.IX:
        return inv.Ix
    if observable is Observable.IY:
        return inv.Iy
    raise DomainError(f"unknown observable: {observable}")


def snapshot(params: PotentialParams, s: PhaseState) -> Dict[str, float]:
    """All six observables; I components are NaN when sigma <= 0."""
    values = {
        "H": hamiltonian(params, s),
        "Lz": angular_momentum(s),
        "Q": virial_q(s),
    }
    if params.sigma > 0:
        inv = invariant_vector(params, s)
        values.update(Ix=inv.Ix, Iy=inv.Iy, Iz=inv.Iz)
    else:
        values.update(Ix=math.nan, Iy=math.nan, Iz=values["Lz"])
    return values


def gradient(observable: Observable, params: PotentialParams, s: PhaseState) -> np.ndarray:
    """Closed-form (d/dx, d/dy, d/dpx, d/dpy) of an observable."""
    x, y, px, py = s.x, s.y, s.px, s.py

    if observable is Observable.H:
        fx, fy = force_vector(params, x, y)
        return np.array([-fx, -fy, px / params.mass, py / params.mass])

    if observable in (Observable.LZ, Observable.IZ):
        return np.array([py, -px, -y, x])

    if observable is Observable.Q:
        return np.array([px, py, x, y])

    calR = _sphere_radius(params)
    k = -0.5 / calR
    lz = angular_momentum(s)
    q = virial_q(s)
    if observable is Observable.IX:
        return k * np.array([2.0 * lz, -2.0 * q, -2.0 * x * y, x * x - y * y - params.sigma])
    if observable is Observable.IY:
        return k * np.array([2.0 * q, 2.0 * lz, x * x - y * y + params.sigma, 2.0 * x * y])
    raise DomainError(f"unknown observable: {observable}")


def _bracket_from_gradients(ga: np.ndarray, gb: np.ndarray) -> float:
    return float(ga[0] * gb[2] + ga[1] * gb[3] - ga[2] * gb[0] - ga[3] * gb[1])


def poisson_bracket(
    a: Observable, b: Observable, params: PotentialParams, s: PhaseState
) -> float:
    """{A, B} = dA/dr . dB/dp - dA/dp . dB/dr at ``s``."""
    return _bracket_from_gradients(gradient(a, params, s), gradient(b, params, s))


def finite_difference_gradient(
    observable: Observable, params: PotentialParams, s: PhaseState
) -> np.ndarray:
    """Central differences, step cbrt(eps) scaled per coordinate."""
    base = s.as_array()
    step0 = np.cbrt(np.finfo(float).eps)
    grad = np.empty(4)
    for i in range(4):
        h = step0 * max(1.0, abs(base[i]))
        plus, minus = base.copy(), base.copy()
        plus[i] += h
        minus[i] -= h
        f_plus = evaluate(observable, params, PhaseState.from_array(plus, s.t))
        f_minus = evaluate(observable, params, PhaseState.from_array(minus, s.t))
        grad[i] = (f_plus - f_minus) / (plus[i] - minus[i])
    return grad


def finite_difference_bracket(
    a: Observable, b: Observable, params: PotentialParams, s: PhaseState
) -> float:
    """Bracket oracle independent of the closed-form partials."""
    return _bracket_from_gradients(
        finite_difference_gradient(a, params, s),
        finite_difference_gradient(b, params, s),
    )
