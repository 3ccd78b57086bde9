"""Circle inversion, the stereographic pair and the straight-line images.

The sphere is the unit sphere of directions s' scaled by calR in the plane
formulas: projection is from the north pole onto the equatorial plane.
"""

import math
from typing import Tuple

import numpy as np

from ..config.settings import settings
from ..geometry.fitting import fit_circle
from ..geometry.interfaces import Circle, DegenerateGeometryError
from ..model.interfaces import (
    DomainError, InvariantVector, OrbitSpec, PhaseState, PotentialParams, Regime,
    SpherePoint,
)
from ..model.potential import potential
from ..trajectory.analytic import orbit_state
from ..trajectory.sphere import sphere_free_motion, sphere_velocity
from .interfaces import GreatCircleImage, ImageKind

Position = Tuple[float, float]

_PROJECTION_GUARD = 1e-15
_FRAME_TOLERANCE = 1e-12
# fit only samples below this height; nearer the pole images run far out
_MAX_FIT_HEIGHT = 0.9


def circle_inversion(R0: float, pos: Position) -> Position:
    """r' = R0^2 / r at the same polar angle."""
    x, y = pos
    r2 = x * x + y * y
    if r2 == 0.0:
        raise DomainError("the origin is the pole of the circle inversion")
    k = R0 * R0 / r2
    return (k * x, k * y)


def line_orbit_image(R0: float, d: float) -> Circle:
    """Image of the line x = d under inversion: center (R, 0), radius R = R0^2/(2d)."""
    if d <= 0:
        raise DomainError(f"line offset must be positive, got {d}")
    radius = R0 * R0 / (2.0 * d)
    return Circle(cx=radius, cy=0.0, radius=radius)


def dual_coupling(E: float, Ep: float, alpha: float) -> float:
    """alpha' = -(E/E') alpha; exactly 0 at E = 0."""
    if Ep <= 0:
        raise DomainError(f"dual energy must be positive, got {Ep}")
    if E > 0:
        raise DomainError(f"source energy must be <= 0, got {E}")
    if E == 0:
        return 0.0
    return -(E / Ep) * alpha


def dual_energy(alpha: float, R_sphere: float) -> float:
    """E' = alpha / (4 calR^4) of free motion on the sphere."""
    if R_sphere <= 0:
        raise DomainError(f"sphere radius must be positive, got {R_sphere}")
    return alpha / (4.0 * R_sphere ** 4)


def inversion_radius(alpha: float, Ep: float) -> float:
    """calR0 = (alpha / E')^(1/4)."""
    if Ep <= 0:
        raise DomainError(f"dual energy must be positive, got {Ep}")
    return (alpha / Ep) ** 0.25


def dual_potential(params: PotentialParams, E: float, Ep: float, r: float) -> float:
    """V' = E E' / V(r), the dual potential at the image of radius r.

    In the quartic case this is alpha' / r'^4 with r' = calR0^2 / r.
    """
    if Ep <= 0:
        raise DomainError(f"dual energy must be positive, got {Ep}")
    return E * Ep / potential(params, r)


def bav_scale_factor(params: PotentialParams, E: float, Ep: float, r: float) -> float:
    """dl'/dl = sqrt((E - V) / (E' - V'))."""
    v = potential(params, r)
    numerator = E - v
    denominator = Ep - E * Ep / v
    if numerator < 0 or denominator <= 0:
        raise DomainError(f"radius r={r} is outside the classically allowed region")
    return math.sqrt(numerator / denominator)


def stereographic_scale_factor(R_sphere: float, r: float) -> float:
    """Sphere length per plane length, 2 calR^2 / (r^2 + calR^2)."""
    return 2.0 * R_sphere * R_sphere / (r * r + R_sphere * R_sphere)


def inversion_scale_factor(R0: float, r: float) -> float:
    """|dr'| / |dr| = R0^2 / r^2."""
    if r == 0:
        raise DomainError("the origin is the pole of the circle inversion")
    return R0 * R0 / (r * r)


def stereographic_lift(R_sphere: float, pos: Position) -> SpherePoint:
    """s' = (2 calR x, 2 calR y, r^2 - calR^2) / (r^2 + calR^2)."""
    x, y = pos
    r2 = x * x + y * y
    s2 = R_sphere * R_sphere
    denom = r2 + s2
    return SpherePoint(
        sx=2.0 * R_sphere * x / denom,
        sy=2.0 * R_sphere * y / denom,
        sz=(r2 - s2) / denom,
    )


def stereographic_project(R_sphere: float, s: SpherePoint) -> Position:
    """calR (sx, sy) / (1 - sz); the north pole has no image."""
    gap = 1.0 - s.sz
    if gap <= _PROJECTION_GUARD:
        raise DomainError("the north pole projects to infinity")
    return (R_sphere * s.sx / gap, R_sphere * s.sy / gap)


def antipodal_project(R_sphere: float, s: SpherePoint) -> Position:
    """Projection of the antipode -s'."""
    return stereographic_project(R_sphere, SpherePoint(sx=-s.sx, sy=-s.sy, sz=-s.sz))


def projection_jacobian(R_sphere: float, s: SpherePoint) -> np.ndarray:
    """d(x, y)/d(s') of the stereographic projection, shape (2, 3)."""
    gap = 1.0 - s.sz
    if gap <= _PROJECTION_GUARD:
        raise DomainError("the north pole projects to infinity")
    k = R_sphere / gap
    return np.array([
        [k, 0.0, k * s.sx / gap],
        [0.0, k, k * s.sy / gap],
    ])


def _frame_normal(a: SpherePoint, b: SpherePoint) -> np.ndarray:
    va, vb = a.as_array(), b.as_array()
    if abs(float(va @ vb)) > _FRAME_TOLERANCE:
        raise DegenerateGeometryError(f"great-circle frame is not orthogonal, a.b = {va @ vb}")
    return np.cross(va, vb)


def great_circle_image(
    R_sphere: float, a: SpherePoint, b: SpherePoint, samples: int = 256
) -> GreatCircleImage:
    """Plane image of the great circle spanned by a and b.

    Circles get the exact center -(calR/nu_z)(nu_x, nu_y) and radius
    calR/|nu_z| along with a fit of the projected samples; great circles
    passing within the pole tolerance of the north pole become lines.
    """
    nu = _frame_normal(a, b)
    normal = (float(nu[0]), float(nu[1]), float(nu[2]))

    if abs(nu[2]) < settings.pole_tolerance:
        direction = np.array([-nu[1], nu[0]])
        direction /= np.linalg.norm(direction)
        return GreatCircleImage(
            kind=ImageKind.LINE, normal=normal,
            direction=(float(direction[0]), float(direction[1])),
        )

    center = -(R_sphere / nu[2]) * nu[:2]
    exact = Circle(cx=float(center[0]), cy=float(center[1]), radius=R_sphere / abs(nu[2]))

    phases = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    va, vb = a.as_array(), b.as_array()
    points = []
    for phase in phases:
        s = math.cos(phase) * va + math.sin(phase) * vb
        if s[2] <= _MAX_FIT_HEIGHT:
            points.append(stereographic_project(R_sphere, SpherePoint.from_vector(s, normalize=True)))

    return GreatCircleImage(
        kind=ImageKind.CIRCLE, normal=normal, circle=exact, fitted=fit_circle(points),
    )


def _require_spherical(spec: OrbitSpec) -> float:
    if spec.regime is not Regime.SPHERICAL:
        raise DomainError(f"stereographic duality needs l < R, got l={spec.l}, R={spec.R}")
    return math.sqrt(spec.sigma)


def orbit_great_circle(spec: OrbitSpec) -> Tuple[SpherePoint, SpherePoint]:
    """Frame (a, b) whose free motion a -> b projects onto the orbit in its sense."""
    R_sphere = _require_spherical(spec)
    p0 = orbit_state(spec, 1.0, 1.0, 0.0).position
    p1 = orbit_state(spec, 1.0, 1.0, spec.sense * 0.5 * math.pi).position
    va = stereographic_lift(R_sphere, p0).as_array()
    ahead = stereographic_lift(R_sphere, p1).as_array()
    nu = np.cross(va, ahead)
    nu /= np.linalg.norm(nu)
    vb = np.cross(nu, va)
    return SpherePoint.from_vector(va), SpherePoint.from_vector(vb, normalize=True)


def sphere_angular_speed(alpha: float, R_sphere: float, mass: float = 1.0) -> float:
    """omega = sqrt(2 E'/m) / calR with E' = alpha/(4 calR^4)."""
    return math.sqrt(2.0 * dual_energy(alpha, R_sphere) / mass) / R_sphere


def dual_plane_state(
    params: PotentialParams, a: SpherePoint, b: SpherePoint, tp: float, t: float = 0.0
) -> PhaseState:
    """Planar zero-energy state induced by sphere free motion at dual time tp.

    Velocity is the projected sphere velocity rescaled by dt'/dt.
    """
    if params.sigma <= 0:
        raise DomainError(f"stereographic duality needs sigma > 0, got {params.sigma}")
    R_sphere = math.sqrt(params.sigma)
    Ep = dual_energy(params.alpha, R_sphere)
    s = sphere_free_motion(R_sphere, Ep, params.mass, a, b, tp)
    ds = sphere_velocity(R_sphere, Ep, params.mass, a, b, tp)

    x, y = stereographic_project(R_sphere, s)
    velocity_dual = projection_jacobian(R_sphere, s) @ ds
    rate = 4.0 * params.sigma ** 2 / (x * x + y * y + params.sigma) ** 2
    px, py = params.mass * rate * velocity_dual
    return PhaseState(x=x, y=y, px=float(px), py=float(py), t=t)


def sphere_angular_momentum(params: PotentialParams, a: SpherePoint, b: SpherePoint) -> InvariantVector:
    """m calR^2 s' x ds'/dt' of the free motion, constant along the great circle."""
    if params.sigma <= 0:
        raise DomainError(f"stereographic duality needs sigma > 0, got {params.sigma}")
    R_sphere = math.sqrt(params.sigma)
    nu = _frame_normal(a, b)
    k = params.mass * params.sigma * sphere_angular_speed(params.alpha, R_sphere, params.mass)
    return InvariantVector(Ix=k * float(nu[0]), Iy=k * float(nu[1]), Iz=k * float(nu[2]))


def quartic_limit_defect(R_sphere: float, r: float, phi: float = 0.3, separation: float = 1e-5) -> float:
    """Relative gap between the stereographic and inversion length factors at radius r.

    Two points at radius r a tangential distance separation*r apart are lifted
    to the sphere and, separately, inverted in the circle of radius
    sqrt(2) calR. For r >> calR both factors approach 2 calR^2/r^2 and their
    relative gap falls off as (calR/r)^2.
    """
    if r <= 0:
        raise DomainError(f"radius must be positive, got {r}")

    p1 = (r * math.cos(phi), r * math.sin(phi))
    p2 = (r * math.cos(phi + separation), r * math.sin(phi + separation))

    s1 = stereographic_lift(R_sphere, p1).as_array()
    s2 = stereographic_lift(R_sphere, p2).as_array()
    sphere = R_sphere * float(np.linalg.norm(s2 - s1))

    R0 = math.sqrt(2.0) * R_sphere
    q1, q2 = circle_inversion(R0, p1), circle_inversion(R0, p2)
    inverted = math.hypot(q2[0] - q1[0], q2[1] - q1[1])

    return abs(sphere - inverted) / inverted


def random_great_circle(rng: np.random.Generator, min_tilt: float = 0.0) -> Tuple[SpherePoint, SpherePoint]:
    """Orthonormal frame of a uniformly random great circle with |nu_z| >= min_tilt."""
    while True:
        nu = rng.normal(size=3)
        nu /= np.linalg.norm(nu)
        if abs(nu[2]) >= min_tilt:
            break
    a = np.cross(nu, rng.normal(size=3))
    a /= np.linalg.norm(a)
    b = np.cross(nu, a)
    return SpherePoint.from_vector(a, normalize=True), SpherePoint.from_vector(b, normalize=True)
