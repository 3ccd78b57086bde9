"""SVG figures of orbit families and projections.

Rendering goes through a bare matplotlib Figure with the SVG canvas, a fixed
hash salt and no date metadata, so identical data gives identical bytes.
Element groups carry ids (orbit-<i>, reference-circle, boundary-circle,
diameter, chord) for downstream inspection.
"""

import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure
from matplotlib.patches import Circle as CirclePatch
import numpy as np
import structlog

from ..config.scenario import FigureKind
from ..duality.interfaces import ImageKind
from ..duality.maps import great_circle_image, orbit_great_circle, random_great_circle
from ..geometry.interfaces import Point
from ..model.interfaces import OrbitError, OrbitSpec, SpherePoint
from ..trajectory.analytic import orbit_state
from ..trajectory.interfaces import Trajectory
from .files import write_text_atomic

logger = structlog.get_logger()

ZERO_ENERGY_OFFSETS = (0.5, 1.0, 2.0)
HYPERBOLIC_OFFSETS = (1.25, 2.0, 3.0)

_RC = {"svg.hashsalt": "off-center-orbits", "svg.fonttype": "none"}
_ORBIT_COLORS = ("#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e")


class FigureDataError(OrbitError):
    """Figure data is incomplete for the requested kind."""


@dataclass(frozen=True)
class FigureData:
    """Geometry to draw; paths are (n, 2) arrays in plane coordinates."""
    orbits: Tuple[np.ndarray, ...]
    reference_radius: Optional[float] = None
    diameter: Optional[Tuple[Point, Point]] = None
    chord: Optional[Tuple[Point, Point]] = None
    markers: Tuple[Tuple[str, Point], ...] = ()
    lines: Tuple[Tuple[Point, Point], ...] = ()
    limit: Optional[float] = None
    title: str = ""


def circle_path(center: Point, radius: float, samples: int = 361) -> np.ndarray:
    angles = np.linspace(0.0, 2.0 * math.pi, samples)
    return np.column_stack([center[0] + radius * np.cos(angles), center[1] + radius * np.sin(angles)])


def _require(kind: FigureKind, data: FigureData) -> None:
    if not data.orbits and not data.lines:
        raise FigureDataError(f"{kind.value}: no orbits to draw")
    needs_reference = kind in (
        FigureKind.ZERO_ENERGY_FAMILY, FigureKind.STEREOGRAPHIC, FigureKind.HYPERBOLIC_FAMILY,
    )
    if needs_reference and data.reference_radius is None:
        raise FigureDataError(f"{kind.value}: reference radius missing")
    if kind is FigureKind.ZERO_ENERGY_FAMILY and data.diameter is None:
        raise FigureDataError(f"{kind.value}: diameter segment missing")
    if kind is FigureKind.GEOMETRY and data.chord is None:
        raise FigureDataError(f"{kind.value}: chord segment missing")
    for path in data.orbits:
        if np.asarray(path).ndim != 2 or len(path) < 2:
            raise FigureDataError(f"{kind.value}: orbit paths need at least two points")


def emit_figure(kind: FigureKind, data: FigureData) -> str:
    """Render one figure to an SVG document (y up, isotropic scale)."""
    _require(kind, data)

    fig = Figure(figsize=(6.0, 6.0))
    FigureCanvasSVG(fig)
    ax = fig.add_subplot()
    ax.set_aspect("equal", adjustable="datalim")

    for i, path in enumerate(data.orbits):
        path = np.asarray(path, dtype=float)
        (line,) = ax.plot(path[:, 0], path[:, 1], "-", lw=1.4, color=_ORBIT_COLORS[i % len(_ORBIT_COLORS)])
        line.set_gid(f"orbit-{i}")

    offset = len(data.orbits)
    for j, (p, q) in enumerate(data.lines):
        (line,) = ax.plot([p[0], q[0]], [p[1], q[1]], "-", lw=1.4,
                          color=_ORBIT_COLORS[(offset + j) % len(_ORBIT_COLORS)])
        line.set_gid(f"orbit-{offset + j}")

    if data.reference_radius is not None:
        gid = "boundary-circle" if kind is FigureKind.HYPERBOLIC_FAMILY else "reference-circle"
        ref = CirclePatch((0.0, 0.0), data.reference_radius, fill=False, linestyle="--", lw=1.0, color="black")
        ref.set_gid(gid)
        ax.add_patch(ref)

    if data.diameter is not None:
        (p, q) = data.diameter
        (line,) = ax.plot([p[0], q[0]], [p[1], q[1]], ":", lw=0.8, color="black")
        line.set_gid("diameter")

    if data.chord is not None:
        (p, q) = data.chord
        (line,) = ax.plot([p[0], q[0]], [p[1], q[1]], "--", lw=0.8, color="gray")
        line.set_gid("chord")

    for name, point in data.markers:
        (marker,) = ax.plot([point[0]], [point[1]], "o", ms=4, color="black")
        marker.set_gid(name)

    if data.limit is not None:
        ax.set_xlim(-data.limit, data.limit)
        ax.set_ylim(-data.limit, data.limit)
    ax.axhline(0.0, lw=0.3, color="lightgray")
    ax.axvline(0.0, lw=0.3, color="lightgray")
    if data.title:
        ax.set_title(data.title)

    buffer = io.StringIO()
    with matplotlib.rc_context(_RC):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def write_figure(kind: FigureKind, data: FigureData, path: Union[str, Path]) -> Path:
    svg = emit_figure(kind, data)
    written = write_text_atomic(path, svg)
    logger.info("figure_written", kind=kind.value, path=str(written), orbits=len(data.orbits))
    return written


def geometry_data(spec: OrbitSpec, alpha: float = 1.0, theta: float = 1.0) -> FigureData:
    """One orbit with force center, orbit center, particle and chord."""
    px, py = orbit_state(spec, alpha, 1.0, theta).position
    cx, cy = spec.center
    r = math.hypot(px, py)
    if r == 0.0:
        raise FigureDataError("fig1: particle sits on the force center")
    ux, uy = -px / r, -py / r
    # second root of |P + s u - C| = R along the line through the origin
    s = -2.0 * (ux * (px - cx) + uy * (py - cy))
    return FigureData(
        orbits=(circle_path((cx, cy), spec.R),),
        chord=((px, py), (px + s * ux, py + s * uy)),
        markers=(("force-center", (0.0, 0.0)), ("orbit-center", (cx, cy)), ("particle", (px, py))),
        title="Off-center circular orbit",
    )


def family_data(specs: Sequence[OrbitSpec], reference_radius: float) -> FigureData:
    """Zero-energy orbits sharing n and sigma, the radius-calR circle and its diameter."""
    if not specs:
        raise FigureDataError("fig2: empty orbit list")
    n = specs[0].n_angle
    ex, ey = -math.sin(n), math.cos(n)
    return FigureData(
        orbits=tuple(circle_path(s.center, s.R) for s in specs),
        reference_radius=reference_radius,
        diameter=((-reference_radius * ex, -reference_radius * ey), (reference_radius * ex, reference_radius * ey)),
        title="Zero-energy orbits",
    )


def hyperbolic_data(specs: Sequence[OrbitSpec], border_radius: float) -> FigureData:
    """Orbit circles meeting the disk border of radius calR~."""
    if not specs:
        raise FigureDataError("fig4: empty orbit list")
    return FigureData(
        orbits=tuple(circle_path(s.center, s.R) for s in specs),
        reference_radius=border_radius,
        title="Orbits in the disk",
    )


def stereographic_data(R_sphere: float, frames: Sequence[Tuple[SpherePoint, SpherePoint]]) -> FigureData:
    """Plane images of great circles with the equator circle."""
    if not frames:
        raise FigureDataError("fig3: no great circles")
    orbits, lines = [], []
    limit = 4.0 * R_sphere
    for a, b in frames:
        image = great_circle_image(R_sphere, a, b)
        if image.kind is ImageKind.LINE:
            dx, dy = image.direction
            lines.append(((-limit * dx, -limit * dy), (limit * dx, limit * dy)))
        else:
            orbits.append(circle_path(image.circle.center, image.circle.radius))
    return FigureData(
        orbits=tuple(orbits), lines=tuple(lines), reference_radius=R_sphere,
        limit=limit, title="Stereographic images of great circles",
    )


def trajectory_data(traj: Trajectory, reference_radius: Optional[float] = None) -> FigureData:
    if len(traj) < 2:
        raise FigureDataError("trajectory: fewer than two samples")
    return FigureData(
        orbits=(traj.positions,),
        reference_radius=reference_radius,
        markers=(("force-center", (0.0, 0.0)),),
        title="Trajectory",
    )


def orbit_frames(spec: OrbitSpec, rng: np.random.Generator, extra: int = 2):
    """The orbit's own great circle plus seeded random ones."""
    frames = [orbit_great_circle(spec)]
    frames.extend(random_great_circle(rng, min_tilt=0.1) for _ in range(extra))
    return frames
