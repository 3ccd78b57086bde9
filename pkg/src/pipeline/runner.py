"""Scenario orchestration: run the declared tasks, write files, build the report."""

import math
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import structlog

from ..config.scenario import (
    FigureKind, OutputFormat, ScenarioConfig, ScenarioError, Task,
)
from ..config.settings import settings
from ..duality.interfaces import DualitySpec
from ..duality.maps import (
    circle_inversion, great_circle_image, inversion_radius, line_orbit_image,
    orbit_great_circle, quartic_limit_defect, random_great_circle,
    sphere_angular_momentum, sphere_angular_speed, stereographic_project,
)
from ..geometry.analysis import closure_defect, equator_crossings
from ..geometry.fitting import fit_circle
from ..geometry.interfaces import Circle, DegenerateGeometryError
from ..model.interfaces import Observable, OrbitSpec, PhaseState, Regime
from ..model.observables import (
    finite_difference_bracket, invariant_vector, poisson_bracket, snapshot,
    superintegrable_set,
)
from ..output.csv_writer import write_trajectory_csv
from ..output.figures import (
    HYPERBOLIC_OFFSETS, ZERO_ENERGY_OFFSETS, FigureData, FigureDataError,
    family_data, geometry_data, hyperbolic_data, orbit_frames, stereographic_data,
    trajectory_data, write_figure,
)
from ..output.files import write_text_atomic
from ..trajectory.analytic import orbit_state, sample_analytic, solve_theta
from ..trajectory.integrator import integrate, integrate_symplectic
from ..trajectory.interfaces import (
    AnalyticTrajectory, BoundaryProximityError, StepSizeUnderflowError, Trajectory,
)
from ..trajectory.sphere import reparametrize_time, sphere_free_motion
from ..validation.interfaces import CheckRecord, VerificationReport

logger = structlog.get_logger()

_CYCLIC = (
    (Observable.IX, Observable.IY, Observable.IZ),
    (Observable.IY, Observable.IZ, Observable.IX),
    (Observable.IZ, Observable.IX, Observable.IY),
)


class ScenarioRunner:
    """Executes one scenario's tasks in order."""

    def __init__(self, config: ScenarioConfig, out_dir: Union[str, Path, None] = None):
        self.config = config
        self.params = config.params
        self.spec: Optional[OrbitSpec] = (
            config.initial.orbit.to_spec() if config.initial.orbit else None
        )
        self.out_dir = Path(
            out_dir or config.output.directory or settings.outputs_dir / config.name
        )
        self.rng = np.random.default_rng(config.effective_seed)
        self.report = VerificationReport(name=config.name, metadata=self._metadata())
        self._trajectories: Dict[str, Trajectory] = {}

        logger.info(
            "scenario_initialized",
            scenario=config.name,
            tasks=[t.value for t in config.tasks],
            regime=self.params.regime.value,
            out_dir=str(self.out_dir),
        )

    def _metadata(self) -> dict:
        integration = self.config.integration
        return {
            "scenario": self.config.name,
            "seed": self.config.effective_seed,
            "tasks": [t.value for t in self.config.tasks],
            "potential": self.config.potential.model_dump(),
            "integration": {
                "method": integration.method,
                "rtol": integration.rtol,
                "atol": integration.atol,
                "samples": integration.samples,
            },
        }

    def _wants(self, fmt: OutputFormat) -> bool:
        return fmt in self.config.output.formats

    @property
    def _zero_energy_orbit(self) -> bool:
        return self.spec is not None and self.spec.matches(self.params)

    def run(self) -> VerificationReport:
        handlers = {
            Task.SIMULATE: self._simulate,
            Task.ANALYTIC: self._analytic,
            Task.DUALITY: self._duality,
            Task.INVARIANTS: self._invariants,
            Task.FIGURES: self._figures,
        }
        for task in self.config.tasks:
            logger.info("task_started", scenario=self.config.name, task=task.value)
            handlers[task]()

        if self._wants(OutputFormat.JSON):
            path = self.out_dir / "report.json"
            self.report.files.append(path.name)
            write_text_atomic(path, self.report.to_json())

        logger.info(
            "scenario_completed",
            scenario=self.config.name,
            passed=self.report.passed,
            records=len(self.report.records),
            files=len(self.report.files),
        )
        return self.report

    def _check(self, *args, **kwargs) -> CheckRecord:
        return self.report.add(CheckRecord.compare(*args, **kwargs))

    def _write_csv(self, name: str, traj: Trajectory) -> None:
        if self._wants(OutputFormat.CSV):
            path = write_trajectory_csv(traj, self.out_dir / f"{name}.csv")
            self.report.files.append(path.name)

    def initial_state(self) -> PhaseState:
        if self.spec is not None:
            return orbit_state(self.spec, self.params.alpha, self.params.mass, 0.0)
        return self.config.initial.state.to_state()

    def default_t_end(self, s0: PhaseState) -> float:
        if self.config.integration.t_end is not None:
            return self.config.integration.t_end
        traj = AnalyticTrajectory.from_orbit(self.spec, self.params.alpha, self.params.mass)
        if self.spec.regime is Regime.QUARTIC:
            # stop short of the force center reached at theta = pi
            return s0.t + 0.8 * math.pi * self.spec.R / abs(traj.c)
        return s0.t + traj.period

    def _simulate(self) -> Trajectory:
        if "simulate" in self._trajectories:
            return self._trajectories["simulate"]
        integration = self.config.integration
        s0 = self.initial_state()
        t_end = self.default_t_end(s0)
        if t_end <= s0.t:
            raise ScenarioError(f"integration.t_end={t_end} must exceed the initial time {s0.t}")

        at_border = False
        try:
            if integration.method == "stormer_verlet":
                n_steps = math.ceil((t_end - s0.t) / integration.dt)
                every = max(1, round(n_steps / (integration.samples - 1)))
                traj = integrate_symplectic(self.params, s0, t_end, integration.dt, every=every)
            else:
                traj = integrate(
                    self.params, s0, t_end, rtol=integration.rtol, atol=integration.atol,
                    samples=integration.samples, max_step=integration.max_step,
                )
        except BoundaryProximityError as e:
            logger.warning("simulation_reached_border", scenario=self.config.name, t=e.last_state.t)
            traj, at_border = e.partial, True
            self._check("simulate.border", 0.0, 1.0, ["r^2", "-sigma"],
                        f"run stopped at the disk border at t={e.last_state.t}")
        except StepSizeUnderflowError as e:
            logger.error("simulation_failed", scenario=self.config.name, error=str(e))
            traj = e.partial
            self._check("simulate.completed", math.inf, 1.0, ["t_reached", "t_end"], str(e))

        self._trajectories["simulate"] = traj
        if traj is None or len(traj) == 0:
            return traj
        self._write_csv("simulate", traj)

        h = traj.column("H")
        drift = float(np.max(np.abs(h - h[0])))
        self.report.metadata["simulate_energy_drift"] = drift
        adaptive = integration.method == "dopri54"
        if adaptive and not at_border:
            relative = abs(h[0]) > 1e-12
            self._check(
                "simulate.energy_drift", drift / abs(h[0]) if relative else drift, 1e-8, ["H"],
                "relative energy drift" if relative else "absolute energy drift at E = 0",
            )

        if adaptive and self._zero_energy_orbit and self.spec.regime is Regime.SPHERICAL:
            period = AnalyticTrajectory.from_orbit(self.spec, self.params.alpha, self.params.mass).period
            if traj.span >= period * (1.0 - 1e-12):
                fit = fit_circle(traj.positions[:-1])
                cx, cy = self.spec.center
                tol = 1e-6 * self.spec.R
                self._check("simulate.center", math.hypot(fit.cx - cx, fit.cy - cy), tol,
                            ["fitted center", "l n"], "orbit centered at l n")
                self._check("simulate.radius", abs(fit.radius - self.spec.R), tol,
                            ["fitted radius", "R"], "orbit radius R")
                self._check("simulate.closure", closure_defect(traj, period), tol,
                            ["position(t0)", "position(t0 + period)"], "orbit closes after one period")
        return traj

    def _analytic(self) -> Trajectory:
        if "analytic" in self._trajectories:
            return self._trajectories["analytic"]
        traj = AnalyticTrajectory.from_orbit(self.spec, self.params.alpha, self.params.mass)
        times = np.linspace(0.0, traj.period, self.config.integration.samples)
        run = sample_analytic(traj, times)
        self._trajectories["analytic"] = run
        self._write_csv("analytic", run)

        h = run.column("H")
        self._check("analytic.energy", float(np.max(np.abs(h))), 1e-12, ["H"],
                    "analytic states have zero energy")
        cx, cy = self.spec.center
        off_circle = max(abs(math.hypot(s.x - cx, s.y - cy) - self.spec.R) for s in run.states)
        self._check("analytic.on_circle", off_circle, 1e-12 * max(1.0, self.spec.R + self.spec.l),
                    ["|r - l n|", "R"], "analytic positions lie on the orbit circle")
        return run

    def _duality(self) -> None:
        if self.spec.regime is Regime.QUARTIC:
            self._quartic_duality()
        else:
            self._spherical_duality()

    def _spherical_duality(self) -> None:
        spec, params = self.spec, self.params
        duality = DualitySpec.for_sphere(params.alpha, params.length_scale)
        R_sphere, Ep = duality.R_sphere, duality.Ep
        a, b = orbit_great_circle(spec)
        image = great_circle_image(R_sphere, a, b)
        cx, cy = spec.center
        scale = max(1.0, spec.R)
        self._check("duality.image_circle",
                    max(math.hypot(image.circle.cx - cx, image.circle.cy - cy), abs(image.circle.radius - spec.R)),
                    1e-12 * scale, ["great-circle image", "orbit circle"],
                    "orbit is the projection of a great circle")
        try:
            antipodal = equator_crossings(Circle(cx, cy, spec.R), R_sphere)[2]
            detail = "orbit crosses the equator circle at antipodal points"
        except DegenerateGeometryError:
            # l = 0: the orbit is the equator circle itself
            antipodal = max(math.hypot(cx, cy), abs(spec.R - R_sphere))
            detail = "orbit coincides with the equator circle"
        self._check("duality.antipodality", antipodal, 1e-9 * scale, ["|p1 + p2|"], detail)

        residual = antipodal = 0.0
        for _ in range(20):
            fitted = great_circle_image(R_sphere, *random_great_circle(self.rng, min_tilt=0.1)).fitted
            residual = max(residual, fitted.rms_residual)
            antipodal = max(antipodal, equator_crossings(fitted, R_sphere)[2])
        self._check("duality.random_images", residual, 1e-10 * max(1.0, R_sphere), ["rms residual"],
                    "random great circles project to circles")
        self._check("duality.random_antipodality", antipodal, 1e-9 * max(1.0, R_sphere), ["|p1 + p2|"],
                    "random great-circle images cross the equator at antipodal points")

        s0 = orbit_state(spec, params.alpha, params.mass, 0.0)
        momentum = sphere_angular_momentum(params, a, b).as_array()
        invariant = invariant_vector(params, s0).as_array()
        self._check("duality.angular_momentum", float(np.max(np.abs(momentum - invariant))),
                    1e-12 * max(1.0, float(np.max(np.abs(invariant)))),
                    ["m calR^2 s' x ds'/dt'", "I"], "sphere angular momentum equals the invariant vector")

        omega = sphere_angular_speed(params.alpha, R_sphere, params.mass)
        dual_times = np.linspace(0.0, 2.0 * math.pi / omega, max(4097, 4 * self.config.integration.samples + 1))
        path = [
            (stereographic_project(R_sphere, sphere_free_motion(R_sphere, Ep, params.mass, a, b, tp)), tp)
            for tp in dual_times
        ]
        plane = reparametrize_time(params, path)
        traj = AnalyticTrajectory.from_orbit(spec, params.alpha, params.mass)
        positions = np.array([p for p, _ in plane]) - np.array(spec.center)
        # rotate into the orbit frame where theta is counted from n
        phi = np.unwrap(np.arctan2(positions[:, 1], positions[:, 0])) - spec.n_angle
        phi -= 2.0 * math.pi * round(phi[0] / (2.0 * math.pi))
        exact = np.array([solve_theta(traj, t) for _, t in plane])
        self._check("duality.time_dilation", float(np.max(np.abs(phi - exact))), 1e-8,
                    ["theta(projected sphere motion)", "solve_theta"],
                    "sphere free motion reproduces the trajectory law after the time change")
        self.report.metadata["dual_energy"] = Ep

    def _quartic_duality(self) -> None:
        spec, params = self.spec, self.params
        # E' is free at E = 0; E' = alpha puts the inversion circle at unit radius
        R0 = inversion_radius(params.alpha, params.alpha)
        duality = DualitySpec.for_inversion(params.alpha, 0.0, params.alpha, d=R0 * R0 / (2.0 * spec.R))
        image = line_orbit_image(duality.R0, duality.d)
        n = spec.n_angle
        cos_n, sin_n = math.cos(n), math.sin(n)
        rotated = (image.cx * cos_n - image.cy * sin_n, image.cx * sin_n + image.cy * cos_n)

        run = self._quartic_run()
        fit = fit_circle(run.positions)
        tol = 1e-6 * spec.R
        self._check("duality.line_image",
                    max(math.hypot(fit.cx - rotated[0], fit.cy - rotated[1]), abs(fit.radius - image.radius)),
                    tol, ["fitted orbit circle", "inverted line x = d"],
                    "quartic orbit is the inversion image of a straight line")
        # undo the orbit rotation, then invert back onto the line
        line = max(
            abs(circle_inversion(duality.R0, (x * cos_n + y * sin_n, -x * sin_n + y * cos_n))[0] - duality.d)
            for x, y in run.positions
        )
        self._check("duality.inverted_orbit", line / duality.d, 1e-6, ["x' of inverted orbit", "d"],
                    "inverted orbit points lie on the line x' = d")
        self.report.metadata["inversion"] = {"R0": duality.R0, "d": duality.d, "Rimage": duality.Rimage}

        scale = spec.R
        near = quartic_limit_defect(scale, 100.0 * scale)
        far = quartic_limit_defect(scale, 1000.0 * scale)
        self._check("duality.quartic_scaling", abs(near / far / 100.0 - 1.0), 0.1,
                    ["defect ratio", "100"], "stereographic map degenerates into the inversion")

    def _quartic_run(self) -> Trajectory:
        if "simulate" in self._trajectories and self.config.integration.method == "dopri54":
            run = self._trajectories["simulate"]
            if run is not None and len(run) >= 3:
                return run
        integration = self.config.integration
        s0 = orbit_state(self.spec, self.params.alpha, self.params.mass, 0.0)
        c = AnalyticTrajectory.from_orbit(self.spec, self.params.alpha, self.params.mass).c
        return integrate(
            self.params, s0, 0.8 * math.pi * self.spec.R / abs(c), rtol=integration.rtol,
            atol=integration.atol, samples=integration.samples, max_step=integration.max_step,
        )

    def _invariants(self) -> None:
        params = self.params
        analytic = self._zero_energy_orbit and self.spec.regime is Regime.SPHERICAL
        if analytic:
            traj = self._trajectories.get("analytic") or self._analytic()
        else:
            traj = self._trajectories.get("simulate") or self._simulate()
        if traj is None or len(traj) == 0:
            return

        h, lz = traj.column("H"), traj.column("Lz")
        self._check("invariants.H", float(np.max(np.abs(h - h[0]))) / max(abs(h[0]), 1.0), 1e-8, ["H"],
                    "energy drift")
        if abs(lz[0]) > 0:
            self._check("invariants.Lz", float(np.max(np.abs(lz / lz[0] - 1.0))), 1e-8, ["Lz"],
                        "relative angular momentum drift")

        if params.sigma <= 0:
            return

        states = traj.states[:: max(1, len(traj) // 16)]
        closed = fd = 0.0
        for s in states:
            values = snapshot(params, s)
            for a, b, c in _CYCLIC:
                closed = max(closed, abs(poisson_bracket(a, b, params, s) - values[c.value]))
                fd = max(fd, abs(finite_difference_bracket(a, b, params, s) - values[c.value]))
        self._check("invariants.brackets", closed, 1e-9, ["{I_i, I_i+1}", "I_i+2"], "closed-form bracket algebra")
        self._check("invariants.brackets_fd", fd, 1e-6, ["{I_i, I_i+1}", "I_i+2"], "finite-difference bracket algebra")

        if abs(h[0]) < 1e-12:
            expected = params.mass * params.alpha / (2.0 * params.sigma)
            norm = max(abs(invariant_vector(params, s).norm2 / expected - 1.0) for s in traj.states)
            self._check("invariants.norm", norm, 1e-10 if analytic else 1e-8, ["|I|^2", "m alpha / (2 calR^2)"],
                        "norm identity on zero-energy states")
            planar = float(np.max(np.hypot(traj.column("Ix"), traj.column("Iy"))))
            floor = 1e-9 * math.sqrt(expected)
            if planar < floor:
                # centered orbit: I lies on the z axis and atan2(Iy, Ix) is noise
                self._check("invariants.planar_vanishes", planar, floor, ["|(Ix, Iy)|", "0"],
                            "planar invariant components vanish for a centered orbit")
            else:
                orientation = np.unwrap([invariant_vector(params, s).orientation for s in traj.states])
                self._check("invariants.orientation", float(np.max(np.abs(orientation - orientation[0]))), 1e-8,
                            ["atan2(Iy, Ix)"], "orientation integral conserved at zero energy")
            if planar >= floor and traj.column("Ix")[0] != 0.0:
                h0, l0, ratio = superintegrable_set(params, traj.states[0])
                self.report.metadata["integrals"] = {"H": h0, "Lz": l0, "Iy/Ix": ratio}

    def _figures(self) -> None:
        for kind in self.config.figures:
            data = self._figure_data(kind)
            if self._wants(OutputFormat.SVG):
                path = write_figure(kind, data, self.out_dir / f"{kind.value}.svg")
                self.report.files.append(path.name)

    def _figure_data(self, kind: FigureKind) -> FigureData:
        sigma = self.params.sigma
        n = self.spec.n_angle if self.spec else 0.0

        if kind is FigureKind.GEOMETRY:
            if self.spec is None:
                raise FigureDataError("fig1 needs initial.orbit")
            return geometry_data(self.spec, self.params.alpha)

        if kind is FigureKind.ZERO_ENERGY_FAMILY:
            if sigma <= 0:
                raise FigureDataError("fig2 needs sigma > 0")
            specs = [OrbitSpec(R=math.sqrt(sigma + l * l), l=l, n_angle=n) for l in ZERO_ENERGY_OFFSETS]
            return family_data(specs, math.sqrt(sigma))

        if kind is FigureKind.STEREOGRAPHIC:
            if sigma <= 0:
                raise FigureDataError("fig3 needs sigma > 0")
            if self._zero_energy_orbit and self.spec.regime is Regime.SPHERICAL:
                frames = orbit_frames(self.spec, self.rng)
            else:
                frames = [random_great_circle(self.rng, min_tilt=0.1) for _ in range(3)]
            return stereographic_data(math.sqrt(sigma), frames)

        if kind is FigureKind.HYPERBOLIC_FAMILY:
            if sigma >= 0:
                raise FigureDataError("fig4 needs sigma < 0")
            border = math.sqrt(-sigma)
            specs = [
                OrbitSpec(R=border * math.sqrt(k * k - 1.0), l=border * k, n_angle=n)
                for k in HYPERBOLIC_OFFSETS
            ]
            return hyperbolic_data(specs, border)

        traj = (
            self._trajectories.get("simulate")
            or self._trajectories.get("analytic")
            or (self._analytic() if self._zero_energy_orbit and self.spec.regime is Regime.SPHERICAL
                else self._simulate())
        )
        if not traj:
            raise FigureDataError("trajectory figure has no samples to draw")
        reference = math.sqrt(abs(sigma)) if sigma != 0 else None
        return trajectory_data(traj, reference)


def run_scenario(
    config: ScenarioConfig, out_dir: Union[str, Path, None] = None, tasks: Optional[List[Task]] = None
) -> VerificationReport:
    """Run a scenario (optionally a subset of its tasks) and write its files."""
    if tasks is not None:
        config = config.with_overrides(tasks=list(tasks))
    return ScenarioRunner(config, out_dir=out_dir).run()
