"""Numerical integration of Hamilton's equations for any energy and regime.

DormandPrince54 is the adaptive embedded pair used for verification runs
(PI step control). Steps are clipped to land on every sample time, so sampled
states carry the error of the step itself rather than of an interpolant.
StormerVerlet is a fixed-step symplectic scheme for long-horizon drift studies.
"""

import math
from typing import Optional, Sequence, Union

import numpy as np
import structlog

from ..config.settings import settings
from ..model.interfaces import PhaseState, PotentialParams, SingularEvaluationError
from ..model.observables import snapshot
from ..model.potential import force_vector
from .interfaces import (
    BoundaryProximityError, IntegratorStats, Sample, StepSizeUnderflowError,
    Trajectory,
)

logger = structlog.get_logger()

SampleSpec = Union[int, Sequence[float], np.ndarray, None]

# Dormand-Prince 5(4) tableau; the RHS is autonomous so the nodes are unused
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
# fifth-order minus embedded fourth-order weights
_E = np.array([
    71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40,
])


class HamiltonianSystem:
    """Right-hand side (p/m, F) of the planar central-force problem."""

    def __init__(self, params: PotentialParams):
        self.params = params
        self.evaluations = 0
        self._border2 = -params.sigma if params.sigma < 0 else None

    def __call__(self, y: np.ndarray) -> np.ndarray:
        self.evaluations += 1
        fx, fy = force_vector(self.params, y[0], y[1])
        m = self.params.mass
        return np.array([y[2] / m, y[3] / m, fx, fy])

    def near_border(self, y: np.ndarray) -> bool:
        """True within the boundary tolerance of the sigma < 0 pole circle."""
        if self._border2 is None:
            return False
        r2 = y[0] * y[0] + y[1] * y[1]
        return abs(r2 - self._border2) < settings.boundary_tolerance * self._border2

    def crosses_border(self, y0: np.ndarray, y1: np.ndarray) -> bool:
        """True if a step jumps from one side of the pole circle to the other."""
        if self._border2 is None:
            return False
        side0 = y0[0] * y0[0] + y0[1] * y0[1] > self._border2
        side1 = y1[0] * y1[0] + y1[1] * y1[1] > self._border2
        return side0 != side1


def _sample_times(t0: float, t_end: float, samples: SampleSpec) -> np.ndarray:
    if samples is None:
        samples = settings.samples_per_period + 1
    if isinstance(samples, (int, np.integer)):
        if samples < 2:
            raise ValueError(f"need at least 2 samples, got {samples}")
        return np.linspace(t0, t_end, int(samples))
    times = np.asarray(samples, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("sample times must be a non-empty 1-D sequence")
    if np.any(np.diff(times) <= 0):
        raise ValueError("sample times must be strictly increasing")
    if times[0] < t0 or times[-1] > t_end:
        raise ValueError(f"sample times must lie in [{t0}, {t_end}]")
    return times


class DormandPrince54:
    """Adaptive embedded Runge-Kutta 5(4) pair with PI step-size control."""

    SAFETY = 0.9
    MIN_FACTOR = 0.2
    MAX_FACTOR = 10.0
    BETA = 0.04  # PI stabilization
    EXPONENT = 0.2 - 0.75 * BETA

    def __init__(
        self,
        rtol: float = None,
        atol: float = None,
        max_step: float = None,
        max_steps: int = None,
    ):
        self.rtol = settings.rtol if rtol is None else rtol
        self.atol = settings.atol if atol is None else atol
        if self.rtol <= 0 or self.atol <= 0:
            raise ValueError("rtol and atol must be positive")
        self.max_step = math.inf if max_step is None else max_step
        self.max_steps = max_steps or settings.max_steps

    def _error_norm(self, err: np.ndarray, y0: np.ndarray, y1: np.ndarray) -> float:
        scale = self.atol + self.rtol * np.maximum(np.abs(y0), np.abs(y1))
        return float(np.sqrt(np.mean((err / scale) ** 2)))

    def _initial_step(self, rhs, y0: np.ndarray, f0: np.ndarray, span: float) -> float:
        scale = self.atol + self.rtol * np.abs(y0)
        d0 = np.sqrt(np.mean((y0 / scale) ** 2))
        d1 = np.sqrt(np.mean((f0 / scale) ** 2))
        h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
        h0 = min(h0, span)
        f1 = rhs(y0 + h0 * f0)
        d2 = np.sqrt(np.mean(((f1 - f0) / scale) ** 2)) / h0
        if max(d1, d2) <= 1e-15:
            h1 = max(1e-6, h0 * 1e-3)
        else:
            h1 = (0.01 / max(d1, d2)) ** (1 / 5)
        return min(100 * h0, h1, span, self.max_step)

    def _stages(self, rhs, y: np.ndarray, f0: np.ndarray, h: float) -> np.ndarray:
        k = np.empty((7, y.size))
        k[0] = f0
        for i in range(1, 7):
            k[i] = rhs(y + h * (_A[i] @ k[:i]))
        return k

    def integrate(
        self,
        params: PotentialParams,
        s0: PhaseState,
        t_end: float,
        samples: SampleSpec = None,
    ) -> Trajectory:
        """Integrate from s0 to t_end, returning states at the sample times."""
        if not t_end > s0.t:
            raise ValueError(f"t_end must exceed the initial time {s0.t}, got {t_end}")

        rhs = HamiltonianSystem(params)
        t = s0.t
        y = s0.as_array()
        f = rhs(y)  # rejects a singular initial state
        if rhs.near_border(y):
            raise BoundaryProximityError("initial state on the disk border", s0)

        times = _sample_times(t, t_end, samples)
        out = []
        next_sample = 0

        def emit(tt: float, yy: np.ndarray) -> None:
            state = PhaseState.from_array(yy, tt)
            out.append(Sample(state=state, snapshot=snapshot(params, state)))

        while next_sample < times.size and times[next_sample] <= t:
            emit(float(times[next_sample]), y)
            next_sample += 1

        h = self._initial_step(rhs, y, f, t_end - t)
        err_old = 1e-4
        accepted = rejected = 0
        last_rejected = False

        def stats() -> IntegratorStats:
            return IntegratorStats(
                method="dopri54",
                rtol=self.rtol,
                atol=self.atol,
                accepted_steps=accepted,
                rejected_steps=rejected,
                evaluations=rhs.evaluations,
            )

        def partial() -> Trajectory:
            return Trajectory(samples=tuple(out), params=params, stats=stats())

        while t < t_end:
            if accepted + rejected >= self.max_steps:
                raise StepSizeUnderflowError(
                    f"step budget of {self.max_steps} exhausted at t={t}",
                    PhaseState.from_array(y, t), partial(),
                )
            h = min(h, self.max_step)
            target = float(times[next_sample]) if next_sample < times.size else t_end
            clipped = t + h >= target
            step = target - t if clipped else h
            if step <= 16 * np.finfo(float).eps * max(abs(t), 1.0):
                error_cls = BoundaryProximityError if params.sigma < 0 else StepSizeUnderflowError
                logger.warning("integration_step_underflow", t=t, h=step, sigma=params.sigma)
                raise error_cls(
                    f"step size underflow at t={t} (h={step})",
                    PhaseState.from_array(y, t), partial(),
                )

            try:
                k = self._stages(rhs, y, f, step)
            except SingularEvaluationError:
                # trial stage hit the pole circle
                h = step * self.MIN_FACTOR
                rejected += 1
                last_rejected = True
                continue

            y_new = y + step * (_B @ k)
            err = self._error_norm(step * (_E @ k), y, y_new)

            if err <= 1.0:
                if rhs.crosses_border(y, y_new):
                    h = step * self.MIN_FACTOR
                    rejected += 1
                    last_rejected = True
                    continue
                t = target if clipped else t + step
                y, f = y_new, k[6]
                accepted += 1
                while next_sample < times.size and times[next_sample] <= t:
                    emit(float(times[next_sample]), y)
                    next_sample += 1

                if rhs.near_border(y):
                    logger.warning("integration_reached_border", t=t, sigma=params.sigma)
                    raise BoundaryProximityError(
                        f"trajectory reached the disk border at t={t}",
                        PhaseState.from_array(y, t), partial(),
                    )

                factor = (
                    self.SAFETY * err ** -self.EXPONENT * err_old ** self.BETA
                    if err > 0 else self.MAX_FACTOR
                )
                factor = min(self.MAX_FACTOR, max(self.MIN_FACTOR, factor))
                if last_rejected:
                    factor = min(factor, 1.0)
                # a step shortened to hit a sample does not shrink the proposal
                h = max(h, step * factor) if clipped and factor >= 1.0 else step * factor
                err_old = max(err, 1e-4)
                last_rejected = False
            else:
                factor = max(self.MIN_FACTOR, self.SAFETY * err ** -self.EXPONENT)
                h = step * factor
                rejected += 1
                last_rejected = True

        logger.info(
            "integration_completed",
            method="dopri54",
            t_end=t_end,
            accepted=accepted,
            rejected=rejected,
            evaluations=rhs.evaluations,
        )
        return partial()


class StormerVerlet:
    """Fixed-step kick-drift-kick leapfrog for H = p^2/2m + V(r)."""

    def __init__(self, dt: float):
        if dt <= 0:
            raise ValueError(f"dt must be positive, got {dt}")
        self.dt = dt

    def integrate(
        self,
        params: PotentialParams,
        s0: PhaseState,
        t_end: float,
        every: int = 1,
    ) -> Trajectory:
        """Integrate with constant dt, keeping every ``every``-th state.

        The final step is shortened so the run ends exactly at t_end.
        """
        if not t_end > s0.t:
            raise ValueError(f"t_end must exceed the initial time {s0.t}, got {t_end}")
        span = t_end - s0.t
        # a remainder below rounding level is folded into the last full step
        n_steps = max(1, int(math.ceil(span / self.dt - 1e-9)))
        m = params.mass
        x, y, px, py = s0.x, s0.y, s0.px, s0.py
        fx, fy = force_vector(params, x, y)

        samples = [Sample(state=s0, snapshot=snapshot(params, s0))]
        for i in range(1, n_steps + 1):
            dt = self.dt if i < n_steps else span - (n_steps - 1) * self.dt
            half = 0.5 * dt
            px += half * fx
            py += half * fy
            x += dt * px / m
            y += dt * py / m
            fx, fy = force_vector(params, x, y)
            px += half * fx
            py += half * fy
            if i % every == 0 or i == n_steps:
                t = t_end if i == n_steps else s0.t + i * self.dt
                state = PhaseState(x=x, y=y, px=px, py=py, t=t)
                samples.append(Sample(state=state, snapshot=snapshot(params, state)))

        logger.info("integration_completed", method="stormer_verlet", steps=n_steps)
        return Trajectory(
            samples=tuple(samples),
            params=params,
            stats=IntegratorStats(method="stormer_verlet", accepted_steps=n_steps, evaluations=n_steps + 1),
        )


def integrate(
    params: PotentialParams,
    s0: PhaseState,
    t_end: float,
    rtol: float = None,
    atol: float = None,
    samples: SampleSpec = None,
    max_step: Optional[float] = None,
) -> Trajectory:
    """Adaptive integration of Hamilton's equations from s0 to t_end."""
    stepper = DormandPrince54(rtol=rtol, atol=atol, max_step=max_step)
    return stepper.integrate(params, s0, t_end, samples=samples)


def integrate_symplectic(
    params: PotentialParams,
    s0: PhaseState,
    t_end: float,
    dt: float,
    every: int = 1,
) -> Trajectory:
    """Fixed-step Stormer-Verlet run for long-horizon energy drift studies."""
    return StormerVerlet(dt).integrate(params, s0, t_end, every=every)
