"""Unit tests for the potential and Newton's on-orbit force law."""

import math

import pytest

from src.model.interfaces import (
    DomainError, OrbitSpec, PhaseState, PotentialParams, Regime, SingularEvaluationError,
)
from src.model.potential import (
    chord_at, force_vector, hamiltonian, kinetic_on_orbit, newton_force_on_orbit,
    potential, radial_force, radius_at,
)


class TestPotentialParams:
    """Tests for PotentialParams."""

    def test_regime_from_sigma(self):
        """Should pick the regime from the sign of sigma."""
        assert PotentialParams(alpha=1.0, sigma=3.0).regime is Regime.SPHERICAL
        assert PotentialParams(alpha=1.0, sigma=0.0).regime is Regime.QUARTIC
        assert PotentialParams(alpha=1.0, sigma=-1.0).regime is Regime.HYPERBOLIC

    def test_length_scale(self):
        """Should expose sqrt(|sigma|)."""
        assert PotentialParams(alpha=1.0, sigma=3.0).length_scale == pytest.approx(math.sqrt(3.0))
        assert PotentialParams(alpha=1.0, sigma=-4.0).length_scale == pytest.approx(2.0)

    def test_rejects_non_positive_alpha(self):
        """Should reject alpha <= 0."""
        with pytest.raises(DomainError):
            PotentialParams(alpha=0.0, sigma=1.0)

    def test_rejects_non_finite(self):
        """Should reject NaN parameters."""
        with pytest.raises(DomainError):
            PotentialParams(alpha=1.0, sigma=float("nan"))

    def test_for_orbit(self, reference_orbit):
        """Should derive sigma = R^2 - l^2 from an orbit."""
        params = PotentialParams.for_orbit(reference_orbit, alpha=2.0, mass=0.5)
        assert params.sigma == pytest.approx(3.0)
        assert params.alpha == 2.0
        assert params.mass == 0.5


class TestPotential:
    """Tests for V, F and H."""

    def test_potential_value(self, reference_params):
        """Should evaluate -alpha / (r^2 + sigma)^2."""
        assert potential(reference_params, 3.0) == pytest.approx(-1.0 / 144.0)
        assert potential(reference_params, 0.0) == pytest.approx(-1.0 / 9.0)

    def test_quartic_potential(self, quartic_params):
        """Should reduce to -alpha / r^4 at sigma = 0."""
        assert potential(quartic_params, 2.0) == pytest.approx(-1.0 / 16.0)

    def test_quartic_origin_is_singular(self, quartic_params):
        """Should refuse to evaluate at the quartic pole."""
        with pytest.raises(SingularEvaluationError):
            potential(quartic_params, 0.0)

    def test_hyperbolic_border_is_singular(self, hyperbolic_params):
        """Should refuse to evaluate on the border r^2 = -sigma."""
        with pytest.raises(SingularEvaluationError):
            potential(hyperbolic_params, 1.0)
        with pytest.raises(SingularEvaluationError):
            force_vector(hyperbolic_params, 0.0, 1.0)

    def test_negative_radius_rejected(self, reference_params):
        """Should reject negative radii."""
        with pytest.raises(ValueError):
            potential(reference_params, -1.0)

    def test_radial_force_matches_derivative(self, reference_params):
        """Should equal -dV/dr."""
        r, h = 1.3, 1e-6
        derivative = (potential(reference_params, r + h) - potential(reference_params, r - h)) / (2 * h)
        assert radial_force(reference_params, r) == pytest.approx(-derivative, rel=1e-7)

    def test_force_vector_points_to_center(self, reference_params):
        """Should be attractive and parallel to the position."""
        fx, fy = force_vector(reference_params, 1.0, 2.0)
        assert fx < 0 and fy < 0
        assert fy / fx == pytest.approx(2.0)
        assert math.hypot(fx, fy) == pytest.approx(abs(radial_force(reference_params, math.sqrt(5.0))))

    def test_reference_state_has_zero_energy(self, reference_params, reference_state):
        """Should give H = 0 on the reference orbit."""
        assert hamiltonian(reference_params, reference_state) == pytest.approx(0.0, abs=1e-16)


class TestOnOrbitForce:
    """Tests for Newton's chord-based force law."""

    def test_radius_and_chord(self, reference_orbit):
        """Should give r = 3 and chord 4 at theta = 0."""
        assert radius_at(reference_orbit, 0.0) == pytest.approx(3.0)
        assert chord_at(reference_orbit, 0.0) == pytest.approx(4.0)

    def test_matches_gradient_force(self, reference_orbit, reference_params):
        """Should agree with -dV/dr along the whole orbit."""
        for theta in [0.0, 0.4, 1.3, 2.0, 2.9, 3.5, 5.0]:
            r = radius_at(reference_orbit, theta)
            assert newton_force_on_orbit(reference_orbit, 1.0, theta) == pytest.approx(
                radial_force(reference_params, r), rel=1e-12
            )

    def test_reference_value(self, reference_orbit):
        """Should give -1/144 at theta = 0."""
        assert newton_force_on_orbit(reference_orbit, 1.0, 0.0) == pytest.approx(-1.0 / 144.0)

    def test_quartic_limit_law(self):
        """Should reduce to -4 alpha / r^5 when l = R."""
        spec = OrbitSpec(R=1.0, l=1.0)
        theta = 1.0
        r = radius_at(spec, theta)
        assert newton_force_on_orbit(spec, 1.0, theta) == pytest.approx(-4.0 / r ** 5)

    def test_quartic_center_is_singular(self):
        """Should raise at theta = pi where the orbit hits the force center."""
        with pytest.raises(SingularEvaluationError):
            chord_at(OrbitSpec(R=1.0, l=1.0), math.pi)

    def test_kinetic_energy_balances_potential(self, reference_orbit, reference_params):
        """Should make kinetic + potential vanish on the orbit."""
        for theta in [0.0, 1.0, 2.5, 4.0]:
            r = radius_at(reference_orbit, theta)
            total = kinetic_on_orbit(reference_orbit, 1.0, theta) + potential(reference_params, r)
            assert total == pytest.approx(0.0, abs=1e-15)


class TestOrbitSpec:
    """Tests for OrbitSpec."""

    def test_center_and_sigma(self):
        """Should place the center at l n."""
        spec = OrbitSpec(R=2.0, l=1.0, n_angle=math.pi / 2)
        cx, cy = spec.center
        assert cx == pytest.approx(0.0, abs=1e-15)
        assert cy == pytest.approx(1.0)
        assert spec.sigma == pytest.approx(3.0)

    def test_regimes(self):
        """Should classify by the offset."""
        assert OrbitSpec(R=2.0, l=1.0).regime is Regime.SPHERICAL
        assert OrbitSpec(R=1.0, l=1.0).regime is Regime.QUARTIC
        assert OrbitSpec(R=1.0, l=2.0).regime is Regime.HYPERBOLIC

    def test_rejects_bad_sense(self):
        """Should accept only +1 and -1."""
        with pytest.raises(DomainError):
            OrbitSpec(R=1.0, sense=0)

    def test_matches(self, reference_orbit, reference_params):
        """Should match parameters with sigma = R^2 - l^2 only."""
        assert reference_orbit.matches(reference_params)
        assert not reference_orbit.matches(PotentialParams(alpha=1.0, sigma=2.0))

    def test_phase_state_rejects_nan(self):
        """Should reject non-finite coordinates."""
        with pytest.raises(DomainError):
            PhaseState(x=float("inf"), y=0.0, px=0.0, py=0.0)
