"""Unit tests for conserved quantities and Poisson brackets."""

import math

import numpy as np
import pytest

from src.model.interfaces import DomainError, Observable, PhaseState, PotentialParams
from src.model.observables import (
    angular_momentum, finite_difference_bracket, finite_difference_gradient, gradient,
    invariant_vector, orientation_ratio, poisson_bracket, snapshot, superintegrable_set,
    virial_q,
)
from src.model.potential import hamiltonian


def random_states(n, seed=3):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        x, y = rng.uniform(-3.0, 3.0, size=2)
        px, py = rng.uniform(-1.0, 1.0, size=2)
        yield PhaseState(x=float(x), y=float(y), px=float(px), py=float(py))


class TestScalars:
    """Tests for Lz and Q."""

    def test_angular_momentum(self):
        """Should compute x py - y px."""
        assert angular_momentum(PhaseState(x=1.0, y=2.0, px=3.0, py=5.0)) == pytest.approx(-1.0)

    def test_virial(self):
        """Should compute x px + y py."""
        assert virial_q(PhaseState(x=1.0, y=2.0, px=3.0, py=5.0)) == pytest.approx(13.0)


class TestInvariantVector:
    """Tests for the invariant vector I."""

    def test_reference_value(self, reference_params, reference_state):
        """Should reproduce I = (-1/(2 sqrt 6), 0, 1/(2 sqrt 2)) at theta = 0."""
        inv = invariant_vector(reference_params, reference_state)
        assert inv.Ix == pytest.approx(-1.0 / (2.0 * math.sqrt(6.0)))
        assert inv.Iy == pytest.approx(0.0, abs=1e-16)
        assert inv.Iz == pytest.approx(1.0 / (2.0 * math.sqrt(2.0)))

    def test_norm_identity(self, reference_params, reference_state):
        """Should satisfy |I|^2 = m alpha / (2 sigma) at zero energy."""
        inv = invariant_vector(reference_params, reference_state)
        assert inv.norm2 == pytest.approx(1.0 / 6.0, rel=1e-14)

    def test_requires_positive_sigma(self, quartic_params, reference_state):
        """Should refuse sigma <= 0."""
        with pytest.raises(DomainError):
            invariant_vector(quartic_params, reference_state)

    def test_snapshot_nan_without_sphere(self, hyperbolic_params):
        """Should report NaN I components when sigma <= 0."""
        values = snapshot(hyperbolic_params, PhaseState(x=2.0, y=0.0, px=0.0, py=0.1))
        assert math.isnan(values["Ix"]) and math.isnan(values["Iy"])
        assert values["Iz"] == values["Lz"]

    def test_orientation_ratio_undefined(self, reference_params):
        """Should raise where Ix vanishes."""
        s = PhaseState(x=0.0, y=0.0, px=0.0, py=0.0)
        with pytest.raises(DomainError):
            orientation_ratio(reference_params, s)

    def test_superintegrable_set(self, reference_params):
        """Should return (H, Lz, Iy/Ix)."""
        s = PhaseState(x=1.0, y=0.5, px=0.1, py=0.2)
        h, lz, ratio = superintegrable_set(reference_params, s)
        inv = invariant_vector(reference_params, s)
        assert h == pytest.approx(hamiltonian(reference_params, s))
        assert lz == pytest.approx(angular_momentum(s))
        assert ratio == pytest.approx(inv.Iy / inv.Ix)


class TestPoissonBracket:
    """Tests for the closed-form bracket engine."""

    def test_gradients_match_finite_differences(self, reference_params):
        """Should agree with central differences for every observable."""
        for s in random_states(10):
            for obs in Observable:
                closed = gradient(obs, reference_params, s)
                numeric = finite_difference_gradient(obs, reference_params, s)
                np.testing.assert_allclose(closed, numeric, rtol=1e-6, atol=1e-8)

    def test_so3_algebra(self, reference_params):
        """Should close {Ix, Iy} = Iz cyclically."""
        cyclic = [
            (Observable.IX, Observable.IY, Observable.IZ),
            (Observable.IY, Observable.IZ, Observable.IX),
            (Observable.IZ, Observable.IX, Observable.IY),
        ]
        for s in random_states(20):
            values = snapshot(reference_params, s)
            for a, b, c in cyclic:
                assert poisson_bracket(a, b, reference_params, s) == pytest.approx(values[c.value], abs=1e-12)

    def test_lz_commutes_with_h(self, reference_params):
        """Should give {Lz, H} = 0 everywhere."""
        for s in random_states(10):
            assert poisson_bracket(Observable.LZ, Observable.H, reference_params, s) == pytest.approx(0.0, abs=1e-14)

    def test_invariant_rotates_off_zero_energy(self, reference_params):
        """Should give {Ix, H} = (2/calR) y H."""
        calR = math.sqrt(3.0)
        for s in random_states(10):
            h = hamiltonian(reference_params, s)
            expected = 2.0 / calR * s.y * h
            assert poisson_bracket(Observable.IX, Observable.H, reference_params, s) == pytest.approx(expected, abs=1e-13)

    def test_invariant_conserved_at_zero_energy(self, reference_params, reference_state):
        """Should make {I, H} vanish on H = 0 states."""
        for obs in (Observable.IX, Observable.IY):
            assert poisson_bracket(obs, Observable.H, reference_params, reference_state) == pytest.approx(0.0, abs=1e-15)

    def test_antisymmetry(self, reference_params):
        """Should flip sign under exchange."""
        s = PhaseState(x=0.7, y=-1.1, px=0.3, py=0.4)
        ab = poisson_bracket(Observable.Q, Observable.IX, reference_params, s)
        ba = poisson_bracket(Observable.IX, Observable.Q, reference_params, s)
        assert ab == pytest.approx(-ba)

    def test_finite_difference_oracle(self, reference_params):
        """Should agree with the closed form."""
        s = PhaseState(x=1.2, y=0.3, px=-0.2, py=0.5)
        closed = poisson_bracket(Observable.IX, Observable.IY, reference_params, s)
        numeric = finite_difference_bracket(Observable.IX, Observable.IY, reference_params, s)
        assert numeric == pytest.approx(closed, rel=1e-6)
