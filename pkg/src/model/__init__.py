"""Potential family, Newton's on-orbit force law and conserved quantities."""

from .interfaces import (
    OrbitError, SingularEvaluationError, DomainError, RegimeError,
    NonConvergenceError, Regime, Observable,
    PotentialParams, PhaseState, OrbitSpec, InvariantVector, SpherePoint,
)
from .potential import (
    radius_at, chord_at, newton_force_on_orbit, kinetic_on_orbit,
    potential, radial_force, force_vector, kinetic_energy, hamiltonian,
)
from .observables import (
    angular_momentum, virial_q, invariant_vector, orientation_ratio,
    superintegrable_set, evaluate, snapshot, gradient, poisson_bracket,
    finite_difference_gradient, finite_difference_bracket,
)

__all__ = [
    "OrbitError", "SingularEvaluationError", "DomainError", "RegimeError",
    "NonConvergenceError", "Regime", "Observable",
    "PotentialParams", "PhaseState", "OrbitSpec", "InvariantVector", "SpherePoint",
    "radius_at", "chord_at", "newton_force_on_orbit", "kinetic_on_orbit",
    "potential", "radial_force", "force_vector", "kinetic_energy", "hamiltonian",
    "angular_momentum", "virial_q", "invariant_vector", "orientation_ratio",
    "superintegrable_set", "evaluate", "snapshot", "gradient", "poisson_bracket",
    "finite_difference_gradient", "finite_difference_bracket",
]
