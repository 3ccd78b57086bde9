"""Interface definitions for the orbit duality maps."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from ..geometry.interfaces import Circle, FittedCircle
from ..model.interfaces import DomainError, SpherePoint

__all__ = ["SpherePoint", "DualitySpec", "ImageKind", "GreatCircleImage"]


@dataclass(frozen=True)
class DualitySpec:
    """Energies and lengths of one source/dual pair.

    R0 is the inversion radius (quartic case), R_sphere the sphere radius
    (spherical case), d the offset of a straight dual orbit and Rimage the
    radius of its circular image.
    """
    E: float
    Ep: float
    alpha: float
    R0: Optional[float] = None
    R_sphere: Optional[float] = None
    d: Optional[float] = None
    Rimage: Optional[float] = None

    def __post_init__(self):
        if self.E > 0:
            raise DomainError(f"source energy must be <= 0, got {self.E}")
        if self.Ep <= 0:
            raise DomainError(f"dual energy must be positive, got {self.Ep}")
        if self.alpha <= 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if self.R0 is not None:
            expected = (self.alpha / self.Ep) ** 0.25
            if not math.isclose(self.R0, expected, rel_tol=1e-12):
                raise DomainError(f"inversion radius must be (alpha/Ep)^(1/4) = {expected}")
        if self.R_sphere is not None:
            expected = self.alpha / (4.0 * self.R_sphere ** 4)
            if not math.isclose(self.Ep, expected, rel_tol=1e-12):
                raise DomainError(f"dual energy on the sphere must be alpha/(4 calR^4) = {expected}")
        if self.d is not None and self.d <= 0:
            raise DomainError(f"line offset must be positive, got {self.d}")

    @classmethod
    def for_inversion(cls, alpha: float, E: float, Ep: float, d: Optional[float] = None) -> "DualitySpec":
        R0 = (alpha / Ep) ** 0.25
        Rimage = R0 * R0 / (2.0 * d) if d else None
        return cls(E=E, Ep=Ep, alpha=alpha, R0=R0, d=d, Rimage=Rimage)

    @classmethod
    def for_sphere(cls, alpha: float, R_sphere: float) -> "DualitySpec":
        return cls(E=0.0, Ep=alpha / (4.0 * R_sphere ** 4), alpha=alpha, R_sphere=R_sphere)

    @property
    def dual_coupling(self) -> float:
        """alpha' = -(E/E') alpha."""
        return 0.0 if self.E == 0 else -(self.E / self.Ep) * self.alpha


class ImageKind(Enum):
    CIRCLE = "circle"
    LINE = "line"


@dataclass(frozen=True)
class GreatCircleImage:
    """Plane image of a great circle: a circle, or a line through the origin."""
    kind: ImageKind
    normal: Tuple[float, float, float]
    circle: Optional[Circle] = None
    fitted: Optional[FittedCircle] = None
    direction: Optional[Tuple[float, float]] = None
