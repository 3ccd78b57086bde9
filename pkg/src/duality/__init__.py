"""Duality maps between orbit families and the Maupertuis-Jacobi action."""

from .interfaces import SpherePoint, DualitySpec, ImageKind, GreatCircleImage
from .maps import (
    circle_inversion, line_orbit_image, dual_coupling, dual_energy, inversion_radius,
    dual_potential, bav_scale_factor, stereographic_scale_factor, inversion_scale_factor,
    stereographic_lift, stereographic_project, antipodal_project, projection_jacobian,
    great_circle_image, orbit_great_circle, sphere_angular_speed, dual_plane_state,
    sphere_angular_momentum, quartic_limit_defect, random_great_circle,
)
from .action import maupertuis_action, action_gradient

__all__ = [
    "SpherePoint", "DualitySpec", "ImageKind", "GreatCircleImage",
    "circle_inversion", "line_orbit_image", "dual_coupling", "dual_energy",
    "inversion_radius", "dual_potential", "bav_scale_factor",
    "stereographic_scale_factor", "inversion_scale_factor",
    "stereographic_lift", "stereographic_project", "antipodal_project",
    "projection_jacobian", "great_circle_image", "orbit_great_circle",
    "sphere_angular_speed", "dual_plane_state", "sphere_angular_momentum",
    "quartic_limit_defect", "random_great_circle",
    "maupertuis_action", "action_gradient",
]
