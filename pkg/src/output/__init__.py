"""File emitters: trajectory CSV, SVG figures and atomic writes."""

from .files import write_text_atomic
from .csv_writer import (
    CSV_HEADER, format_number, trajectory_to_csv, write_trajectory_csv,
    read_trajectory_csv, row_state,
)
from .figures import (
    FigureDataError, FigureData, ZERO_ENERGY_OFFSETS, HYPERBOLIC_OFFSETS,
    circle_path, emit_figure, write_figure, geometry_data, family_data,
    hyperbolic_data, stereographic_data, trajectory_data, orbit_frames,
)

__all__ = [
    "write_text_atomic",
    "CSV_HEADER", "format_number", "trajectory_to_csv", "write_trajectory_csv",
    "read_trajectory_csv", "row_state",
    "FigureDataError", "FigureData", "ZERO_ENERGY_OFFSETS", "HYPERBOLIC_OFFSETS",
    "circle_path", "emit_figure", "write_figure", "geometry_data", "family_data",
    "hyperbolic_data", "stereographic_data", "trajectory_data", "orbit_frames",
]
