"""Trajectory CSV files: header t,x,y,px,py,H,Lz,Q,Ix,Iy,Iz."""

import csv
import io
from pathlib import Path
from typing import Dict, List, Union

from ..model.interfaces import PhaseState
from ..trajectory.interfaces import SNAPSHOT_FIELDS, Trajectory
from .files import write_text_atomic

STATE_FIELDS = ("t", "x", "y", "px", "py")
CSV_HEADER = STATE_FIELDS + SNAPSHOT_FIELDS


def format_number(value: float) -> str:
    """Scientific notation with 17 significant digits."""
    return f"{value:.16e}"


def trajectory_to_csv(traj: Trajectory) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for sample in traj.samples:
        s = sample.state
        row = [s.t, s.x, s.y, s.px, s.py] + [sample.snapshot[name] for name in SNAPSHOT_FIELDS]
        writer.writerow([format_number(v) for v in row])
    return buffer.getvalue()


def write_trajectory_csv(traj: Trajectory, path: Union[str, Path]) -> Path:
    return write_text_atomic(path, trajectory_to_csv(traj))


def read_trajectory_csv(path: Union[str, Path]) -> List[Dict[str, float]]:
    """Rows of a trajectory CSV as floats keyed by column name."""
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
        return [{k: float(v) for k, v in row.items()} for row in reader]


def row_state(row: Dict[str, float]) -> PhaseState:
    return PhaseState(x=row["x"], y=row["y"], px=row["px"], py=row["py"], t=row["t"])
