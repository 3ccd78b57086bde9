"""Verification records and reports."""

import math
from typing import Any, Dict, List, Literal

from pydantic import BaseModel, Field, computed_field


class CheckRecord(BaseModel):
    """One compared quantity with its explicit tolerance.

    mode "below" passes when max_deviation < tolerance, "above" when it
    exceeds it (used for negative controls).
    """
    check_id: str
    description: str = ""
    quantities: List[str] = Field(default_factory=list)
    max_deviation: float
    tolerance: float = Field(gt=0)
    mode: Literal["below", "above"] = "below"
    passed: bool

    @classmethod
    def compare(
        cls,
        check_id: str,
        deviation: float,
        tolerance: float,
        quantities: List[str] = None,
        description: str = "",
        mode: str = "below",
    ) -> "CheckRecord":
        deviation = float(deviation)
        if not math.isfinite(deviation):
            passed = False
        elif mode == "above":
            passed = deviation > tolerance
        else:
            passed = deviation < tolerance
        return cls(
            check_id=check_id,
            description=description,
            quantities=list(quantities or []),
            max_deviation=deviation,
            tolerance=tolerance,
            mode=mode,
            passed=passed,
        )


class VerificationReport(BaseModel):
    """Records of one run; passes only if every record passes."""
    name: str
    records: List[CheckRecord] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)
    files: List[str] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"
