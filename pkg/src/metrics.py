import json
from dataclasses import dataclass
from typing import Any, Dict, List

IDENTITY_RESIDUALS = ("residual_bol", "residual_aip", "residual_left_inverse", "residual_identity",
                      "residual_sqrt")
STRUCTURE_RESIDUALS = ("residual_phi_loop", "residual_phi_action", "residual_delta",
                       "residual_transversal")


@dataclass
class IdentityReport:
    field: str
    n: int
    samples: int = 0
    seed: int = 0
    residual_bol: float = 0.0
    residual_aip: float = 0.0
    residual_left_inverse: float = 0.0
    residual_identity: float = 0.0
    residual_sqrt: float = 0.0
    max_condition_number: float = 1.0
    tolerance: float = 1e-8
    # samples above this condition number void the residuals
    condition_limit: float = 1e6

    def update(self, other: "IdentityReport"):
        """Merge a batch: sample counts add, residuals take the maximum."""
        self.samples += other.samples
        for key in IDENTITY_RESIDUALS + ("max_condition_number",):
            setattr(self, key, max(getattr(self, key), getattr(other, key)))

    @property
    def passed(self) -> bool:
        return (all(getattr(self, key) <= self.tolerance for key in IDENTITY_RESIDUALS)
                and self.max_condition_number <= self.condition_limit)

    def to_dict(self) -> Dict[str, Any]:
        report: Dict[str, Any] = {"field": self.field, "n": self.n, "samples": self.samples,
                                  "seed": self.seed}
        for key in IDENTITY_RESIDUALS + ("max_condition_number",):
            report[key] = getattr(self, key)
        report["pass"] = self.passed
        return report

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def union_reports(reports: List["IdentityReport"], seed: int = 0) -> "IdentityReport":
        union = IdentityReport(field=reports[0].field, n=reports[0].n, seed=seed,
                               tolerance=reports[0].tolerance,
                               condition_limit=reports[0].condition_limit)
        for report in reports:
            union.update(report)
        return union


@dataclass
class StructureReport:
    field: str
    n: int
    samples: int = 0
    seed: int = 0
    residual_phi_loop: float = 0.0
    residual_phi_action: float = 0.0
    residual_delta: float = 0.0
    residual_transversal: float = 0.0
    kernel_fixed: bool = True
    kernel_moves: bool = True
    tolerance: float = 1e-8

    def update(self, other: "StructureReport"):
        self.samples += other.samples
        for key in STRUCTURE_RESIDUALS:
            setattr(self, key, max(getattr(self, key), getattr(other, key)))
        self.kernel_fixed = self.kernel_fixed and other.kernel_fixed
        self.kernel_moves = self.kernel_moves and other.kernel_moves

    @property
    def passed(self) -> bool:
        return (all(getattr(self, key) <= self.tolerance for key in STRUCTURE_RESIDUALS)
                and self.kernel_fixed and self.kernel_moves)

    def to_dict(self) -> Dict[str, Any]:
        report: Dict[str, Any] = {"field": self.field, "n": self.n, "samples": self.samples,
                                  "seed": self.seed}
        for key in STRUCTURE_RESIDUALS:
            report[key] = getattr(self, key)
        report["kernel_fixed"] = self.kernel_fixed
        report["kernel_moves"] = self.kernel_moves
        report["pass"] = self.passed
        return report

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def union_reports(reports: List["StructureReport"], seed: int = 0) -> "StructureReport":
        union = StructureReport(field=reports[0].field, n=reports[0].n, seed=seed,
                                tolerance=reports[0].tolerance)
        for report in reports:
            union.update(report)
        return union
