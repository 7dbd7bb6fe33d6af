"""Verification report: one record per pair and check, plus property batches."""

from typing import Any

import pandas as pd
from pydantic import BaseModel

from src.verdicts import NAReason, Status, Verdict

TOOL_VERSION = "0.1.0"

# Fields that vary between otherwise identical runs
TIMING_FIELDS = frozenset({"seconds"})


class CheckRecord(BaseModel):
    """Outcome of one check on one corpus pair."""

    check: str
    pair: str
    status: Status
    values: dict[str, Any] = {}
    witnesses: dict[str, Any] = {}
    reason: NAReason | None = None
    notes: list[str] = []
    seconds: float = 0.0

    @classmethod
    def from_verdict(
        cls, check: str, pair: str, verdict: Verdict, seconds: float = 0.0
    ) -> "CheckRecord":
        return cls(
            check=check,
            pair=pair,
            status=verdict.status,
            values=dict(verdict.values),
            witnesses=dict(verdict.witnesses),
            reason=verdict.reason,
            notes=list(verdict.notes),
            seconds=round(seconds, 6),
        )


class PropertyBatch(BaseModel):
    """A seeded randomized property run over many inputs."""

    name: str
    seed: int
    size: int
    status: Status
    checked: int = 0
    failures: list[dict[str, Any]] = []


class VerificationReport(BaseModel):
    tool_version: str = TOOL_VERSION
    configuration: dict[str, Any] = {}
    records: list[CheckRecord] = []
    findings: list[CheckRecord] = []
    property_batches: list[PropertyBatch] = []

    @classmethod
    def assemble(
        cls,
        configuration: dict[str, Any],
        records: list[CheckRecord],
        property_batches: list[PropertyBatch] | None = None,
    ) -> "VerificationReport":
        """Build the report; every MISMATCH record is also listed as a finding."""
        return cls(
            configuration=configuration,
            records=records,
            findings=[r for r in records if r.status is Status.MISMATCH],
            property_batches=property_batches or [],
        )

    def has_failure(self) -> bool:
        return any(r.status is Status.FAIL for r in self.records) or any(
            b.status is Status.FAIL for b in self.property_batches
        )

    def exit_code(self) -> int:
        return 1 if self.has_failure() else 0

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    def without_timing(self) -> dict[str, Any]:
        """The report as plain data with timing fields removed."""
        data = self.model_dump(mode="json")
        for section in ("records", "findings"):
            for record in data[section]:
                for key in TIMING_FIELDS:
                    record.pop(key, None)
        return data

    def to_frame(self) -> pd.DataFrame:
        columns = ["pair", "check", "status", "reason", "seconds"]
        if not self.records:
            return pd.DataFrame(columns=columns)
        frame = pd.DataFrame(
            [
                {
                    "pair": r.pair,
                    "check": r.check,
                    "status": str(r.status),
                    "reason": str(r.reason) if r.reason else "",
                    "seconds": r.seconds,
                }
                for r in self.records
            ]
        )
        return frame[columns]

    def status_table(self) -> pd.DataFrame:
        """Record counts per check and status."""
        frame = self.to_frame()
        if frame.empty:
            return pd.DataFrame()
        table = pd.crosstab(frame["check"], frame["status"])
        order = [s.value for s in Status if s.value in table.columns]
        return table[order]

    def render(self) -> str:
        """Human-readable summary for standard output."""
        lines = [f"baer-pairs {self.tool_version}"]
        frame = self.to_frame()
        if frame.empty:
            lines.append("No checks were run.")
        else:
            lines += ["", frame.to_string(index=False), "", self.status_table().to_string()]
        if self.findings:
            lines += ["", f"Findings ({len(self.findings)} MISMATCH):"]
            for r in self.findings:
                detail = "; ".join(r.notes)
                lines.append(f"  {r.check} on {r.pair}" + (f": {detail}" if detail else ""))
        for batch in self.property_batches:
            lines.append(
                f"Property {batch.name}: {batch.status} "
                f"({batch.checked} of {batch.size} checked, seed {batch.seed})"
            )
        return "\n".join(lines)
