"""Tests for the verification report."""

import json

from src.cli.report import CheckRecord, PropertyBatch, VerificationReport
from src.verdicts import NAReason, Status, Verdict


def record(check: str, pair: str, status: Status, seconds: float = 0.5) -> CheckRecord:
    return CheckRecord(check=check, pair=pair, status=status, seconds=seconds)


class TestCheckRecord:
    """Tests for CheckRecord."""

    def test_from_verdict(self) -> None:
        """Values, reason and notes carry over."""
        verdict = Verdict.na(NAReason.NO_COMPLEMENT, "N has no complement in G", order=4)
        r = CheckRecord.from_verdict("thm33", "Z4:2a", verdict, 0.25)
        assert r.status is Status.NA
        assert r.reason is NAReason.NO_COMPLEMENT
        assert r.values == {"order": 4}
        assert r.notes == ["N has no complement in G"]


class TestVerificationReport:
    """Tests for VerificationReport."""

    def test_findings_and_exit(self) -> None:
        """MISMATCH records are findings and do not fail the run."""
        report = VerificationReport.assemble(
            {},
            [
                record("thm36-audit", "a", Status.MISMATCH),
                record("thm36-audit", "b", Status.PASS),
            ],
        )
        assert [r.pair for r in report.findings] == ["a"]
        assert report.exit_code() == 0

    def test_fail_exits_one(self) -> None:
        """A FAIL record or a failed batch gives exit code 1."""
        failing = VerificationReport.assemble({}, [record("five-term", "a", Status.FAIL)])
        assert failing.exit_code() == 1
        batch = PropertyBatch(name="swap-symmetry", seed=0, size=1, status=Status.FAIL)
        assert VerificationReport.assemble({}, [], [batch]).exit_code() == 1

    def test_json_without_timing(self) -> None:
        """Timing is the only field that differs between equal runs."""
        first, second = (
            VerificationReport.assemble({"seed": 0}, [record("lemma38", "a", Status.PASS, t)])
            for t in (1.0, 2.0)
        )
        assert first.to_json() != second.to_json()
        assert first.without_timing() == second.without_timing()
        assert json.loads(first.to_json())["records"][0]["status"] == "PASS"

    def test_status_table(self) -> None:
        """One row per check, one column per status seen."""
        report = VerificationReport.assemble(
            {},
            [
                record("lemma38", "a", Status.PASS),
                record("lemma38", "b", Status.MISMATCH),
                record("thm33", "a", Status.NA),
            ],
        )
        table = report.status_table()
        assert list(table.columns) == ["PASS", "MISMATCH", "NA"]
        assert table.loc["lemma38", "PASS"] == 1
        assert table.loc["thm33", "NA"] == 1
        assert len(report.to_frame()) == 3

    def test_render(self) -> None:
        """Empty runs say so; findings are listed."""
        assert "No checks were run." in VerificationReport.assemble({}, []).render()
        report = VerificationReport.assemble({}, [record("thm36-audit", "V4", Status.MISMATCH)])
        text = report.render()
        assert "Findings (1 MISMATCH)" in text
        assert "thm36-audit on V4" in text
