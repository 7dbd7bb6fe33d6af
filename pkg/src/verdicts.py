"""Status vocabulary shared by every check."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any


class Status(StrEnum):
    PASS = "PASS"
    FAIL = "FAIL"
    MISMATCH = "MISMATCH"
    NA = "NA"
    UNDERDETERMINED = "UNDERDETERMINED"


class NAReason(StrEnum):
    """Machine-readable reason attached to every NA outcome."""

    HOMOLOGY_BOUND = "homology-bound"
    NO_COMPLEMENT = "no-complement"
    NOT_CENTRAL = "not-central"
    NILFREE_SCOPE = "nilfree-scope"
    MISSING_INVARIANT = "missing-invariant"
    NONABELIAN_FACTOR = "nonabelian-factor"
    HYPOTHESIS_UNMET = "hypothesis-unmet"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one check on one item.

    `values` and `witnesses` hold JSON-ready data only (canonical forms are
    stored through `AbelianGroup.to_dict`).
    """

    status: Status
    values: Mapping[str, Any] = field(default_factory=dict)
    witnesses: Mapping[str, Any] = field(default_factory=dict)
    reason: NAReason | None = None
    notes: tuple[str, ...] = ()

    @classmethod
    def na(cls, reason: NAReason, detail: str, **values: Any) -> "Verdict":
        return cls(status=Status.NA, values=values, reason=reason, notes=(detail,))


def combine(statuses: list[Status]) -> Status:
    """Overall status of a check made of sub-assertions.

    FAIL dominates, then MISMATCH, then NA, then UNDERDETERMINED.
    """
    for status in (Status.FAIL, Status.MISMATCH, Status.NA, Status.UNDERDETERMINED):
        if status in statuses:
            return status
    return Status.PASS
