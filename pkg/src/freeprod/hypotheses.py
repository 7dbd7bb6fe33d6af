"""Hypothesis batteries for the all-c free-product decomposition, and the checks built on them."""

import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from typing import Any, NamedTuple

import structlog

from src.abgrp.functors import tensor, tor
from src.abgrp.groups import AbelianGroup
from src.freeprod.data import MissingInvariantError, PairInvariantData
from src.freeprod.evaluators import (
    eval_burns_ellis,
    eval_c1,
    eval_c2,
    eval_c2_terms,
    eval_miller,
    mixed_terms,
)
from src.fingrp.group import FiniteGroup
from src.fingrp.sections import abelianization
from src.verdicts import NAReason, Status, Verdict, combine

logger = structlog.get_logger()


class Scope(StrEnum):
    QUOTIENT = "quotient"
    GROUP = "group"


class Condition(NamedTuple):
    """One vanishing condition; value and holds are None when an input is missing."""

    label: str
    scope: Scope
    value: AbelianGroup | None
    holds: bool | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "scope": str(self.scope),
            "value": self.value.to_dict() if self.value is not None else None,
            "holds": self.holds,
        }


# (label, scope, functor, left operand, right operand) with operands as (side, field)
_CONDITIONS: tuple[tuple[str, Scope, str, tuple[int, str], tuple[int, str]], ...] = (
    ("(G1/N1)^ab (x) (G2/N2)^ab", Scope.QUOTIENT, "tensor", (0, "q_ab"), (1, "q_ab")),
    ("M(G1/N1) (x) M(G2/N2)", Scope.QUOTIENT, "tensor", (0, "m_q"), (1, "m_q")),
    ("Tor((G1/N1)^ab, (G2/N2)^ab)", Scope.QUOTIENT, "tor", (0, "q_ab"), (1, "q_ab")),
    ("(G1/N1)^ab (x) H3(G2/N2)", Scope.QUOTIENT, "tensor", (0, "q_ab"), (1, "h3_q")),
    ("M(G1/N1) (x) (G2/N2)^ab", Scope.QUOTIENT, "tensor", (0, "m_q"), (1, "q_ab")),
    ("Tor((G1/N1)^ab, M(G2/N2))", Scope.QUOTIENT, "tor", (0, "q_ab"), (1, "m_q")),
    ("(G2/N2)^ab (x) H3(G1/N1)", Scope.QUOTIENT, "tensor", (1, "q_ab"), (0, "h3_q")),
    ("M(G2/N2) (x) (G1/N1)^ab", Scope.QUOTIENT, "tensor", (1, "m_q"), (0, "q_ab")),
    ("Tor((G2/N2)^ab, M(G1/N1))", Scope.QUOTIENT, "tor", (1, "q_ab"), (0, "m_q")),
    ("G1^ab (x) G2^ab", Scope.GROUP, "tensor", (0, "g_ab"), (1, "g_ab")),
    ("M(G1) (x) G2^ab", Scope.GROUP, "tensor", (0, "m_g"), (1, "g_ab")),
    ("M(G2) (x) G1^ab", Scope.GROUP, "tensor", (1, "m_g"), (0, "g_ab")),
    ("Tor(G1^ab, G2^ab)", Scope.GROUP, "tor", (0, "g_ab"), (1, "g_ab")),
)

_FUNCTORS: dict[str, Callable[[AbelianGroup, AbelianGroup], AbelianGroup]] = {
    "tensor": tensor,
    "tor": tor,
}


@dataclass(frozen=True)
class HypothesisReport:
    """
    Every vanishing condition of the all-c decomposition, evaluated separately.

    `holds` is the conjunction: False as soon as one condition fails, None
    when none fails but some could not be evaluated.
    """

    conditions: tuple[Condition, ...]

    def _conjunction(self, conditions: list[Condition]) -> bool | None:
        if any(c.holds is False for c in conditions):
            return False
        if any(c.holds is None for c in conditions):
            return None
        return True

    @property
    def holds(self) -> bool | None:
        return self._conjunction(list(self.conditions))

    @property
    def group_level_holds(self) -> bool | None:
        return self._conjunction([c for c in self.conditions if c.scope is Scope.GROUP])

    @property
    def violations(self) -> list[str]:
        return [c.label for c in self.conditions if c.holds is False]

    def to_dict(self) -> dict[str, Any]:
        return {
            "holds": self.holds,
            "group_level_holds": self.group_level_holds,
            "conditions": [c.to_dict() for c in self.conditions],
        }


def thm43_hypotheses(d1: PairInvariantData, d2: PairInvariantData) -> HypothesisReport:
    """
    Evaluate the nine quotient conditions and the four group-level conditions.

    A condition whose input is missing (typically H3 beyond the oracle
    bound) is reported with holds = None rather than failing the report.
    """
    sides = (d1, d2)
    conditions = []
    for label, scope, functor, (i, left), (j, right) in _CONDITIONS:
        a, b = getattr(sides[i], left), getattr(sides[j], right)
        if a is None or b is None:
            conditions.append(Condition(label, scope, None, None))
            continue
        value = _FUNCTORS[functor](a, b)
        conditions.append(Condition(label, scope, value, value.is_trivial()))
    return HypothesisReport(tuple(conditions))


class Cor44Result(NamedTuple):
    holds: bool
    orders: tuple[int, int]
    conclusion: str | None


COR44_CONCLUSION = (
    "M^(c)(G1 * G2, <N1 * N2>) = M^(c)(G1, N1) + M^(c)(G2, N2) for all c >= 1"
)


def _abelianization_orders(g1: FiniteGroup, g2: FiniteGroup) -> tuple[int, int]:
    return int(abelianization(g1).canonical.order()), int(abelianization(g2).canonical.order())


def cor44_coprime(g1: FiniteGroup, g2: FiniteGroup) -> Cor44Result:
    """Whether |G1^ab| and |G2^ab| are coprime, with the decomposition it asserts."""
    orders = _abelianization_orders(g1, g2)
    holds = math.gcd(*orders) == 1
    return Cor44Result(holds, orders, COR44_CONCLUSION if holds else None)


def cor44_perfect(
    g1: FiniteGroup, g2: FiniteGroup, d1: PairInvariantData, d2: PairInvariantData
) -> Cor44Result:
    """Both groups perfect and M(G1/N1) ⊗ M(G2/N2) trivial."""
    orders = _abelianization_orders(g1, g2)
    holds = orders == (1, 1) and tensor(d1.require("m_q"), d2.require("m_q")).is_trivial()
    return Cor44Result(holds, orders, COR44_CONCLUSION if holds else None)


def _na(exc: MissingInvariantError) -> Verdict:
    return Verdict.na(exc.reason, str(exc), missing=exc.field_name)


def thm41_eval_check(
    d1: PairInvariantData,
    d2: PairInvariantData,
    *,
    both_trivial: bool = False,
    both_whole: bool = False,
) -> Verdict:
    """
    Bookkeeping of the free-product evaluators on one ordered couple of pairs.

    Swap symmetry of both evaluators and eleven summands at class 2 always;
    vanishing when both normal subgroups are trivial; agreement with the
    absolute decompositions when both are the whole group. Any violation is
    a FAIL. Class-2 parts are NA without M2 data.
    """
    statuses: list[Status] = []
    values: dict[str, Any] = {}
    notes: list[str] = []
    reason: NAReason | None = None

    try:
        c1 = eval_c1(d1, d2)
    except MissingInvariantError as exc:
        return _na(exc)
    values["c1"] = c1.to_dict()
    statuses.append(Status.PASS if c1 == eval_c1(d2, d1) else Status.FAIL)

    c2: AbelianGroup | None = None
    try:
        terms = eval_c2_terms(d1, d2)
    except MissingInvariantError as exc:
        statuses.append(Status.NA)
        reason = exc.reason
        notes.append(str(exc))
    else:
        c2 = eval_c2(d1, d2)
        values["c2"] = c2.to_dict()
        values["c2_terms"] = {t.label: t.value.to_dict() for t in terms}
        statuses.append(Status.PASS if len(terms) == 11 else Status.FAIL)
        statuses.append(Status.PASS if c2 == eval_c2(d2, d1) else Status.FAIL)

    if both_trivial:
        vanishes = c1.is_trivial() and (c2 is None or c2.is_trivial())
        values["trivial_normal_vanishes"] = vanishes
        statuses.append(Status.PASS if vanishes else Status.FAIL)

    if both_whole:
        try:
            values["miller"] = eval_miller(d1, d2) == c1
            statuses.append(Status.PASS if values["miller"] else Status.FAIL)
            if c2 is not None:
                values["burns_ellis"] = eval_burns_ellis(d1, d2) == c2
                statuses.append(Status.PASS if values["burns_ellis"] else Status.FAIL)
        except MissingInvariantError as exc:
            notes.append(str(exc))

    status = combine(statuses)
    if status is Status.FAIL:
        logger.warning("Free-product bookkeeping failed", left=d1.label, right=d2.label)
    return Verdict(
        status, values, reason=reason if status is Status.NA else None, notes=tuple(notes)
    )


def thm43_check(d1: PairInvariantData, d2: PairInvariantData) -> Verdict:
    """
    Under the all-c hypotheses, the class-2 formula must reduce to its two M2 terms.

    NA with hypothesis-unmet when a condition fails, UNDERDETERMINED when
    some condition could not be evaluated, MISMATCH when the hypotheses hold
    but a mixed summand survives.
    """
    report = thm43_hypotheses(d1, d2)
    values: dict[str, Any] = {"hypotheses": report.to_dict()}
    if report.holds is False:
        return Verdict(
            Status.NA,
            values,
            reason=NAReason.HYPOTHESIS_UNMET,
            notes=tuple(f"{label} is nontrivial" for label in report.violations),
        )
    if report.holds is None:
        return Verdict(Status.UNDERDETERMINED, values)
    try:
        surviving = [t for t in mixed_terms(d1, d2) if not t.value.is_trivial()]
    except MissingInvariantError as exc:
        return Verdict(Status.UNDERDETERMINED, values, notes=(str(exc),))
    values["surviving_terms"] = {t.label: t.value.to_dict() for t in surviving}
    if surviving:
        logger.warning(
            "Class-2 decomposition keeps mixed terms",
            left=d1.label,
            right=d2.label,
            terms=[t.label for t in surviving],
        )
        return Verdict(Status.MISMATCH, values)
    return Verdict(Status.PASS, values)


def cor44_check(
    g1: FiniteGroup, g2: FiniteGroup, d1: PairInvariantData, d2: PairInvariantData
) -> Verdict:
    """
    Whether each corollary criterion implies the hypotheses it is derived from.

    Coprime abelianizations should force the group-level conditions; perfect
    groups with M(G1/N1) ⊗ M(G2/N2) = 0 should force every condition. A
    criterion that holds while its implication fails is a MISMATCH.
    """
    coprime = cor44_coprime(g1, g2)
    report = thm43_hypotheses(d1, d2)
    values: dict[str, Any] = {
        "coprime": coprime.holds,
        "abelianization_orders": list(coprime.orders),
        "hypotheses": report.to_dict(),
    }
    statuses: list[Status] = []
    try:
        perfect = cor44_perfect(g1, g2, d1, d2)
    except MissingInvariantError as exc:
        values["perfect"] = None
        perfect = Cor44Result(False, coprime.orders, None)
        values["perfect_missing"] = exc.field_name
    else:
        values["perfect"] = perfect.holds

    for criterion, implied in ((coprime, report.group_level_holds), (perfect, report.holds)):
        if not criterion.holds:
            continue
        if implied is None:
            statuses.append(Status.UNDERDETERMINED)
        else:
            statuses.append(Status.PASS if implied else Status.MISMATCH)

    if not statuses:
        return Verdict(
            Status.NA, values, reason=NAReason.HYPOTHESIS_UNMET, notes=("neither criterion holds",)
        )
    status = combine(statuses)
    if status is Status.MISMATCH:
        values["conclusion"] = COR44_CONCLUSION
        logger.warning(
            "Corollary criterion holds without its hypotheses",
            left=d1.label,
            right=d2.label,
            violations=report.violations,
        )
    return Verdict(status, values)

