"""Tests for the all-c hypotheses and the checks built on them."""

from dataclasses import replace

from src.abgrp.groups import AbelianGroup
from src.fingrp.constructors import cyclic, trivial_group
from src.fingrp.group import FiniteGroup, PairOfGroups, Subgroup
from src.fingrp.sections import abelianization
from src.freeprod.data import PairInvariantData, pair_data_from_pair
from src.freeprod.hypotheses import (
    Scope,
    cor44_check,
    cor44_coprime,
    cor44_perfect,
    thm41_eval_check,
    thm43_check,
    thm43_hypotheses,
)
from src.homology.oracle import schur_multiplier
from src.verdicts import NAReason, Status

ZERO = AbelianGroup.trivial()
Z2 = AbelianGroup.cyclic(2)
Z4 = AbelianGroup.cyclic(4)
KLEIN = AbelianGroup(torsion=(2, 2))


def whole_data(g: FiniteGroup) -> PairInvariantData:
    return PairInvariantData.whole(schur_multiplier(g), abelianization(g).canonical, label=g.name)


class TestThm43Hypotheses:
    """Tests for thm43_hypotheses."""

    def test_s3_a3_with_z3(self, s3_a3: PairOfGroups) -> None:
        """Quotients Z2 and 1 with coprime group data: every condition holds."""
        z3 = cyclic(3)
        d1 = pair_data_from_pair(s3_a3)
        d2 = pair_data_from_pair(PairOfGroups(z3, Subgroup.whole(z3), "Z3"))
        report = thm43_hypotheses(d1, d2)
        assert len(report.conditions) == 13
        assert report.holds is True
        assert thm43_check(d1, d2).status is Status.PASS

    def test_group_level_violation(self) -> None:
        """(Z2, Z2) and (Z4, Z4): G1^ab (x) G2^ab = Z2."""
        d1 = PairInvariantData.whole(ZERO, Z2)
        d2 = PairInvariantData.whole(ZERO, Z4)
        report = thm43_hypotheses(d1, d2)
        quotient = [c for c in report.conditions if c.scope is Scope.QUOTIENT]
        assert all(c.holds for c in quotient)
        assert report.group_level_holds is False
        assert "G1^ab (x) G2^ab" in report.violations
        verdict = thm43_check(d1, d2)
        assert verdict.status is Status.NA
        assert verdict.reason is NAReason.HYPOTHESIS_UNMET

    def test_trivial_partner(self) -> None:
        """Everything pairs with a trivial group."""
        d1 = PairInvariantData(
            m1=Z2, n_mod=Z4, q_ab=KLEIN, m_q=Z2, g_ab=Z4, h3_q=Z2, m_g=Z2
        )
        assert thm43_hypotheses(d1, PairInvariantData.trivial()).holds is True

    def test_missing_h3(self) -> None:
        """An absent H3 leaves the conjunction open."""
        d1 = replace(PairInvariantData.trivial(), q_ab=Z2, h3_q=None)
        d2 = replace(PairInvariantData.trivial(), h3_q=None)
        report = thm43_hypotheses(d1, d2)
        assert report.holds is None
        assert thm43_check(d1, d2).status is Status.UNDERDETERMINED

    def test_surviving_mixed_term(self) -> None:
        """Hypotheses hold but M(G1,N1) (x) N2/[N2,G2] = Z2 survives."""
        d1 = replace(PairInvariantData.trivial(), m1=Z2)
        d2 = replace(PairInvariantData.trivial(), n_mod=Z2)
        verdict = thm43_check(d1, d2)
        assert verdict.status is Status.MISMATCH
        assert list(verdict.values["surviving_terms"]) == ["M(G1,N1) (x) N2/[N2,G2]"]


class TestCor44:
    """Tests for the corollary criteria."""

    def test_coprime(self, s3: FiniteGroup) -> None:
        """|S3^ab| = 2 and |Z3| = 3."""
        result = cor44_coprime(s3, cyclic(3))
        assert result.holds
        assert result.orders == (2, 3)
        assert result.conclusion is not None

    def test_shared_prime(self) -> None:
        """gcd(2, 4) = 2."""
        assert not cor44_coprime(cyclic(2), cyclic(4)).holds

    def test_perfect(self) -> None:
        """The trivial group is perfect with trivial multipliers."""
        one = trivial_group()
        data = PairInvariantData.trivial()
        assert cor44_coprime(one, cyclic(6)).holds
        assert cor44_perfect(one, one, data, data).holds
        assert not cor44_perfect(one, cyclic(2), data, data).holds

    def test_implication_holds(self, s3: FiniteGroup) -> None:
        """S3 and Z3 meet every group-level condition."""
        verdict = cor44_check(s3, cyclic(3), whole_data(s3), whole_data(cyclic(3)))
        assert verdict.status is Status.PASS

    def test_a4_z2_finding(self, a4: FiniteGroup) -> None:
        """Coprime abelianizations, yet M(A4) (x) Z2 = Z2."""
        z2 = cyclic(2)
        verdict = cor44_check(a4, z2, whole_data(a4), whole_data(z2))
        assert verdict.status is Status.MISMATCH
        assert verdict.values["coprime"] is True
        conditions = verdict.values["hypotheses"]["conditions"]
        violated = [c["label"] for c in conditions if c["holds"] is False]
        assert violated == ["M(G1) (x) G2^ab"]

    def test_no_criterion(self) -> None:
        """(Z2, Z4) meets neither criterion."""
        z2, z4 = cyclic(2), cyclic(4)
        verdict = cor44_check(z2, z4, whole_data(z2), whole_data(z4))
        assert verdict.status is Status.NA
        assert verdict.reason is NAReason.HYPOTHESIS_UNMET


class TestThm41EvalCheck:
    """Tests for thm41_eval_check."""

    def test_whole_pairs(self) -> None:
        """Miller and the five-term class-2 shape are reproduced."""
        d1 = PairInvariantData.whole(Z2, KLEIN, m2=KLEIN)
        d2 = PairInvariantData.whole(ZERO, Z2, m2=ZERO)
        verdict = thm41_eval_check(d1, d2, both_whole=True)
        assert verdict.status is Status.PASS
        assert verdict.values["miller"] is True
        assert verdict.values["burns_ellis"] is True

    def test_trivial_pairs(self) -> None:
        """N1 = N2 = 1 gives 0 at both classes."""
        d = PairInvariantData(m1=ZERO, m2=ZERO, n_mod=ZERO, q_ab=KLEIN, m_q=Z2)
        verdict = thm41_eval_check(d, d, both_trivial=True)
        assert verdict.status is Status.PASS
        assert verdict.values["trivial_normal_vanishes"] is True

    def test_missing_m2(self) -> None:
        """Class 2 is NA without M2 data."""
        d = PairInvariantData(m1=Z2, n_mod=Z2, q_ab=ZERO, m_q=ZERO)
        verdict = thm41_eval_check(d, d)
        assert verdict.status is Status.NA
        assert verdict.reason is NAReason.MISSING_INVARIANT
        assert verdict.values["c1"] == KLEIN.to_dict()

    def test_missing_m1(self) -> None:
        """Nothing is evaluated without M(G, N)."""
        verdict = thm41_eval_check(PairInvariantData(), PairInvariantData())
        assert verdict.status is Status.NA
        assert verdict.values["missing"] == "m1"
