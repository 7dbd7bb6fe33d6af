"""Tests for integral homology and induced maps."""

import pytest

from src.abgrp.groups import AbelianGroup
from src.abgrp.homs import compose
from src.abgrp.lattice import sparse_row_times
from src.config import Settings
from src.fingrp.constructors import (
    cyclic,
    dihedral,
    direct_product,
    direct_product_all,
    symmetric,
    trivial_group,
)
from src.fingrp.group import FiniteGroup, GroupHom, Subgroup
from src.fingrp.sections import abelianization
from src.fingrp.subgroups import center, quotient
from src.homology.bar import bar_complex
from src.homology.oracle import (
    HomologyBoundError,
    homology_at,
    homology_group,
    induced_on_homology,
    schur_multiplier,
    third_homology,
)


class TestHomologyAt:
    """Tests for homology_at on bar complexes."""

    def test_h0_is_integers(self, s3: FiniteGroup) -> None:
        """H_0 = Z."""
        assert homology_at(bar_complex(s3, 1), 0).canonical == AbelianGroup(free_rank=1)

    def test_h1_is_abelianization(
        self, d4: FiniteGroup, q8: FiniteGroup, a4: FiniteGroup
    ) -> None:
        """H_1 agrees with the abelianization."""
        for g in (d4, q8, a4, cyclic(6)):
            assert homology_group(g, 1).canonical == abelianization(g).canonical

    def test_klein_h2(self, klein: FiniteGroup) -> None:
        """H_2(Z2 x Z2) = Z2."""
        assert homology_at(bar_complex(klein, 3), 2).canonical == AbelianGroup.cyclic(2)

    def test_degree_needs_next_boundary(self) -> None:
        """H_k needs d_(k+1)."""
        with pytest.raises(ValueError):
            homology_at(bar_complex(cyclic(2), 2), 2)

    def test_cycle_witness_is_a_cycle(self, klein: FiniteGroup) -> None:
        """The generator witness of H_2 has zero boundary."""
        complex_ = bar_complex(klein, 3)
        h2 = homology_at(complex_, 2)
        assert sparse_row_times(h2.cycle(0), complex_.boundary(2)) == {}


class TestSchurMultiplier:
    """Tests for schur_multiplier."""

    @pytest.mark.parametrize("n", range(1, 9))
    def test_cyclic_vanishes(self, n: int) -> None:
        """M(Zn) = 0."""
        assert schur_multiplier(cyclic(n)).is_trivial()

    def test_known_values(
        self, s3: FiniteGroup, d4: FiniteGroup, q8: FiniteGroup, a4: FiniteGroup
    ) -> None:
        """M(S3) = 0, M(D4) = Z2, M(Q8) = 0, M(A4) = Z2."""
        assert schur_multiplier(s3).is_trivial()
        assert schur_multiplier(d4) == AbelianGroup.cyclic(2)
        assert schur_multiplier(q8).is_trivial()
        assert schur_multiplier(a4) == AbelianGroup.cyclic(2)

    def test_abelian_two_generator(self) -> None:
        """M(Z2 x Z4) = Z2 and M(Z3 x Z3) = Z3."""
        assert schur_multiplier(direct_product(cyclic(2), cyclic(4))) == AbelianGroup.cyclic(2)
        assert schur_multiplier(direct_product(cyclic(3), cyclic(3))) == AbelianGroup.cyclic(3)

    @pytest.mark.slow
    def test_elementary_rank_three(self) -> None:
        """M(Z2^3) = Z2^3."""
        g = direct_product_all([cyclic(2)] * 3)
        assert schur_multiplier(g) == AbelianGroup(torsion=(2, 2, 2))

    @pytest.mark.slow
    def test_d6(self) -> None:
        """M(D6) = Z2."""
        assert schur_multiplier(dihedral(6)) == AbelianGroup.cyclic(2)

    def test_exponent_divides_order(self, d4: FiniteGroup, a4: FiniteGroup) -> None:
        """The exponent of H_2 divides |G|."""
        for g in (d4, a4, symmetric(3)):
            assert g.order % schur_multiplier(g).exponent() == 0

    def test_trivial_group(self) -> None:
        """M(1) = 0."""
        assert schur_multiplier(trivial_group()).is_trivial()

    def test_bound_enforced(self, s3: FiniteGroup) -> None:
        """Groups above the configured bound raise instead of computing."""
        with pytest.raises(HomologyBoundError) as info:
            schur_multiplier(s3, Settings(max_order=4))
        assert info.value.reason == "homology-bound"


class TestThirdHomology:
    """Tests for third_homology."""

    def test_cyclic(self) -> None:
        """H_3(Zn) = Zn."""
        assert third_homology(cyclic(2)) == AbelianGroup.cyclic(2)
        assert third_homology(cyclic(4)) == AbelianGroup.cyclic(4)

    def test_s3(self, s3: FiniteGroup) -> None:
        """H_3(S3) = Z6."""
        assert third_homology(s3) == AbelianGroup.cyclic(6)

    def test_klein(self, klein: FiniteGroup) -> None:
        """H_3(Z2 x Z2) = Z2^3."""
        assert third_homology(klein) == AbelianGroup(torsion=(2, 2, 2))

    @pytest.mark.slow
    def test_q8(self, q8: FiniteGroup) -> None:
        """H_3(Q8) = Z8."""
        assert third_homology(q8) == AbelianGroup.cyclic(8)

    def test_bound_enforced(self, d4: FiniteGroup) -> None:
        """The degree-3 bound is separate from the degree-2 bound."""
        with pytest.raises(HomologyBoundError):
            third_homology(d4, Settings(h3_max_order=6))


class TestInducedOnHomology:
    """Tests for induced_on_homology."""

    def test_identity(self, d4: FiniteGroup) -> None:
        """The identity induces an automorphism of H_2."""
        induced = induced_on_homology(GroupHom.identity(d4), 2)
        assert induced.is_injective()
        assert induced.is_surjective()

    def test_projection_to_cyclic(self, klein: FiniteGroup) -> None:
        """Z2 x Z2 -> Z2 on H_2 lands in the trivial group."""
        _, projection = quotient(klein, Subgroup(klein, (0, 1)))
        induced = induced_on_homology(projection, 2)
        assert induced.is_zero()
        assert induced.source.canonical == AbelianGroup.cyclic(2)

    def test_degree_one_matches_abelianization(self, d4: FiniteGroup) -> None:
        """D4 -> D4/Z(D4) is onto on H_1."""
        _, projection = quotient(d4, center(d4))
        assert induced_on_homology(projection, 1).is_surjective()

    def test_degree_zero_identity(self, s3: FiniteGroup) -> None:
        """Every hom induces the identity on H_0 = Z."""
        f = GroupHom.trivial(s3, cyclic(2))
        induced = induced_on_homology(f, 0)
        assert induced.is_injective()
        assert induced.is_surjective()

    def test_composition_degree_one(self, d4: FiniteGroup) -> None:
        """H_1(g f) = H_1(g) H_1(f) for D4 -> D4/Z -> quotient of order 2."""
        q, f = quotient(d4, center(d4))
        _, g = quotient(q, Subgroup(q, (0, 1)))
        composite = f.then(g)
        assert induced_on_homology(composite, 1).equals(
            compose(induced_on_homology(g, 1), induced_on_homology(f, 1))
        )

    def test_composition_degree_three(self) -> None:
        """Z2 -> Z4 -> Z2 (1 -> 2, then reduction) is zero on H_3, matching the composite."""
        include = GroupHom(cyclic(2), cyclic(4), (0, 2))
        reduce = GroupHom(cyclic(4), cyclic(2), (0, 1, 0, 1))
        composite = include.then(reduce)
        lhs = induced_on_homology(composite, 3)
        rhs = compose(induced_on_homology(reduce, 3), induced_on_homology(include, 3))
        assert lhs.is_zero()
        assert lhs.equals(rhs)

    def test_inclusion_on_h3(self) -> None:
        """Z2 -> Z4 (1 -> 2) on H_3 is Z2 -> Z4, injective."""
        include = GroupHom(cyclic(2), cyclic(4), (0, 2))
        assert induced_on_homology(include, 3).is_injective()
