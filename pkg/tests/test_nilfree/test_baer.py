"""Tests for Baer sections of presented pairs."""

import pytest

from src.abgrp.groups import AbelianGroup
from src.fingrp.constructors import cyclic, direct_product
from src.fingrp.group import FiniteGroup
from src.homology.oracle import schur_multiplier
from src.nilfree.baer import (
    PresentationWithSubgroup,
    abelian_presentation,
    baer_section,
    presented_class,
    presented_group,
    scope_violation,
)
from src.nilfree.collection import NilpotentScopeError

KLEIN_RELATORS = ["x1^2", "x2^2", "[x1,x2]"]
DIHEDRAL_RELATORS = ["x1^4", "x2^2", "(x1 x2)^2"]
QUATERNION_RELATORS = ["x1^4", "x1^2 x2^-2", "x2^-1 x1 x2 x1"]


class TestPresentation:
    """Tests for PresentationWithSubgroup."""

    def test_relators_adjoined(self) -> None:
        """S always contains R."""
        p = PresentationWithSubgroup.parse(2, KLEIN_RELATORS, ["x1"])
        assert set(p.relators) <= set(p.subgroup_words)
        assert (1,) in p.subgroup_words

    def test_rank_bound(self) -> None:
        """Rank 4 is out of scope."""
        with pytest.raises(NilpotentScopeError):
            PresentationWithSubgroup(4, (), ())

    def test_abelian_presentation(self) -> None:
        """Invariant factors give powers and commutators."""
        p = abelian_presentation((2, 4), [(0, 2)])
        assert p.relators[:2] == ((1, 1), (2, 2, 2, 2))
        assert (2, 2) in p.subgroup_words
        assert scope_violation(p, 1) is None

    def test_coordinate_length_checked(self) -> None:
        """Coordinates must match the invariant factor count."""
        with pytest.raises(ValueError):
            abelian_presentation((2, 2), [(1,)])


class TestScopeGuard:
    """Tests for scope_violation."""

    def test_noncommuting_generators(self) -> None:
        """The infinite dihedral group exhausts the coset limit."""
        p = PresentationWithSubgroup.parse(2, ["x1^2", "x2^2"], [])
        assert scope_violation(p, 1) is not None
        with pytest.raises(NilpotentScopeError):
            baer_section(p, 1)

    def test_cyclic_conjugate_commutator_accepted(self) -> None:
        """x1 x2 x1^-1 x2^-1 also makes the generators commute."""
        p = PresentationWithSubgroup.parse(2, ["x1^2", "x2^2", "x1 x2 x1^-1 x2^-1"], [])
        assert scope_violation(p, 1) is None

    def test_infinite_group(self) -> None:
        """Z^2 is rejected."""
        p = PresentationWithSubgroup.parse(2, ["[x1,x2]"], [])
        assert scope_violation(p, 1) is not None

    def test_class_two_rank_three(self) -> None:
        """c = 2 needs rank at most 2."""
        p = abelian_presentation((2, 2, 2), [])
        assert scope_violation(p, 2) is not None
        assert scope_violation(p, 1) is None

    def test_unsupported_class(self) -> None:
        """Only c in {1, 2}."""
        assert scope_violation(abelian_presentation((2,), []), 3) is not None


class TestBaerSection:
    """Tests for baer_section."""

    def test_cyclic_vanishes(self) -> None:
        """Rank-1 presentations have trivial sections."""
        p = PresentationWithSubgroup.parse(1, ["x1^2"], [])
        assert baer_section(p, 1).is_trivial()
        q = PresentationWithSubgroup.parse(1, ["x1^6"], ["x1"])
        assert baer_section(q, 1).is_trivial()
        assert baer_section(q, 2).is_trivial()

    def test_klein_whole(self, klein: FiniteGroup) -> None:
        """N = G in Z2 x Z2 gives M(G) = Z2, matching the bar oracle."""
        p = PresentationWithSubgroup.parse(2, KLEIN_RELATORS, ["x1", "x2"])
        assert baer_section(p, 1) == AbelianGroup.cyclic(2)
        assert baer_section(p, 1) == schur_multiplier(klein)

    def test_klein_factor(self) -> None:
        """N = <x1> in Z2 x Z2 gives Z2."""
        p = PresentationWithSubgroup.parse(2, KLEIN_RELATORS, ["x1"])
        assert baer_section(p, 1) == AbelianGroup.cyclic(2)

    def test_trivial_subgroup(self) -> None:
        """S = R gives the trivial group at both classes."""
        p = PresentationWithSubgroup.parse(2, KLEIN_RELATORS, [])
        assert baer_section(p, 1).is_trivial()
        assert baer_section(p, 2).is_trivial()

    def test_klein_class_two(self) -> None:
        """The 2-nilpotent multiplier of Z2 x Z2 is Z2 + Z2."""
        p = PresentationWithSubgroup.parse(2, KLEIN_RELATORS, ["x1", "x2"])
        assert baer_section(p, 2) == AbelianGroup(torsion=(2, 2))

    @pytest.mark.parametrize("orders", [(2, 4), (3, 3)])
    def test_agrees_with_oracle(self, orders: tuple[int, int]) -> None:
        """At c = 1 with N = G the section is the Schur multiplier."""
        p = abelian_presentation(orders, [(1, 0), (0, 1)])
        g = direct_product(cyclic(orders[0]), cyclic(orders[1]))
        assert baer_section(p, 1) == schur_multiplier(g)

    def test_rank_three(self) -> None:
        """M(Z2^3) = Z2^3."""
        p = abelian_presentation((2, 2, 2), [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert baer_section(p, 1) == AbelianGroup(torsion=(2, 2, 2))

    def test_parsed_matches_generated(self) -> None:
        """The two presentation routes agree."""
        parsed = PresentationWithSubgroup.parse(2, KLEIN_RELATORS, ["x1"])
        generated = abelian_presentation((2, 2), [(1, 0)])
        assert baer_section(parsed, 1) == baer_section(generated, 1)


class TestNilpotentPresentations:
    """Tests for F/R of nilpotency class 2 at c = 1."""

    def test_enumerated_orders(self) -> None:
        """Coset enumeration recovers D4 and Q8."""
        d4 = PresentationWithSubgroup.parse(2, DIHEDRAL_RELATORS, [], name="D4")
        q8 = PresentationWithSubgroup.parse(2, QUATERNION_RELATORS, [], name="Q8")
        assert presented_group(d4).order == 8
        assert presented_group(q8).order == 8
        assert presented_class(d4) == 2
        assert presented_class(q8) == 2

    def test_abelian_found_by_enumeration(self) -> None:
        """(x1 x2)^2 makes Z2 x Z2 abelian without a commutator relator."""
        p = PresentationWithSubgroup.parse(2, ["x1^2", "x2^2", "(x1 x2)^2"], ["x1", "x2"])
        assert presented_class(p) == 1
        assert baer_section(p, 1) == AbelianGroup.cyclic(2)
        assert baer_section(p, 2) == AbelianGroup(torsion=(2, 2))

    def test_dihedral_whole(self, d4: FiniteGroup) -> None:
        """M(D4) = Z2, matching the bar oracle."""
        p = PresentationWithSubgroup.parse(2, DIHEDRAL_RELATORS, ["x1", "x2"])
        assert baer_section(p, 1) == AbelianGroup.cyclic(2)
        assert baer_section(p, 1) == schur_multiplier(d4)

    def test_quaternion_whole(self, q8: FiniteGroup) -> None:
        """M(Q8) vanishes."""
        p = PresentationWithSubgroup.parse(2, QUATERNION_RELATORS, ["x1", "x2"])
        assert baer_section(p, 1).is_trivial()
        assert schur_multiplier(q8).is_trivial()

    def test_dihedral_cyclic_factor(self) -> None:
        """The complemented Z4 in D4 carries all of M(D4)."""
        p = PresentationWithSubgroup.parse(2, DIHEDRAL_RELATORS, ["x1"])
        assert baer_section(p, 1) == AbelianGroup.cyclic(2)

    def test_dihedral_trivial_subgroup(self) -> None:
        """S = R gives the trivial group."""
        p = PresentationWithSubgroup.parse(2, DIHEDRAL_RELATORS, [])
        assert baer_section(p, 1).is_trivial()

    def test_class_two_section_rejected(self) -> None:
        """c = 2 still needs an abelian F/R."""
        p = PresentationWithSubgroup.parse(2, DIHEDRAL_RELATORS, ["x1", "x2"])
        assert scope_violation(p, 1) is None
        assert scope_violation(p, 2) is not None
        with pytest.raises(NilpotentScopeError):
            baer_section(p, 2)

    def test_non_nilpotent_rejected(self) -> None:
        """S3 is finite but not nilpotent."""
        p = PresentationWithSubgroup.parse(2, ["x1^2", "x2^2", "(x1 x2)^3"], ["x1", "x2"])
        assert scope_violation(p, 1) == "F/R is not nilpotent of class at most 3"
        with pytest.raises(NilpotentScopeError):
            presented_class(p)
