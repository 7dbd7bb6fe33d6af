"""Shared group fixtures."""

import pytest

from src.fingrp.constructors import (
    alternating,
    cyclic,
    dihedral,
    direct_product,
    quaternion,
    symmetric,
)
from src.fingrp.group import FiniteGroup, PairOfGroups, Subgroup
from src.fingrp.subgroups import subgroup_generated


def first_of_order(g: FiniteGroup, k: int) -> int:
    """Smallest element index of order k."""
    return next(x for x in g.elements if g.element_order(x) == k)


@pytest.fixture(scope="session")
def s3() -> FiniteGroup:
    return symmetric(3)


@pytest.fixture(scope="session")
def d4() -> FiniteGroup:
    return dihedral(4)


@pytest.fixture(scope="session")
def q8() -> FiniteGroup:
    return quaternion(8)


@pytest.fixture(scope="session")
def a4() -> FiniteGroup:
    return alternating(4)


@pytest.fixture(scope="session")
def klein() -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2))


@pytest.fixture(scope="session")
def s3_a3(s3: FiniteGroup) -> PairOfGroups:
    return PairOfGroups(s3, subgroup_generated(s3, [first_of_order(s3, 3)]), "S3-A3")


@pytest.fixture(scope="session")
def klein_factor(klein: FiniteGroup) -> PairOfGroups:
    """(Z2 x Z2, Z2 x 0); element 2 is (1,0)."""
    return PairOfGroups(klein, Subgroup(klein, (0, 2)), "V4-factor")


@pytest.fixture(scope="session")
def z4_z2() -> PairOfGroups:
    g = cyclic(4)
    return PairOfGroups(g, Subgroup(g, (0, 2)), "Z4-Z2")
