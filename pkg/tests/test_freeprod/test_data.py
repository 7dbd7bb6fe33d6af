"""Tests for pair invariant data."""

import numpy as np
import pytest

from src.abgrp.groups import AbelianGroup
from src.config import Settings
from src.fingrp.group import FiniteGroup, PairOfGroups, Subgroup
from src.fingrp.subgroups import center
from src.freeprod.data import (
    DataSource,
    MissingInvariantError,
    PairInvariantData,
    pair_data_from_pair,
    random_pair_data,
)
from src.verdicts import NAReason

ZERO = AbelianGroup.trivial()
Z2 = AbelianGroup.cyclic(2)
KLEIN = AbelianGroup(torsion=(2, 2))


class TestPairInvariantData:
    """Tests for PairInvariantData."""

    def test_require(self) -> None:
        """Missing fields raise with the NA reason attached."""
        d = PairInvariantData(m1=Z2, label="x")
        assert d.require("m1") == Z2
        with pytest.raises(MissingInvariantError, match="h3_q") as info:
            d.require("h3_q")
        assert info.value.reason is NAReason.MISSING_INVARIANT

    def test_dict_round_trip(self) -> None:
        """Serialized data restores to an equal value, empty fields included."""
        d = PairInvariantData.whole(Z2, KLEIN, label="V4")
        restored = PairInvariantData.from_dict(d.to_dict())
        assert restored == d
        assert d.to_dict()["m2"] is None

    def test_random_is_seeded(self) -> None:
        """Equal seeds give equal tuples."""
        first = random_pair_data(np.random.default_rng(7))
        second = random_pair_data(np.random.default_rng(7))
        assert first == second
        assert first.source is DataSource.SUPPLIED


class TestPairDataFromPair:
    """Tests for pair_data_from_pair."""

    def test_klein_whole(self, klein: FiniteGroup) -> None:
        """(Z2^2, Z2^2): M = Z2, M2 = Z2^2, N/[N,G] = Z2^2 and a trivial quotient."""
        d = pair_data_from_pair(PairOfGroups(klein, Subgroup.whole(klein), "V4"))
        assert d.source is DataSource.COMPUTED
        assert d.m1 == Z2
        assert d.m2 == KLEIN
        assert d.n_mod == KLEIN
        assert d.g_ab == KLEIN
        assert d.m_g == Z2
        assert d.q_ab == ZERO
        assert d.m_q == ZERO

    def test_s3_a3(self, s3_a3: PairOfGroups) -> None:
        """Quotient Z2 with H3 = Z2; no route gives M2."""
        d = pair_data_from_pair(s3_a3)
        assert d.m1 == ZERO
        assert d.m2 is None
        assert d.n_mod == ZERO
        assert d.q_ab == Z2
        assert d.h3_q == Z2
        assert d.m_g == ZERO
        assert d.label == "S3-A3"

    def test_bound_leaves_fields_empty(self, d4: FiniteGroup) -> None:
        """M(D4) is beyond a bound of 4 while the order-4 quotient is not."""
        d = pair_data_from_pair(PairOfGroups(d4, center(d4)), Settings(max_order=4))
        assert d.m_g is None
        assert d.m_q == Z2
