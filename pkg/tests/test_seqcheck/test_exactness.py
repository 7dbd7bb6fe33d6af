"""Tests for exactness checks on abelian sequences."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.abgrp.groups import AbelianGroup, PresentedAbelian, from_relation_matrix
from src.abgrp.homs import AbelianHom
from src.seqcheck.exactness import (
    AbelianSequence,
    SequenceShapeError,
    coker_ker_compare,
    exact_at,
    exact_everywhere,
    is_complex,
    order_telescopes,
)


def cyclic(n: int) -> PresentedAbelian:
    return PresentedAbelian.standard(AbelianGroup.cyclic(n))


ZERO = PresentedAbelian.standard(AbelianGroup.trivial())
KLEIN = PresentedAbelian.standard(AbelianGroup(torsion=(2, 2)))


def z2_z4_z2() -> AbelianSequence:
    """0 → Z2 → Z4 → Z2 → 0 with 1 ↦ 2 and reduction."""
    z2, z4 = cyclic(2), cyclic(4)
    return AbelianSequence.of(
        AbelianHom.zero(ZERO, z2),
        AbelianHom.build(z2, z4, [[2]]),
        AbelianHom.build(z4, z2, [[1]]),
        AbelianHom.zero(z2, ZERO),
    )


class TestAbelianSequence:
    """Tests for AbelianSequence construction."""

    def test_composability_checked(self) -> None:
        """Z2 → Z2 followed by a map out of Z4 is rejected."""
        with pytest.raises(SequenceShapeError):
            AbelianSequence.of(AbelianHom.identity(cyclic(2)), AbelianHom.identity(cyclic(4)))

    def test_empty_rejected(self) -> None:
        """At least one map."""
        with pytest.raises(SequenceShapeError):
            AbelianSequence(())

    def test_label_count(self) -> None:
        """One label per group."""
        with pytest.raises(ValueError):
            AbelianSequence.of(AbelianHom.identity(cyclic(2)), labels=["A"])


class TestIsComplex:
    """Tests for is_complex."""

    def test_short_exact(self) -> None:
        """0 → Z2 → Z4 → Z2 → 0 is a complex."""
        assert is_complex(z2_z4_z2()).holds

    def test_identities_fail(self) -> None:
        """Z2 → Z2 → Z2 by identities fails at position 1."""
        z2 = cyclic(2)
        s = AbelianSequence.of(AbelianHom.identity(z2), AbelianHom.identity(z2))
        result = is_complex(s)
        assert not result.holds
        assert result.position == 1
        assert result.witness == (1,)

    def test_single_map(self) -> None:
        """A single map is vacuously a complex."""
        assert is_complex(AbelianSequence.of(AbelianHom.identity(cyclic(3)))).holds


class TestExactAt:
    """Tests for exact_at and exact_everywhere."""

    def test_short_exact(self) -> None:
        """Exact at every interior position."""
        s = z2_z4_z2()
        assert all(exact_at(s, i).holds for i in range(1, s.length))
        assert exact_everywhere(s).holds

    def test_split(self) -> None:
        """0 → Z2 → Z2 + Z2 → Z2 → 0 by inclusion and projection."""
        z2 = cyclic(2)
        s = AbelianSequence.of(
            AbelianHom.build(z2, KLEIN, [[1, 0]]),
            AbelianHom.build(KLEIN, z2, [[0], [1]]),
        )
        assert exact_at(s, 1).holds

    def test_identities_not_exact(self) -> None:
        """Kernel 0 differs from image Z2."""
        z2 = cyclic(2)
        s = AbelianSequence.of(AbelianHom.identity(z2), AbelianHom.identity(z2))
        result = exact_at(s, 1)
        assert not result.holds
        assert result.witness == (1,)

    def test_kernel_larger_than_image(self) -> None:
        """Z2 → Z4 → Z2 with the zero second map leaves 1 in the kernel only."""
        z2, z4 = cyclic(2), cyclic(4)
        s = AbelianSequence.of(
            AbelianHom.build(z2, z4, [[2]]), AbelianHom.zero(z4, z2)
        )
        result = exact_at(s, 1)
        assert not result.holds
        assert result.detail == "kernel element outside the image"

    def test_position_range(self) -> None:
        """Positions run over 1..k-1."""
        with pytest.raises(ValueError):
            exact_at(z2_z4_z2(), 4)

    @given(t=st.integers(-5, 5), swap=st.booleans())
    @settings(max_examples=25, deadline=None)
    def test_re_presentation_invariance(self, t: int, swap: bool) -> None:
        """Changing the middle presentation by a unimodular column move keeps exactness."""
        a, b = (1, 0) if swap else (0, 1)
        v = [[1, 0], [0, 1]]
        v[a][b] = t
        v_inverse = [[1, 0], [0, 1]]
        v_inverse[a][b] = -t
        middle = from_relation_matrix(
            [[sum(r[k] * v[k][j] for k in range(2)) for j in range(2)] for r in ([2, 0], [0, 2])],
            generator_count=2,
        )
        z2 = cyclic(2)
        inclusion = [sum(x * v[k][j] for k, x in enumerate([1, 0])) for j in range(2)]
        projection_rows = [[0], [1]]
        projection = [
            [sum(v_inverse[i][k] * projection_rows[k][0] for k in range(2))] for i in range(2)
        ]
        s = AbelianSequence.of(
            AbelianHom.build(z2, middle, [inclusion]),
            AbelianHom.build(middle, z2, projection),
        )
        assert exact_at(s, 1).holds


class TestCokerKerCompare:
    """Tests for coker_ker_compare."""

    def test_trivial(self) -> None:
        """0 → 0 and 0 → Z2."""
        assert coker_ker_compare(AbelianHom.identity(ZERO), AbelianHom.zero(ZERO, cyclic(2)))

    def test_zero_map_against_injection(self) -> None:
        """coker Z2 versus ker 0."""
        z2 = cyclic(2)
        f = AbelianHom.zero(z2, z2)
        g = AbelianHom.build(z2, cyclic(4), [[2]])
        assert not coker_ker_compare(f, g)

    def test_equal_orders(self) -> None:
        """coker(Z2 → Z4) = Z2 = ker(Z4 → Z2)."""
        z2, z4 = cyclic(2), cyclic(4)
        f = AbelianHom.build(z2, z4, [[2]])
        g = AbelianHom.build(z4, z2, [[1]])
        assert coker_ker_compare(f, g)


class TestOrderTelescopes:
    """Tests for order_telescopes."""

    def test_short_exact(self) -> None:
        """2 · 2 = 4 for 0 → Z2 → Z4 → Z2 → 0."""
        assert order_telescopes(z2_z4_z2())

    def test_open_ends(self) -> None:
        """Z4 → Z2 alone: |Z4| / |Z2| = |ker| · |coker|^-1 = 2."""
        assert order_telescopes(AbelianSequence.of(AbelianHom.build(cyclic(4), cyclic(2), [[1]])))

    def test_infinite_rejected(self) -> None:
        """Only finite sequences."""
        z = PresentedAbelian.standard(AbelianGroup(free_rank=1))
        with pytest.raises(ValueError):
            order_telescopes(AbelianSequence.of(AbelianHom.identity(z)))
