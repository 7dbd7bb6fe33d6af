"""Tests for the word grammar and free-group helpers."""

import pytest

from src.nilfree.words import (
    WordSyntaxError,
    commutator,
    exponent_sums,
    format_word,
    left_normed,
    parse_word,
)


class TestParseWord:
    """Tests for parse_word."""

    def test_generators_and_powers(self) -> None:
        """Juxtaposition, '*' and integer powers."""
        assert parse_word("x1^2", 1) == (1, 1)
        assert parse_word("x1*x2", 2) == (1, 2)
        assert parse_word("x1 x2^-2", 2) == (1, -2, -2)

    def test_free_reduction(self) -> None:
        """Adjacent inverse letters cancel."""
        assert parse_word("x1 x1^-1", 1) == ()
        assert parse_word("x2 x1 x1^-1 x2^-1", 2) == ()

    def test_identity_forms(self) -> None:
        """'1' and the empty string are the trivial word."""
        assert parse_word("1", 2) == ()
        assert parse_word("", 2) == ()

    def test_commutators(self) -> None:
        """[a, b] = a^-1 b^-1 a b, nested brackets are left-normed."""
        assert parse_word("[x1, x2]", 2) == (-1, -2, 1, 2)
        x, y = (1,), (2,)
        assert parse_word("[x2,x1,x1]", 2) == left_normed([y, x, x])
        assert parse_word("[[x2,x1],x1]", 2) == commutator(commutator(y, x), x)

    def test_parenthesized_power(self) -> None:
        """(x1 x2)^-1 = x2^-1 x1^-1."""
        assert parse_word("(x1 x2)^-1", 2) == (-2, -1)

    def test_generator_beyond_rank(self) -> None:
        """x3 is rejected over two generators."""
        with pytest.raises(WordSyntaxError):
            parse_word("x1 x3", 2)

    def test_malformed(self) -> None:
        """Dangling operators carry a column."""
        with pytest.raises(WordSyntaxError) as info:
            parse_word("x1^", 1)
        assert info.value.column >= 1

    def test_rank_out_of_range(self) -> None:
        """Only ranks 1..3 are supported."""
        with pytest.raises(ValueError):
            parse_word("x1", 4)


class TestHelpers:
    """Tests for the word helpers."""

    def test_commutator_has_zero_exponent_sums(self) -> None:
        """Commutators die in the abelianization."""
        assert exponent_sums(parse_word("[x1,x2] x1^3", 2), 2) == (3, 0)

    def test_format_word(self) -> None:
        """Inverse letters print with ^-1."""
        assert format_word((1, -2)) == "x1 x2^-1"
        assert format_word(()) == "1"
