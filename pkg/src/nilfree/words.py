"""Free-group words and the presentation word grammar.

Words are tuples of nonzero integers: i stands for x_i and -i for its
inverse. Grammar (whitespace ignored)::

    word       := factor ( ["*"] factor )*  |  "1"  |  ""
    factor     := atom [ "^" integer ]
    atom       := "x" index  |  "(" word ")"  |  "[" word ( "," word )+ "]"

Commutators are left-normed, [a, b, c] = [[a, b], c], with
[a, b] = a⁻¹ b⁻¹ a b.
"""

from collections.abc import Iterable
from dataclasses import dataclass
from functools import lru_cache

import pyparsing as pp

Word = tuple[int, ...]

MAX_RANK = 3


class WordSyntaxError(ValueError):
    """A word does not parse, with the offending column."""

    def __init__(self, text: str, column: int, message: str) -> None:
        super().__init__(f"cannot parse {text!r} at column {column}: {message}")
        self.text = text
        self.column = column


def free_reduce(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def invert(w: Word) -> Word:
    return tuple(-a for a in reversed(w))


def power(w: Word, k: int) -> Word:
    if k < 0:
        w, k = invert(w), -k
    return free_reduce(w * k)


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a⁻¹ b⁻¹ a b."""
    return free_reduce(invert(a) + invert(b) + a + b)


def left_normed(words: Iterable[Word]) -> Word:
    it = iter(words)
    out = next(it)
    for w in it:
        out = commutator(out, w)
    return out


def exponent_sums(w: Word, rank: int) -> tuple[int, ...]:
    """Image of w in the abelianized free group Z^rank."""
    sums = [0] * rank
    for a in w:
        sums[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(sums)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return " ".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in w)


@dataclass(frozen=True)
class _Chunk:
    """Parse token wrapping a word, so pyparsing does not flatten the tuple."""

    word: Word


@lru_cache(maxsize=8)
def _grammar(rank: int) -> pp.ParserElement:
    word = pp.Forward()
    integer = pp.Regex(r"[+-]?\d+").set_parse_action(lambda t: int(t[0]))

    def generator_action(s: str, loc: int, t: pp.ParseResults) -> _Chunk:
        index = int(t[0][1:])
        if not 1 <= index <= rank:
            raise pp.ParseFatalException(s, loc, f"generator x{index} outside x1..x{rank}")
        return _Chunk((index,))

    generator = pp.Regex(r"x\d+").set_parse_action(generator_action)
    identity = pp.Literal("1").set_parse_action(lambda: _Chunk(()))
    parenthesized = pp.Suppress("(") + word + pp.Suppress(")")
    bracket = (
        pp.Suppress("[") + word + pp.OneOrMore(pp.Suppress(",") + word) + pp.Suppress("]")
    ).set_parse_action(lambda t: _Chunk(left_normed(c.word for c in t)))
    atom = generator | bracket | parenthesized | identity
    factor = (atom + pp.Optional(pp.Suppress("^") + integer)).set_parse_action(
        lambda t: _Chunk(power(t[0].word, t[1]) if len(t) > 1 else t[0].word)
    )
    body = pp.Optional(factor + pp.ZeroOrMore(pp.Optional(pp.Suppress("*")) + factor))
    body.set_parse_action(lambda t: _Chunk(free_reduce(a for c in t for a in c.word)))
    word <<= body
    return word + pp.StringEnd()


def parse_word(text: str, rank: int) -> Word:
    """
    Parse a word over x1..x_rank into freely reduced form.

    Raises:
        WordSyntaxError: The text does not match the grammar or names a
            generator beyond rank
    """
    if not 1 <= rank <= MAX_RANK:
        raise ValueError(f"rank must lie in 1..{MAX_RANK}, got {rank}")
    try:
        tokens = _grammar(rank).parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise WordSyntaxError(text, exc.column, exc.msg) from None
    return tokens[0].word if tokens else ()
