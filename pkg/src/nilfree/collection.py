"""Free nilpotent groups of small rank and class.

Elements of F / γ_(c+1)(F) are held as truncated Magnus series: x_i maps
to 1 + X_i in the noncommutative power series ring, cut off above degree c.
The map is faithful on the free nilpotent quotient, so collection into the
basic-commutator normal form peels the series one degree at a time.
"""

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import TypeAlias

import structlog
from sympy import divisors, mobius

from src.abgrp.lattice import EchelonLattice
from src.nilfree.words import MAX_RANK, Word, commutator, format_word
from src.verdicts import NAReason

logger = structlog.get_logger()

MAX_CLASS = 3

Commutator: TypeAlias = int | tuple["Commutator", "Commutator"]
Series: TypeAlias = dict[tuple[int, ...], int]


class NilpotentScopeError(ValueError):
    """Input lies outside the ranks, classes or presentations the engine handles."""

    reason = NAReason.NILFREE_SCOPE


def witt_count(rank: int, weight: int) -> int:
    """Rank of the weight-w layer of the free Lie ring: (1/w) sum mu(d) r^(w/d)."""
    if weight < 1:
        raise ValueError(f"weight must be positive, got {weight}")
    total = sum(int(mobius(d)) * rank ** (weight // d) for d in divisors(weight))
    return total // weight


def _set(out: Series, key: tuple[int, ...], value: int) -> None:
    if value:
        out[key] = value
    else:
        out.pop(key, None)


def series_mul(a: Series, b: Series, degree: int) -> Series:
    out: Series = {}
    for ka, va in a.items():
        room = degree - len(ka)
        for kb, vb in b.items():
            if len(kb) <= room:
                key = ka + kb
                _set(out, key, out.get(key, 0) + va * vb)
    return out


def series_inverse(s: Series, degree: int) -> Series:
    """(1 + A)^-1 = sum (-A)^k, exact below the truncation degree."""
    if s.get((), 0) != 1:
        raise ValueError("only series with constant term 1 are invertible here")
    minus_a = {k: -v for k, v in s.items() if k}
    out: Series = {(): 1}
    term: Series = {(): 1}
    for _ in range(degree):
        term = series_mul(term, minus_a, degree)
        for k, v in term.items():
            _set(out, k, out.get(k, 0) + v)
    return out


def series_power(s: Series, k: int, degree: int) -> Series:
    if k < 0:
        s, k = series_inverse(s, degree), -k
    out: Series = {(): 1}
    while k:
        if k & 1:
            out = series_mul(out, s, degree)
        s = series_mul(s, s, degree)
        k >>= 1
    return out


def magnus(word: Iterable[int], degree: int) -> Series:
    out: Series = {(): 1}
    for a in word:
        i = abs(a)
        if a > 0:
            letter: Series = {(): 1, (i,): 1}
        else:
            letter = {(i,) * n: (-1) ** n for n in range(degree + 1)}
        out = series_mul(out, letter, degree)
    return out


def _lie(c: Commutator) -> Series:
    if isinstance(c, int):
        return {(c,): 1}
    u, v = _lie(c[0]), _lie(c[1])
    out = series_mul(u, v, MAX_CLASS + 1)
    for k, val in series_mul(v, u, MAX_CLASS + 1).items():
        _set(out, k, out.get(k, 0) - val)
    return out


def _word_of(c: Commutator) -> Word:
    if isinstance(c, int):
        return (c,)
    return commutator(_word_of(c[0]), _word_of(c[1]))


def format_commutator(c: Commutator) -> str:
    if isinstance(c, int):
        return f"x{c}"
    return f"[{format_commutator(c[0])}, {format_commutator(c[1])}]"


@dataclass(frozen=True)
class CommutatorBasis:
    """
    Hall-ordered basic commutators of the free nilpotent group.

    Ordered by weight, then by the positions of the two constituents.
    A commutator [u, v] is basic when u > v and, for u = [s, t], t <= v.
    """

    rank: int
    nilpotency_class: int
    commutators: tuple[Commutator, ...]
    weights: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.commutators)

    def layer(self, weight: int) -> range:
        start = sum(1 for w in self.weights if w < weight)
        end = sum(1 for w in self.weights if w <= weight)
        return range(start, end)

    def word(self, index: int) -> Word:
        return _word_of(self.commutators[index])

    def label(self, index: int) -> str:
        return format_commutator(self.commutators[index])

    @cached_property
    def _series(self) -> tuple[Series, ...]:
        return tuple(magnus(self.word(i), self.nilpotency_class) for i in range(len(self)))

    @cached_property
    def _layers(self) -> tuple[tuple[tuple[tuple[int, ...], ...], EchelonLattice], ...]:
        out: list[tuple[tuple[tuple[int, ...], ...], EchelonLattice]] = []
        for w in range(1, self.nilpotency_class + 1):
            monomials = tuple(product(range(1, self.rank + 1), repeat=w))
            rows: list[list[int]] = []
            for j in self.layer(w):
                lie = _lie(self.commutators[j])
                rows.append([lie.get(m, 0) for m in monomials])
            out.append((monomials, EchelonLattice.from_rows(rows, len(monomials), track=True)))
        return tuple(out)

    def series_of(self, exponents: tuple[int, ...]) -> Series:
        c = self.nilpotency_class
        out: Series = {(): 1}
        for s, e in zip(self._series, exponents, strict=True):
            if e:
                out = series_mul(out, series_power(s, e, c), c)
        return out

    def collect_series(self, series: Series) -> tuple[int, ...]:
        """
        Normal-form exponents of a group element given by its Magnus series.

        Raises:
            ArithmeticError: The series is not the image of a group element
        """
        c = self.nilpotency_class
        exponents = [0] * len(self)
        current = series
        for w, (monomials, lattice) in enumerate(self._layers, start=1):
            target = [current.get(m, 0) for m in monomials]
            if not any(target):
                continue
            coefficients = lattice.solve_generators(target)
            if coefficients is None:
                raise ArithmeticError(f"degree-{w} part is not a Lie element")
            block: Series = {(): 1}
            for j, e in zip(self.layer(w), coefficients, strict=True):
                exponents[j] = e
                if e:
                    block = series_mul(block, series_power(self._series[j], e, c), c)
            current = series_mul(series_inverse(block, c), current, c)
        return tuple(exponents)


def _is_basic(u: Commutator, v: Commutator, position: dict[Commutator, int]) -> bool:
    if position[u] <= position[v]:
        return False
    return isinstance(u, int) or position[u[1]] <= position[v]


@lru_cache(maxsize=16)
def basic_commutator_basis(rank: int, nilpotency_class: int) -> CommutatorBasis:
    """
    Basic commutators of weight at most the class, in Hall order.

    Raises:
        NilpotentScopeError: rank or class outside 1..3
    """
    if not 1 <= rank <= MAX_RANK or not 1 <= nilpotency_class <= MAX_CLASS:
        raise NilpotentScopeError(
            f"free nilpotent engine handles rank and class up to {MAX_RANK}, "
            f"got rank {rank} and class {nilpotency_class}"
        )
    commutators: list[Commutator] = list(range(1, rank + 1))
    weights = [1] * rank
    position: dict[Commutator, int] = {c: i for i, c in enumerate(commutators)}
    for w in range(2, nilpotency_class + 1):
        layer = [
            (u, v)
            for u, wu in zip(commutators, weights, strict=True)
            for v, wv in zip(commutators, weights, strict=True)
            if wu + wv == w and _is_basic(u, v, position)
        ]
        layer.sort(key=lambda pair: (position[pair[0]], position[pair[1]]))
        for c in layer:
            position[c] = len(commutators)
            commutators.append(c)
            weights.append(w)
    basis = CommutatorBasis(rank, nilpotency_class, tuple(commutators), tuple(weights))
    logger.debug(
        "Commutator basis built", rank=rank, nilpotency_class=nilpotency_class, size=len(basis)
    )
    return basis


@dataclass(frozen=True)
class NilElement:
    """Element of a free nilpotent group as an exponent vector over the basis."""

    basis: CommutatorBasis
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.exponents) != len(self.basis):
            raise ValueError(
                f"expected {len(self.basis)} exponents, got {len(self.exponents)}"
            )

    @classmethod
    def identity(cls, basis: CommutatorBasis) -> "NilElement":
        return cls(basis, (0,) * len(basis))

    def _from_series(self, series: Series) -> "NilElement":
        return NilElement(self.basis, self.basis.collect_series(series))

    @property
    def series(self) -> Series:
        return self.basis.series_of(self.exponents)

    def __mul__(self, other: "NilElement") -> "NilElement":
        if other.basis != self.basis:
            raise ValueError("elements of different free nilpotent groups")
        c = self.basis.nilpotency_class
        return self._from_series(series_mul(self.series, other.series, c))

    def inverse(self) -> "NilElement":
        return self._from_series(series_inverse(self.series, self.basis.nilpotency_class))

    def __pow__(self, k: int) -> "NilElement":
        return self._from_series(series_power(self.series, k, self.basis.nilpotency_class))

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def layer_exponents(self, weight: int) -> tuple[int, ...]:
        r = self.basis.layer(weight)
        return self.exponents[r.start : r.stop]

    def to_word(self) -> Word:
        out: list[int] = []
        for j, e in enumerate(self.exponents):
            w = self.basis.word(j)
            if e < 0:
                w, e = tuple(-a for a in reversed(w)), -e
            out.extend(w * e)
        return tuple(out)

    def __str__(self) -> str:
        parts = [
            self.basis.label(j) + (f"^{e}" if e != 1 else "")
            for j, e in enumerate(self.exponents)
            if e
        ]
        return " ".join(parts) or "1"


def collect(word: Word, rank: int, nilpotency_class: int) -> NilElement:
    """
    Collected normal form of a free-group word in F / γ_(class+1)(F).

    Raises:
        NilpotentScopeError: rank or class outside 1..3
        ValueError: The word names a generator beyond rank
    """
    if any(not 1 <= abs(a) <= rank for a in word):
        raise ValueError(f"word {format_word(word)} is not over x1..x{rank}")
    basis = basic_commutator_basis(rank, nilpotency_class)
    return NilElement(basis, basis.collect_series(magnus(word, nilpotency_class)))
