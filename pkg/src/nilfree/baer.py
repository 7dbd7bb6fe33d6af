"""Baer invariants of a pair from a free presentation.

For G = F/R and N = S/R the c-nilpotent invariant is the section
(R ∩ [S, cF]) / [R, cF], with [S, cF] = [S, F, ..., F] (c brackets).
When G is abelian, γ_2(F) ⊆ R, so the numerator is all of [S, cF] and the
denominator contains γ_(c+2)(F). The section then lives in the weight-(c+1)
layer of the free nilpotent group of class c+1 and only depends on the
images of S and R in F^ab.

When G has nilpotency class 2 (c = 1 only) the section is computed in
F/γ_4(F), whose derived subgroup is abelian.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import structlog
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from src.abgrp.groups import AbelianGroup, from_relation_matrix
from src.abgrp.lattice import EchelonLattice, left_kernel
from src.fingrp.constructors import from_permutations
from src.fingrp.group import FiniteGroup
from src.fingrp.subgroups import lower_central_series
from src.nilfree.collection import (
    NilElement,
    NilpotentScopeError,
    basic_commutator_basis,
    collect,
)
from src.nilfree.words import (
    MAX_RANK,
    Word,
    commutator,
    exponent_sums,
    format_word,
    free_reduce,
    left_normed,
    parse_word,
    power,
)

logger = structlog.get_logger()

SUPPORTED_CLASSES = (1, 2)

# Bounds for enumerating F/R when the relators do not make it abelian
COSET_LIMIT = 4096
MAX_PRESENTED_ORDER = 128


@dataclass(frozen=True)
class PresentationWithSubgroup:
    """
    Free presentation G = F/R with a subgroup S ⊇ R presenting N = S/R.

    Relators are always adjoined to the subgroup generators, so R ⊆ S holds
    by construction. An empty word stands for the trivial relator.
    """

    rank: int
    relators: tuple[Word, ...]
    subgroup_words: tuple[Word, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if not 1 <= self.rank <= MAX_RANK:
            raise NilpotentScopeError(f"rank must lie in 1..{MAX_RANK}, got {self.rank}")
        for w in self.relators + self.subgroup_words:
            if any(not 1 <= abs(a) <= self.rank for a in w):
                raise ValueError(f"word {format_word(w)} is not over x1..x{self.rank}")
        relators = tuple(free_reduce(r) for r in self.relators)
        reduced = tuple(free_reduce(w) for w in self.subgroup_words)
        object.__setattr__(self, "relators", relators)
        object.__setattr__(
            self, "subgroup_words", reduced + tuple(r for r in relators if r not in reduced)
        )

    @classmethod
    def parse(
        cls,
        rank: int,
        relators: Sequence[str],
        subgroup: Sequence[str],
        name: str = "",
    ) -> "PresentationWithSubgroup":
        """
        Build from mini-grammar strings.

        Raises:
            WordSyntaxError: A word does not parse
        """
        return cls(
            rank,
            tuple(parse_word(text, rank) for text in relators),
            tuple(parse_word(text, rank) for text in subgroup),
            name,
        )

    def relator_lattice(self) -> EchelonLattice:
        return EchelonLattice.from_rows(
            [exponent_sums(r, self.rank) for r in self.relators], self.rank
        )

    def subgroup_lattice(self) -> EchelonLattice:
        return EchelonLattice.from_rows(
            [exponent_sums(w, self.rank) for w in self.subgroup_words], self.rank
        )


def monomial_word(vector: Sequence[int]) -> Word:
    """x_1^(a_1) x_2^(a_2) ... for a coordinate vector a."""
    return free_reduce(a for i, e in enumerate(vector, start=1) for a in power((i,), e))


def _commuting_pair(word: Word) -> frozenset[int] | None:
    """
    Generators {i, j} when the relator is a cyclic conjugate of [x_i^±1, x_j^±1]^±1.

    A cyclically reduced word of length four using each of x_i, x_i⁻¹, x_j,
    x_j⁻¹ once has exactly that shape.
    """
    if len(word) != 4 or word[0] == -word[-1] or free_reduce(word) != word:
        return None
    indices = {abs(a) for a in word}
    if len(indices) != 2 or sorted(word) != sorted(-a for a in word):
        return None
    return frozenset(indices)


def _abelian_by_relators(p: PresentationWithSubgroup) -> bool:
    """Every pair of generators has a commutator relator, so γ_2(F) ⊆ R."""
    commuting = {pair for r in p.relators if (pair := _commuting_pair(r)) is not None}
    return all(
        frozenset((i, j)) in commuting for i, j in combinations(range(1, p.rank + 1), 2)
    )


@lru_cache(maxsize=64)
def presented_group(p: PresentationWithSubgroup) -> FiniteGroup:
    """
    F/R as a Cayley table, from a coset enumeration over the trivial subgroup.

    Raises:
        NilpotentScopeError: The enumeration exceeds COSET_LIMIT cosets or the
            group is larger than MAX_PRESENTED_ORDER
    """
    free, *gens = free_group(", ".join(f"x{i}" for i in range(1, p.rank + 1)))
    relators = []
    for r in p.relators:
        element = free.identity
        for a in r:
            element = element * gens[abs(a) - 1] ** (1 if a > 0 else -1)
        if element != free.identity:
            relators.append(element)
    try:
        table = FpGroup(free, relators).coset_table([], max_cosets=COSET_LIMIT)
    except ValueError as exc:
        raise NilpotentScopeError(
            f"coset enumeration of F/R exceeds {COSET_LIMIT} cosets"
        ) from exc
    if len(table) > MAX_PRESENTED_ORDER:
        raise NilpotentScopeError(
            f"F/R has order {len(table)}, above {MAX_PRESENTED_ORDER}"
        )
    # column 2i holds the action of x_(i+1) on the cosets
    images = [Permutation([row[2 * i] for row in table]) for i in range(p.rank)]
    g = from_permutations(PermutationGroup(images), p.name or "F/R")
    logger.debug("Presentation enumerated", presentation=p.name, order=g.order)
    return g


def presented_class(p: PresentationWithSubgroup) -> int:
    """
    Nilpotency class of F/R, at least 1.

    Presentations whose relators make the generators commute are class 1
    without enumeration.

    Raises:
        NilpotentScopeError: F/R cannot be enumerated or is not nilpotent of
            class at most 3
    """
    if _abelian_by_relators(p):
        return 1
    g = presented_group(p)
    series = lower_central_series(g, 4)
    for k, term in enumerate(series):
        if term.is_trivial():
            return max(k, 1)
    raise NilpotentScopeError("F/R is not nilpotent of class at most 3")


def scope_violation(p: PresentationWithSubgroup, c: int) -> str | None:
    """Why the presentation is outside the finite computation, or None."""
    if c not in SUPPORTED_CLASSES:
        return f"class {c} outside {SUPPORTED_CLASSES}"
    if c == 2 and p.rank > 2:
        return f"class 2 needs rank <= 2, got {p.rank}"
    if p.relator_lattice().rank < p.rank:
        return "relators do not present a finite group"
    try:
        group_class = presented_class(p)
    except NilpotentScopeError as exc:
        return str(exc)
    if c == 2 and group_class > 1:
        return "class 2 sections need an abelian F/R"
    if group_class > 2:
        return f"F/R has nilpotency class {group_class}; at most 2 supported"
    return None


def _layer_rows(lattice: EchelonLattice, rank: int, c: int) -> list[tuple[int, ...]]:
    """Weight-(c+1) coordinates of [w_l, x_i1, ..., x_ic] for l over the lattice basis."""
    rows: list[tuple[int, ...]] = []
    for l_vector in lattice.basis:
        w = monomial_word(l_vector)
        for indices in product(range(1, rank + 1), repeat=c):
            bracket = left_normed([w, *((i,) for i in indices)])
            rows.append(collect(bracket, rank, c + 1).layer_exponents(c + 1))
    return rows


def _quotient(numerator: EchelonLattice, denominator: Sequence[Sequence[int]]) -> AbelianGroup:
    if numerator.rank == 0:
        return AbelianGroup.trivial()
    relations: list[tuple[int, ...]] = []
    for row in denominator:
        coefficients = numerator.solve(row)
        if coefficients is None:
            raise ArithmeticError("relator section escapes the subgroup section")
        relations.append(coefficients)
    return from_relation_matrix(relations, generator_count=numerator.rank).canonical


def _abelian_section(p: PresentationWithSubgroup, c: int) -> AbelianGroup:
    numerator = _layer_rows(p.subgroup_lattice(), p.rank, c)
    denominator = _layer_rows(p.relator_lattice(), p.rank, c)
    span = EchelonLattice.from_rows(numerator, len(numerator[0]) if numerator else 0)
    return _quotient(span, denominator)


class _DerivedLattice:
    """
    γ_2(F)/γ_4(F) as a lattice over the weight-2 and weight-3 basic commutators.

    Elements of γ_2 commute modulo γ_4, so their collected exponents add.
    """

    def __init__(self, rank: int) -> None:
        self.rank = rank
        self.basis = basic_commutator_basis(rank, 3)
        self.width = len(self.basis) - rank
        self.generators = [collect((i,), rank, 3) for i in range(1, rank + 1)]

    def element(self, word: Word) -> NilElement:
        return collect(word, self.rank, 3)

    def vector(self, e: NilElement) -> tuple[int, ...]:
        if any(e.exponents[: self.rank]):
            raise ArithmeticError(f"{e} does not lie in the derived subgroup")
        return e.exponents[self.rank :]

    def lift(self, vector: Sequence[int]) -> NilElement:
        return NilElement(self.basis, (0,) * self.rank + tuple(vector))

    @staticmethod
    def bracket(a: NilElement, b: NilElement) -> NilElement:
        return a.inverse() * b.inverse() * a * b

    def normal_span(self, vectors: Sequence[Sequence[int]]) -> EchelonLattice:
        """Smallest lattice containing the vectors and closed under [-, x_i]."""
        lattice = EchelonLattice.from_rows(vectors, self.width)
        while True:
            missing: list[tuple[int, ...]] = []
            for v in lattice.basis:
                for x in self.generators:
                    w = self.vector(self.bracket(self.lift(v), x))
                    if not lattice.contains(w):
                        missing.append(w)
            if not missing:
                return lattice
            lattice = EchelonLattice.from_rows([*lattice.basis, *missing], self.width)

    def commutators_with_generators(self, elements: Sequence[NilElement]) -> EchelonLattice:
        """[A, F] where A is the normal closure of the elements."""
        return self.normal_span(
            [self.vector(self.bracket(e, x)) for e in elements for x in self.generators]
        )

    def intersect(self, a: EchelonLattice, b: EchelonLattice) -> EchelonLattice:
        rows = [*a.basis, *(tuple(-x for x in row) for row in b.basis)]
        vectors: list[list[int]] = []
        for relation in left_kernel(rows, self.width):
            vector = [0] * self.width
            for k, row in zip(relation[: a.rank], a.basis, strict=True):
                vector = [x + k * y for x, y in zip(vector, row, strict=True)]
            vectors.append(vector)
        return EchelonLattice.from_rows(vectors, self.width)


def _nilpotent_section(p: PresentationWithSubgroup) -> AbelianGroup:
    """
    (R ∩ [S, F]) / [R, F] for F/R nilpotent of class 2, computed in F/γ_4(F).

    γ_3(F) ⊆ R gives γ_4(F) ⊆ [R, F], so nothing is lost by the truncation.
    R ∩ γ_2(F) is spanned by [R, F] and the products of relator powers whose
    exponent sums vanish.
    """
    derived = _DerivedLattice(p.rank)
    relators = [derived.element(r) for r in p.relators]
    relator_commutators = derived.commutators_with_generators(relators)

    products: list[tuple[int, ...]] = []
    sums = [exponent_sums(r, p.rank) for r in p.relators]
    for relation in left_kernel(sums, p.rank):
        element = NilElement.identity(derived.basis)
        for rho, k in zip(relators, relation, strict=True):
            if k:
                element = element * rho**k
        products.append(derived.vector(element))
    relator_derived = EchelonLattice.from_rows(
        [*products, *relator_commutators.basis], derived.width
    )

    subgroup_commutators = derived.commutators_with_generators(
        [derived.element(s) for s in p.subgroup_words]
    )
    numerator = derived.intersect(relator_derived, subgroup_commutators)
    return _quotient(numerator, relator_commutators.basis)


def baer_section(p: PresentationWithSubgroup, c: int) -> AbelianGroup:
    """
    The c-nilpotent Baer invariant of the presented pair, canonicalized.

    Abelian F/R is handled for c in {1, 2} through the weight-(c+1) layer;
    F/R of nilpotency class 2 is handled at c = 1. S/R is taken to be normal
    in F/R.

    Raises:
        NilpotentScopeError: The presentation is outside the supported scope
    """
    reason = scope_violation(p, c)
    if reason is not None:
        logger.info("Presentation outside nilfree scope", presentation=p.name, c=c, reason=reason)
        raise NilpotentScopeError(reason)

    if presented_class(p) == 1:
        result = _abelian_section(p, c)
    else:
        result = _nilpotent_section(p)
    logger.info("Baer section computed", presentation=p.name, c=c, invariant=str(result))
    return result


def abelian_presentation(
    torsion: Sequence[int],
    subgroup_coordinates: Sequence[Sequence[int]],
    name: str = "",
) -> PresentationWithSubgroup:
    """
    ⟨x_1..x_k | x_i^(d_i), [x_i, x_j]⟩ with S generated by x^a for each coordinate vector a.

    Raises:
        NilpotentScopeError: More than three invariant factors
        ValueError: A coordinate vector has the wrong length
    """
    rank = len(torsion)
    if not 1 <= rank <= MAX_RANK:
        raise NilpotentScopeError(f"{rank} invariant factors; at most {MAX_RANK} supported")
    relators = [power((i,), d) for i, d in enumerate(torsion, start=1)]
    relators += [commutator((i,), (j,)) for i, j in combinations(range(1, rank + 1), 2)]
    words: list[Word] = []
    for vector in subgroup_coordinates:
        if len(vector) != rank:
            raise ValueError(f"coordinate vector {tuple(vector)} needs {rank} entries")
        words.append(monomial_word(vector))
    return PresentationWithSubgroup(rank, tuple(relators), tuple(words), name)
