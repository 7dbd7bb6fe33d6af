"""Homomorphisms between presented abelian groups."""

from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from src.abgrp.groups import PresentedAbelian, from_relation_matrix
from src.abgrp.lattice import (
    EchelonLattice,
    RowLike,
    SparseRow,
    axpy,
    left_kernel,
    sparse_row_times,
    to_sparse,
)


class IllDefinedHomError(ValueError):
    """A source relation does not map into the target relations."""

    def __init__(self, relation: int, image: tuple[int, ...]) -> None:
        super().__init__(
            f"source relation {relation} maps to nonzero element {list(image)} of the target"
        )
        self.relation = relation
        self.image = image


@dataclass(frozen=True, eq=False)
class AbelianHom:
    """Homomorphism given by the images of the source presentation generators.

    `rows[i]` is the image of source generator i written in target
    presentation coordinates.
    """

    source: PresentedAbelian
    target: PresentedAbelian
    rows: tuple[SparseRow, ...]

    @classmethod
    def build(
        cls,
        source: PresentedAbelian,
        target: PresentedAbelian,
        matrix: Sequence[RowLike],
        check: bool = True,
    ) -> "AbelianHom":
        """
        Create a hom and verify it respects the source relations.

        Raises:
            IllDefinedHomError: Some source relation maps to a nonzero element
        """
        if len(matrix) != source.generator_count:
            raise ValueError(
                f"expected {source.generator_count} generator images, got {len(matrix)}"
            )
        rows = tuple(to_sparse(row) for row in matrix)
        for row in rows:
            if any(not 0 <= j < target.generator_count for j in row):
                raise IndexError("generator image uses a column outside the target presentation")
        hom = cls(source, target, rows)
        if check:
            for index, relation in enumerate(source.relations):
                image = target.coordinates(hom.apply(relation))
                if any(image):
                    raise IllDefinedHomError(index, image)
        return hom

    @classmethod
    def identity(cls, group: PresentedAbelian) -> "AbelianHom":
        return cls(group, group, tuple({i: 1} for i in range(group.generator_count)))

    @classmethod
    def zero(cls, source: PresentedAbelian, target: PresentedAbelian) -> "AbelianHom":
        return cls(source, target, tuple({} for _ in range(source.generator_count)))

    def apply(self, vector: RowLike) -> SparseRow:
        """Image of a source presentation vector, in target presentation coordinates."""
        return sparse_row_times(to_sparse(vector), self.rows)

    @cached_property
    def canonical_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Rows: source canonical generators; columns: target canonical coordinates."""
        return tuple(
            self.target.coordinates(self.apply(self.source.generator(i)))
            for i in range(self.source.rank)
        )

    def apply_canonical(self, coordinates: Sequence[int]) -> tuple[int, ...]:
        return self.target.coordinates(self.apply(self.source.from_coordinates(coordinates)))

    def then(self, after: "AbelianHom") -> "AbelianHom":
        """The composite after ∘ self."""
        if after.source.generator_count != self.target.generator_count:
            raise ValueError("maps are not composable")
        return AbelianHom(self.source, after.target, tuple(after.apply(r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(self.target.is_zero(row) for row in self.rows)

    def equals(self, other: "AbelianHom") -> bool:
        """Equality as maps between the same presented groups."""
        if len(self.rows) != len(other.rows):
            return False
        for mine, theirs in zip(self.rows, other.rows, strict=True):
            difference = dict(mine)
            axpy(difference, -1, theirs)
            if not self.target.is_zero(difference):
                return False
        return True

    def is_injective(self) -> bool:
        return hom_kernel(self).group.canonical.is_trivial()

    def is_surjective(self) -> bool:
        return hom_cokernel(self).group.canonical.is_trivial()

    def lift_through(self, inclusion: "AbelianHom") -> "AbelianHom":
        """
        Factor self through an injective map with the same target.

        Returns the unique g with inclusion ∘ g = self.

        Raises:
            ValueError: The image of self is not inside the image of inclusion
        """
        target = self.target
        lattice = EchelonLattice.from_rows(
            list(inclusion.canonical_matrix) + _torsion_rows(target),
            target.rank,
            track=True,
        )
        width = inclusion.source.rank
        rows: list[SparseRow] = []
        for index, row in enumerate(self.rows):
            coefficients = lattice.solve_generators(target.coordinates(row))
            if coefficients is None:
                raise ValueError(f"image of generator {index} does not lift")
            rows.append(inclusion.source.from_coordinates(coefficients[:width]))
        return AbelianHom(self.source, inclusion.source, tuple(rows))


def compose(after: AbelianHom, before: AbelianHom) -> AbelianHom:
    """after ∘ before."""
    return before.then(after)


class Subquotient(NamedTuple):
    """A kernel, image or cokernel with its structure map."""

    group: PresentedAbelian
    map: AbelianHom


def _torsion_rows(group: PresentedAbelian) -> list[list[int]]:
    rows = []
    for index, order in enumerate(group.orders):
        if order:
            row = [0] * group.rank
            row[index] = order
            rows.append(row)
    return rows


def _kernel_lattice(f: AbelianHom) -> EchelonLattice:
    """Lattice of source canonical vectors mapping to zero in the target."""
    na = f.source.rank
    stacked = [list(row) for row in f.canonical_matrix] + _torsion_rows(f.target)
    vectors = [list(v[:na]) for v in left_kernel(stacked, f.target.rank)]
    return EchelonLattice.from_rows(vectors + _torsion_rows(f.source), na)


def hom_kernel(f: AbelianHom) -> Subquotient:
    """Kernel of f with its inclusion into the source."""
    source = f.source
    lattice = _kernel_lattice(f)
    relations = []
    for row in _torsion_rows(source):
        coefficients = lattice.solve(row)
        if coefficients is None:
            raise ArithmeticError("source relation outside the kernel lattice")
        relations.append(list(coefficients))
    kernel = from_relation_matrix(relations, generator_count=lattice.rank)
    inclusion = AbelianHom(
        kernel,
        source,
        tuple(source.from_coordinates(row) for row in lattice.basis),
    )
    return Subquotient(kernel, inclusion)


def hom_image(f: AbelianHom) -> Subquotient:
    """Image of f with its inclusion into the target."""
    source = f.source
    lattice = _kernel_lattice(f)
    image = from_relation_matrix([list(row) for row in lattice.basis], generator_count=source.rank)
    inclusion = AbelianHom(
        image,
        f.target,
        tuple(f.apply(source.generator(i)) for i in range(source.rank)),
    )
    return Subquotient(image, inclusion)


def hom_cokernel(f: AbelianHom) -> Subquotient:
    """Cokernel of f with the projection from the target."""
    target = f.target
    relations = [list(row) for row in f.canonical_matrix] + _torsion_rows(target)
    cokernel = from_relation_matrix(relations, generator_count=target.rank)
    projection = AbelianHom(
        target,
        cokernel,
        tuple(to_sparse(target.coordinates({g: 1})) for g in range(target.generator_count)),
    )
    return Subquotient(cokernel, projection)
