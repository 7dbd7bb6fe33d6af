"""Finitely generated abelian groups in invariant-factor form."""

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from itertools import pairwise
from typing import Any

from src.abgrp.lattice import RowLike, SmithForm, SparseRow, smith_form, to_sparse


@dataclass(frozen=True, order=True)
class AbelianGroup:
    """Canonical form Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k.

    Two values are isomorphic exactly when they compare equal.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError(f"free rank must be nonnegative, got {self.free_rank}")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"invariant factors must be >= 2, got {list(self.torsion)}")
        for a, b in pairwise(self.torsion):
            if b % a:
                raise ValueError(f"invariant factors {a} and {b} break the divisibility chain")

    @classmethod
    def trivial(cls) -> "AbelianGroup":
        return cls()

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        """Z/n, with n = 0 meaning Z."""
        if n < 0:
            raise ValueError(f"cyclic order must be nonnegative, got {n}")
        if n == 0:
            return cls(free_rank=1)
        return cls() if n == 1 else cls(torsion=(n,))

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "AbelianGroup":
        """Canonical form of a direct sum of cyclic groups (order 0 means Z)."""
        orders = [int(n) for n in orders]
        rows = [{i: n} for i, n in enumerate(orders) if n]
        return from_relation_matrix(rows, generator_count=len(orders)).canonical

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "AbelianGroup":
        return cls(free_rank=int(data.get("free_rank", 0)), torsion=tuple(data.get("torsion", ())))

    def order(self) -> int | float:
        """Group order; math.inf when the free rank is positive."""
        return math.prod(self.torsion) if self.free_rank == 0 else math.inf

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def exponent(self) -> int:
        """Exponent of a finite group (0 for infinite groups)."""
        if self.free_rank:
            return 0
        return self.torsion[-1] if self.torsion else 1

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def components(self) -> tuple[int, ...]:
        """Cyclic summand orders, torsion first, 0 for each free summand."""
        return self.torsion + (0,) * self.free_rank

    def to_dict(self) -> dict[str, Any]:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def describe(self) -> str:
        return f"free_rank {self.free_rank}, torsion {list(self.torsion)}"

    def __str__(self) -> str:
        if self.is_trivial():
            return "0"
        parts = [f"Z{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts)


@dataclass(frozen=True)
class PresentedAbelian:
    """Abelian group Z^generator_count / span(relations) with its Smith data.

    `smith` is the basis change: canonical coordinates of a presentation
    vector come from `coordinates`, and `generator(i)` gives back the
    presentation vector of the i-th canonical generator.
    """

    generator_count: int
    relations: tuple[Mapping[int, int], ...]
    smith: SmithForm
    canonical: AbelianGroup

    @classmethod
    def standard(cls, group: AbelianGroup) -> "PresentedAbelian":
        """Presentation on the canonical generators of group itself."""
        orders = group.components()
        rows = [{i: n} for i, n in enumerate(orders) if n]
        return from_relation_matrix(rows, generator_count=len(orders))

    @property
    def rank(self) -> int:
        """Number of canonical coordinates (torsion and free)."""
        return len(self.canonical.torsion) + self.canonical.free_rank

    @property
    def orders(self) -> tuple[int, ...]:
        """Order of each canonical coordinate, 0 for free ones."""
        return self.canonical.components()

    def coordinates(self, vector: RowLike) -> tuple[int, ...]:
        return self.smith.coordinates(to_sparse(vector))

    def generator(self, index: int) -> SparseRow:
        return self.smith.generator(index)

    def from_coordinates(self, coordinates: Sequence[int]) -> SparseRow:
        """Presentation vector of the element with the given canonical coordinates."""
        out: SparseRow = {}
        for index, value in enumerate(coordinates):
            if value:
                for j, v in self.generator(index).items():
                    new = out.get(j, 0) + value * v
                    if new:
                        out[j] = new
                    else:
                        out.pop(j, None)
        return out

    def is_zero(self, vector: RowLike) -> bool:
        return not any(self.coordinates(vector))

    def relation_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(row.get(j, 0) for j in range(self.generator_count)) for row in self.relations
        )


def from_relation_matrix(
    matrix: Iterable[RowLike],
    generator_count: int | None = None,
    max_bits: int | None = None,
) -> PresentedAbelian:
    """
    Present Z^n / rowspace(matrix) and canonicalize it.

    Args:
        matrix: Relation rows (dense or sparse); zero rows are ignored
        generator_count: Number of columns; required when matrix has no dense rows
        max_bits: Bit-length ceiling for Smith intermediates

    Returns:
        PresentedAbelian with canonical form and basis change
    """
    raw = list(matrix)
    if generator_count is None:
        dense = [row for row in raw if not isinstance(row, Mapping)]
        if not dense:
            raise ValueError("generator_count is required for sparse or empty relation matrices")
        generator_count = len(dense[0])
    rows = [to_sparse(row) for row in raw]
    smith = smith_form(rows, generator_count, max_bits=max_bits)
    canonical = AbelianGroup(free_rank=len(smith.free_columns), torsion=smith.invariant_factors)
    return PresentedAbelian(
        generator_count=generator_count,
        relations=tuple(rows),
        smith=smith,
        canonical=canonical,
    )


def direct_sum(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    return AbelianGroup.from_orders(a.components() + b.components())


def direct_sum_all(groups: Iterable[AbelianGroup]) -> AbelianGroup:
    orders: tuple[int, ...] = ()
    for group in groups:
        orders += group.components()
    return AbelianGroup.from_orders(orders)


def is_isomorphic(a: AbelianGroup, b: AbelianGroup) -> bool:
    return a == b
