"""Exactness of finite sequences of abelian group homomorphisms."""

from collections.abc import Sequence
from dataclasses import dataclass
from math import prod
from typing import NamedTuple

import structlog

from src.abgrp.groups import PresentedAbelian
from src.abgrp.homs import AbelianHom, hom_cokernel, hom_kernel
from src.abgrp.lattice import EchelonLattice

logger = structlog.get_logger()


class SequenceShapeError(ValueError):
    """Consecutive maps do not compose."""

    def __init__(self, position: int, detail: str) -> None:
        super().__init__(f"maps {position} and {position + 1} do not compose: {detail}")
        self.position = position


class SequenceCheck(NamedTuple):
    """Outcome of a sequence assertion with a concrete witness on failure.

    `position` is 1-based: position i sits between map i and map i + 1.
    `witness` is an element in canonical coordinates of the group at that
    position.
    """

    holds: bool
    position: int | None = None
    witness: tuple[int, ...] | None = None
    detail: str = ""


def _same_group(a: PresentedAbelian, b: PresentedAbelian) -> bool:
    return a is b or a == b


@dataclass(frozen=True, eq=False)
class AbelianSequence:
    """A_0 → A_1 → ... → A_k given by composable maps f_1, ..., f_k."""

    maps: tuple[AbelianHom, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.maps:
            raise SequenceShapeError(0, "a sequence needs at least one map")
        for i in range(1, len(self.maps)):
            before, after = self.maps[i - 1], self.maps[i]
            if not _same_group(before.target, after.source):
                raise SequenceShapeError(
                    i,
                    f"target {before.target.canonical} differs from source "
                    f"{after.source.canonical}",
                )
        if self.labels and len(self.labels) != len(self.maps) + 1:
            raise ValueError(f"expected {len(self.maps) + 1} labels, got {len(self.labels)}")

    @classmethod
    def of(cls, *maps: AbelianHom, labels: Sequence[str] = ()) -> "AbelianSequence":
        return cls(tuple(maps), tuple(labels))

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def groups(self) -> tuple[PresentedAbelian, ...]:
        return (self.maps[0].source,) + tuple(f.target for f in self.maps)

    def label(self, position: int) -> str:
        return self.labels[position] if self.labels else f"A{position}"


def _composite_witness(f: AbelianHom, g: AbelianHom) -> tuple[int, ...] | None:
    """Canonical coordinates of a generator of source(f) with g(f(x)) != 0."""
    composite = f.then(g)
    for i in range(f.source.rank):
        if any(composite.canonical_matrix[i]):
            coordinates = [0] * f.source.rank
            coordinates[i] = 1
            return tuple(coordinates)
    return None


def is_complex(s: AbelianSequence) -> SequenceCheck:
    """Every consecutive composite is zero; witnesses live in the source of the first bad pair."""
    for i in range(1, s.length):
        witness = _composite_witness(s.maps[i - 1], s.maps[i])
        if witness is not None:
            return SequenceCheck(False, i, witness, f"composite into {s.label(i + 1)} is nonzero")
    return SequenceCheck(True)


def _image_lattice(f: AbelianHom) -> EchelonLattice:
    target = f.target
    rows = [list(row) for row in f.canonical_matrix]
    for index, order in enumerate(target.orders):
        if order:
            row = [0] * target.rank
            row[index] = order
            rows.append(row)
    return EchelonLattice.from_rows(rows, target.rank)


def exact_at(s: AbelianSequence, i: int) -> SequenceCheck:
    """
    image(f_i) = kernel(f_(i+1)) by double inclusion.

    Raises:
        ValueError: i outside 1..k-1
    """
    if not 1 <= i < s.length:
        raise ValueError(f"exactness position must lie in 1..{s.length - 1}, got {i}")
    f, g = s.maps[i - 1], s.maps[i]
    middle = f.target

    # image ⊆ kernel
    for x in range(f.source.rank):
        image = f.canonical_matrix[x]
        if any(g.apply_canonical(image)):
            return SequenceCheck(False, i, image, "image element outside the kernel")

    # kernel ⊆ image
    lattice = _image_lattice(f)
    kernel = hom_kernel(g)
    for k in range(kernel.group.rank):
        element = kernel.map.canonical_matrix[k]
        if not lattice.contains(element):
            return SequenceCheck(False, i, element, "kernel element outside the image")

    logger.debug("Exact at position", position=i, group=str(middle.canonical))
    return SequenceCheck(True, i)


def exact_everywhere(s: AbelianSequence) -> SequenceCheck:
    for i in range(1, s.length):
        result = exact_at(s, i)
        if not result.holds:
            return result
    return SequenceCheck(True)


def coker_ker_compare(f: AbelianHom, g: AbelianHom) -> bool:
    """cokernel(f) ≅ kernel(g) as abstract groups."""
    return hom_cokernel(f).group.canonical == hom_kernel(g).group.canonical


def order_telescopes(s: AbelianSequence) -> bool:
    """
    Order bookkeeping for a sequence exact at every interior position.

    With K = |ker f_1| and C = |coker f_k| the alternating product of the
    group orders equals K · C^((-1)^k).

    Raises:
        ValueError: Some group in the sequence is infinite
    """
    orders: list[int] = []
    for group in s.groups:
        if not group.canonical.is_finite:
            raise ValueError(f"{group.canonical} is infinite")
        orders.append(int(group.canonical.order()))
    k = s.length
    kernel = int(hom_kernel(s.maps[0]).group.canonical.order())
    cokernel = int(hom_cokernel(s.maps[-1]).group.canonical.order())
    even = prod(orders[0::2])
    odd = prod(orders[1::2]) * kernel
    if k % 2:
        even *= cokernel
    else:
        odd *= cokernel
    return even == odd
