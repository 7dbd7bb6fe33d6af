"""Abelian sections upper / (lower · [upper, upper]) and the maps between them."""

from collections.abc import Callable, Mapping
from dataclasses import dataclass
from functools import lru_cache

import structlog

from src.abgrp.groups import AbelianGroup, PresentedAbelian, from_relation_matrix
from src.abgrp.homs import AbelianHom
from src.abgrp.lattice import SparseRow
from src.fingrp.group import FiniteGroup, GroupHom, Subgroup
from src.fingrp.subgroups import commutator_subgroup, generating_set

logger = structlog.get_logger()


@dataclass(frozen=True, eq=False)
class AbelianSection:
    """
    Largest abelian quotient of upper in which lower dies.

    The presentation has one generator per element of upper, so any element
    of upper maps to a presentation vector directly through `vector`.
    """

    group: FiniteGroup
    upper: Subgroup
    lower: Subgroup
    presentation: PresentedAbelian
    positions: Mapping[int, int]

    @property
    def canonical(self) -> AbelianGroup:
        return self.presentation.canonical

    def vector(self, element: int) -> SparseRow:
        try:
            return {self.positions[element]: 1}
        except KeyError:
            raise ValueError(f"element {element} is not in the section's upper group") from None

    def coordinates(self, element: int) -> tuple[int, ...]:
        """Canonical coordinates of the class of element."""
        return self.presentation.coordinates(self.vector(element))


def _add(row: SparseRow, j: int, k: int) -> None:
    v = row.get(j, 0) + k
    if v:
        row[j] = v
    else:
        row.pop(j, None)


@lru_cache(maxsize=256)
def abelian_section(g: FiniteGroup, upper: Subgroup, lower: Subgroup) -> AbelianSection:
    """
    Present upper / (lower · [upper, upper]) over the elements of upper.

    Relations are e_a + e_s - e_as for every a in upper and s in a
    generating set of upper, plus e_k for every k in lower. N/[N,G], G^ab and
    (G/N)^ab are all instances.

    Raises:
        ValueError: lower is not inside upper
    """
    if not lower.is_subgroup_of(upper):
        raise ValueError("lower subgroup is not contained in upper subgroup")
    positions = {x: i for i, x in enumerate(upper.elements)}
    relations: list[SparseRow] = []
    for s in generating_set(upper):
        for a in upper.elements:
            row: SparseRow = {}
            _add(row, positions[a], 1)
            _add(row, positions[s], 1)
            _add(row, positions[g.mul(a, s)], -1)
            relations.append(row)
    relations.extend({positions[k]: 1} for k in lower.elements)
    presentation = from_relation_matrix(relations, generator_count=upper.order)
    logger.debug(
        "Abelian section built",
        group=g.name,
        upper=upper.order,
        lower=lower.order,
        invariant=str(presentation.canonical),
    )
    return AbelianSection(g, upper, lower, presentation, positions)


def abelianization(g: FiniteGroup) -> AbelianSection:
    """G^ab with its element-to-class map."""
    whole = Subgroup.whole(g)
    return abelian_section(g, whole, commutator_subgroup(g, whole, whole))


def section_hom(
    source: AbelianSection,
    target: AbelianSection,
    element_map: Callable[[int], int],
) -> AbelianHom:
    """
    Map between sections induced by an element map.

    Raises:
        IllDefinedHomError: element_map does not descend to the sections
        ValueError: element_map leaves target.upper
    """
    rows = [target.vector(element_map(x)) for x in source.upper.elements]
    return AbelianHom.build(source.presentation, target.presentation, rows)


def induced_abelian_hom(f: GroupHom) -> AbelianHom:
    """The map G^ab → H^ab induced by f: G → H."""
    return section_hom(abelianization(f.source), abelianization(f.target), f)
