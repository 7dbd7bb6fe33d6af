"""Integral homology of finite groups from the normalized bar complex."""

from dataclasses import dataclass
from functools import lru_cache

import structlog

from src.abgrp.groups import AbelianGroup, PresentedAbelian, from_relation_matrix
from src.abgrp.homs import AbelianHom, hom_kernel
from src.abgrp.lattice import SparseRow
from src.config import Settings, get_settings
from src.fingrp.group import FiniteGroup, GroupHom
from src.homology.bar import MAX_TOP_DEGREE, ChainComplexZ, bar_complex, tuple_index
from src.verdicts import NAReason

logger = structlog.get_logger()


class HomologyBoundError(RuntimeError):
    """The group is too large for the oracle in the requested degree."""

    reason = NAReason.HOMOLOGY_BOUND

    def __init__(self, group: str, order: int, degree: int, bound: int) -> None:
        super().__init__(f"H_{degree} of {group} needs |G| <= {bound}, got {order}")
        self.group = group
        self.order = order
        self.degree = degree
        self.bound = bound


@dataclass(frozen=True, eq=False)
class HomologyGroup:
    """
    H_k with its cycle witnesses.

    `cycles` maps the homology presentation into C_k / im d_(k+1), whose
    presentation coordinates are chain coordinates; `cycle(i)` is a chain
    representing the i-th canonical generator.
    """

    degree: int
    group: PresentedAbelian
    cycles: AbelianHom

    @property
    def canonical(self) -> AbelianGroup:
        return self.group.canonical

    def cycle(self, index: int) -> SparseRow:
        return self.cycles.apply(self.group.generator(index))


def homology_at(c: ChainComplexZ, k: int) -> HomologyGroup:
    """
    ker d_k / im d_(k+1), canonicalized.

    Computed as the kernel of d_k viewed as a map out of C_k / im d_(k+1)
    into the free group C_(k-1).
    """
    if not 0 <= k < c.top_degree:
        raise ValueError(f"degree {k} needs a complex through degree {k + 1}")
    chains = from_relation_matrix(c.boundary(k + 1), generator_count=c.dims[k])
    below = from_relation_matrix([], generator_count=c.dims[k - 1] if k else 0)
    d = AbelianHom.build(chains, below, c.boundary(k), check=False)
    kernel = hom_kernel(d)
    return HomologyGroup(k, kernel.group, kernel.map)


def _check_bound(g: FiniteGroup, k: int, settings: Settings) -> None:
    bound = settings.homology_bound(k)
    if g.order > bound:
        logger.warning("Homology bound exceeded", group=g.name, order=g.order, degree=k)
        raise HomologyBoundError(g.name, g.order, k, bound)


@lru_cache(maxsize=128)
def _homology(g: FiniteGroup, k: int) -> HomologyGroup:
    result = homology_at(bar_complex(g, k + 1), k)
    logger.info("Homology computed", group=g.name, degree=k, invariant=str(result.canonical))
    return result


def homology_group(g: FiniteGroup, k: int, settings: Settings | None = None) -> HomologyGroup:
    """
    H_k(G; Z) for k in 0..3, cached per group.

    Raises:
        HomologyBoundError: |G| exceeds the configured bound for degree k
    """
    if not 0 <= k < MAX_TOP_DEGREE:
        raise ValueError(f"homology degree must lie in 0..{MAX_TOP_DEGREE - 1}, got {k}")
    _check_bound(g, k, settings or get_settings())
    return _homology(g, k)


def schur_multiplier(g: FiniteGroup, settings: Settings | None = None) -> AbelianGroup:
    """M(G) = H_2(G; Z)."""
    return homology_group(g, 2, settings).canonical


def third_homology(g: FiniteGroup, settings: Settings | None = None) -> AbelianGroup:
    return homology_group(g, 3, settings).canonical


def _chain_map(f: GroupHom, chain: SparseRow, k: int) -> SparseRow:
    source_base = f.source.order - 1
    target_base = f.target.order - 1
    out: SparseRow = {}
    for index, coefficient in chain.items():
        cells: list[int] = []
        for _ in range(k):
            index, digit = divmod(index, source_base)
            cells.append(f(digit + 1))
        if 0 in cells:
            continue
        j = tuple_index(tuple(reversed(cells)), target_base)
        v = out.get(j, 0) + coefficient
        if v:
            out[j] = v
        else:
            out.pop(j, None)
    return out


def induced_on_homology(f: GroupHom, k: int, settings: Settings | None = None) -> AbelianHom:
    """
    H_k(f): H_k(G) → H_k(H) in the homology presentations of both groups.

    Each cycle witness is pushed through the chain map (tuples acquiring an
    identity coordinate vanish) and solved back against the target cycles.

    Raises:
        HomologyBoundError: either group exceeds the bound for degree k
    """
    source = homology_group(f.source, k, settings)
    target = homology_group(f.target, k, settings)
    rows = [
        _chain_map(f, source.cycles.rows[i], k) for i in range(source.group.generator_count)
    ]
    pushed = AbelianHom(source.group, target.cycles.target, tuple(rows))
    return pushed.lift_through(target.cycles)
