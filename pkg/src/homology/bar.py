"""Normalized bar complex of a finite group with trivial integer coefficients."""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import structlog

from src.abgrp.lattice import SparseRow, sparse_row_times
from src.fingrp.group import FiniteGroup

logger = structlog.get_logger()

MAX_TOP_DEGREE = 4


@dataclass(frozen=True, eq=False)
class ChainComplexZ:
    """
    Free chain complex C_0 <- C_1 <- ... <- C_top over the integers.

    `boundaries[k]` lists, for each basis element of C_k, its boundary as a
    sparse vector over the basis of C_(k-1). `boundaries[0]` is the zero map
    out of C_0. d∘d = 0 is checked on construction.
    """

    dims: tuple[int, ...]
    boundaries: tuple[tuple[SparseRow, ...], ...]

    def __post_init__(self) -> None:
        if len(self.dims) != len(self.boundaries):
            raise ValueError("one boundary map per degree is required")
        for k, rows in enumerate(self.boundaries):
            if len(rows) != self.dims[k]:
                raise ValueError(f"d_{k} has {len(rows)} rows for a basis of {self.dims[k]}")
        for k in range(2, len(self.dims)):
            lower = self.boundaries[k - 1]
            for index, row in enumerate(self.boundaries[k]):
                if sparse_row_times(row, lower):
                    raise ValueError(f"d_{k - 1} d_{k} is nonzero on basis element {index}")

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def boundary(self, k: int) -> tuple[SparseRow, ...]:
        return self.boundaries[k]


def tuple_index(cells: tuple[int, ...], base: int) -> int:
    """Position of a tuple of non-identity elements: sum of (g_i - 1) base^(n - i)."""
    index = 0
    for x in cells:
        index = index * base + (x - 1)
    return index


def _accumulate(row: SparseRow, cells: tuple[int, ...], sign: int, base: int) -> None:
    if 0 in cells:
        return
    j = tuple_index(cells, base)
    v = row.get(j, 0) + sign
    if v:
        row[j] = v
    else:
        row.pop(j, None)


def bar_boundary(g: FiniteGroup, cells: tuple[int, ...]) -> SparseRow:
    """
    d[g1|...|gn] = [g2|...|gn] + sum (-1)^i [..|g_i g_(i+1)|..] + (-1)^n [g1|...|g_(n-1)].

    Terms containing the identity are degenerate and vanish.
    """
    base = g.order - 1
    n = len(cells)
    row: SparseRow = {}
    if n <= 1:
        return row
    _accumulate(row, cells[1:], 1, base)
    for i in range(n - 1):
        merged = cells[:i] + (g.mul(cells[i], cells[i + 1]),) + cells[i + 2 :]
        _accumulate(row, merged, (-1) ** (i + 1), base)
    _accumulate(row, cells[:-1], (-1) ** n, base)
    return row


@lru_cache(maxsize=32)
def bar_complex(g: FiniteGroup, top_degree: int) -> ChainComplexZ:
    """
    Normalized bar complex up to top_degree.

    The degree-n basis is every n-tuple of non-identity elements, ordered
    lexicographically by element index, so C_n has rank (|G| - 1)^n.

    Raises:
        ValueError: top_degree outside 0..4
    """
    if not 0 <= top_degree <= MAX_TOP_DEGREE:
        raise ValueError(f"top degree must lie in 0..{MAX_TOP_DEGREE}, got {top_degree}")
    base = g.order - 1
    dims = tuple(base**k for k in range(top_degree + 1))
    boundaries: list[tuple[SparseRow, ...]] = [({},)]
    for k in range(1, top_degree + 1):
        cells = product(range(1, g.order), repeat=k)
        boundaries.append(tuple(bar_boundary(g, c) for c in cells))
        logger.debug("Bar boundary assembled", group=g.name, degree=k, rows=dims[k])
    complex_ = ChainComplexZ(dims, tuple(boundaries))
    logger.info("Bar complex built", group=g.name, order=g.order, dims=list(dims))
    return complex_
