"""Exact integer lattice algorithms: Smith normal form and echelon bases.

Relation matrices are handled row-wise: a matrix with rows r_1..r_m over n
columns presents the abelian group Z^n / span(r_1..r_m). Only the column
transform V (and its inverse) of the Smith decomposition U A V = D is kept,
since that is what maps presentation coordinates to canonical coordinates.
"""

from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import structlog
try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from src.config import get_settings

logger = structlog.get_logger()

SparseRow = dict[int, int]
RowLike = Sequence[int] | Mapping[int, int]


class EntryGrowthError(ArithmeticError):
    """Raised when an intermediate entry exceeds the configured bit length."""

    def __init__(self, bits: int, limit: int) -> None:
        super().__init__(f"intermediate entry grew to {bits} bits (limit {limit})")
        self.bits = bits
        self.limit = limit


def to_sparse(row: RowLike) -> SparseRow:
    """Convert a dense or mapping row to a sparse dict without zero entries."""
    if isinstance(row, Mapping):
        return {int(j): int(v) for j, v in row.items() if v}
    return {j: int(v) for j, v in enumerate(row) if v}


def axpy(target: SparseRow, k: int, source: Mapping[int, int]) -> None:
    """target += k * source, in place."""
    if not k:
        return
    for j, v in source.items():
        new = target.get(j, 0) + k * v
        if new:
            target[j] = new
        else:
            target.pop(j, None)


def sparse_dot(x: Mapping[int, int], y: Mapping[int, int]) -> int:
    if len(x) > len(y):
        x, y = y, x
    return sum(v * y.get(j, 0) for j, v in x.items())


def sparse_row_times(row: Mapping[int, int], matrix: Sequence[Mapping[int, int]]) -> SparseRow:
    """Row vector times a matrix given by its sparse rows."""
    out: SparseRow = {}
    for i, v in row.items():
        axpy(out, v, matrix[i])
    return out


@dataclass(frozen=True)
class SmithForm:
    """Column-side data of a Smith normal form reduction.

    Attributes:
        ncols: Number of presentation generators.
        rank: Rank of the relation matrix.
        torsion: (column, invariant factor) pairs, factors >= 2 in divisibility order.
        free_columns: Columns carrying the free part, ascending.
        columns: Columns of V; presentation vector x has transformed coordinates x V.
        inverse_rows: Rows of V^-1; row c is the preimage of the c-th unit vector.
    """

    ncols: int
    rank: int
    torsion: tuple[tuple[int, int], ...]
    free_columns: tuple[int, ...]
    columns: tuple[Mapping[int, int], ...]
    inverse_rows: tuple[Mapping[int, int], ...]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.torsion)

    @property
    def coordinate_columns(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.torsion) + self.free_columns

    def coordinates(self, x: Mapping[int, int]) -> tuple[int, ...]:
        """Canonical coordinates of a presentation vector (torsion part reduced)."""
        reduced = [sparse_dot(x, self.columns[c]) % d for c, d in self.torsion]
        free = [sparse_dot(x, self.columns[c]) for c in self.free_columns]
        return tuple(reduced + free)

    def generator(self, index: int) -> SparseRow:
        """Presentation vector of the index-th canonical generator."""
        return dict(self.inverse_rows[self.coordinate_columns[index]])


class _SparseReducer:
    """Mutable working state of one Smith reduction."""

    def __init__(self, rows: Iterable[RowLike], ncols: int, limit: int) -> None:
        self.ncols = ncols
        self.limit = limit
        self.work: dict[int, SparseRow] = {}
        self.col_rows: dict[int, set[int]] = defaultdict(set)
        for i, row in enumerate(rows):
            sparse = to_sparse(row)
            for j in sparse:
                if not 0 <= j < ncols:
                    raise IndexError(f"relation {i} uses column {j} outside 0..{ncols - 1}")
            if sparse:
                self.work[i] = sparse
                for j in sparse:
                    self.col_rows[j].add(i)
        self.order = sorted(self.work)
        self.start = 0
        self.columns: list[SparseRow] = [{j: 1} for j in range(ncols)]
        self.inverse: list[SparseRow] = [{j: 1} for j in range(ncols)]

    def _check(self, value: int) -> None:
        bits = abs(value).bit_length()
        if bits > self.limit:
            raise EntryGrowthError(bits, self.limit)

    def _set(self, r: int, j: int, value: int) -> None:
        row = self.work[r]
        if value:
            self._check(value)
            row[j] = value
            self.col_rows[j].add(r)
        else:
            row.pop(j, None)
            self.col_rows[j].discard(r)

    def row_axpy(self, r: int, k: int, p: int) -> None:
        """row r += k * row p."""
        for j, v in list(self.work[p].items()):
            self._set(r, j, self.work[r].get(j, 0) + k * v)
        if not self.work[r]:
            del self.work[r]

    def col_axpy(self, j: int, k: int, q: int) -> None:
        """column j += k * column q, mirrored on V and V^-1."""
        for r in sorted(self.col_rows[q]):
            self._set(r, j, self.work[r].get(j, 0) + k * self.work[r][q])
        axpy(self.columns[j], k, self.columns[q])
        axpy(self.inverse[q], -k, self.inverse[j])

    def pick_pivot(self) -> tuple[int, int] | None:
        while self.start < len(self.order) and self.order[self.start] not in self.work:
            self.start += 1
        best: tuple[int, int, int] | None = None
        for r in self.order[self.start :]:
            row = self.work.get(r)
            if not row:
                continue
            for j in sorted(row):
                candidate = (abs(row[j]), r, j)
                if best is None or candidate < best:
                    best = candidate
            if best is not None and best[0] == 1:
                break
        return None if best is None else (best[1], best[2])

    def eliminate(self, p: int, q: int) -> tuple[int, int]:
        """Clear row p and column q around a pivot; returns (column, |pivot|)."""
        while True:
            a = self.work[p][q]
            dirty = False
            for r in sorted(self.col_rows[q] - {p}):
                self.row_axpy(r, -(self.work[r][q] // a), p)
                if r in self.work and q in self.work[r]:
                    dirty = True
            for j in sorted(set(self.work[p]) - {q}):
                self.col_axpy(j, -(self.work[p][j] // a), q)
                if j in self.work[p]:
                    dirty = True
            if not dirty:
                break
            candidates = [(abs(v), p, j) for j, v in self.work[p].items()]
            candidates += [(abs(self.work[r][q]), r, q) for r in self.col_rows[q]]
            _, p, q = min(candidates)
        if a < 0:
            self.columns[q] = {i: -v for i, v in self.columns[q].items()}
            self.inverse[q] = {i: -v for i, v in self.inverse[q].items()}
        del self.work[p]
        self.col_rows[q].discard(p)
        return q, abs(a)

    def enforce_divisibility(self, diagonal: list[list[int]]) -> None:
        """Turn diagonal entries into a divisibility chain in list order."""
        for i in range(len(diagonal)):
            for j in range(i + 1, len(diagonal)):
                qa, a = diagonal[i]
                qb, b = diagonal[j]
                if b % a == 0:
                    continue
                s, t, g = (int(v) for v in igcdex(a, b))
                va, vb = self.columns[qa], self.columns[qb]
                new_a: SparseRow = {}
                axpy(new_a, s, va)
                axpy(new_a, t, vb)
                new_b: SparseRow = {}
                axpy(new_b, -(b // g), va)
                axpy(new_b, a // g, vb)
                ia, ib = self.inverse[qa], self.inverse[qb]
                inv_a: SparseRow = {}
                axpy(inv_a, a // g, ia)
                axpy(inv_a, b // g, ib)
                inv_b: SparseRow = {}
                axpy(inv_b, -t, ia)
                axpy(inv_b, s, ib)
                self.columns[qa], self.columns[qb] = new_a, new_b
                self.inverse[qa], self.inverse[qb] = inv_a, inv_b
                diagonal[i][1] = g
                diagonal[j][1] = a // g * b


def smith_form(
    rows: Iterable[RowLike],
    ncols: int,
    max_bits: int | None = None,
) -> SmithForm:
    """
    Reduce a relation matrix to Smith normal form, tracking column transforms.

    Pivots are chosen by smallest absolute value, ties to the lowest row and
    then lowest column index. Zero rows are ignored.

    Args:
        rows: Relation rows, dense sequences or sparse {column: value} maps
        ncols: Number of generators (columns)
        max_bits: Bit-length ceiling for intermediates (default from settings)

    Returns:
        SmithForm with invariant factors and the unimodular transform pair

    Raises:
        EntryGrowthError: An intermediate entry exceeded the bit-length ceiling
    """
    limit = max_bits if max_bits is not None else get_settings().max_entry_bits
    reducer = _SparseReducer(rows, ncols, limit)

    diagonal: list[list[int]] = []
    while (pivot := reducer.pick_pivot()) is not None:
        column, value = reducer.eliminate(*pivot)
        diagonal.append([column, value])

    nonunit = [entry for entry in diagonal if entry[1] > 1]
    reducer.enforce_divisibility(nonunit)
    torsion = tuple((q, d) for q, d in nonunit if d > 1)
    pivot_columns = {q for q, _ in diagonal}
    free_columns = tuple(j for j in range(ncols) if j not in pivot_columns)

    logger.debug(
        "Smith form computed",
        columns=ncols,
        rank=len(diagonal),
        invariant_factors=[d for _, d in torsion],
        free_rank=len(free_columns),
    )
    return SmithForm(
        ncols=ncols,
        rank=len(diagonal),
        torsion=torsion,
        free_columns=free_columns,
        columns=tuple(reducer.columns),
        inverse_rows=tuple(reducer.inverse),
    )


@dataclass(frozen=True)
class EchelonLattice:
    """Row-echelon basis of an integer lattice, with optional provenance.

    `combinations[i]` expresses basis row i over the generating rows and
    `kernel` lists integer relations among the generating rows (a basis of
    the left kernel) when the lattice was built with `track=True`.
    """

    ncols: int
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]
    combinations: tuple[tuple[int, ...], ...] = ()
    kernel: tuple[tuple[int, ...], ...] = ()
    generator_count: int = 0

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[Sequence[int]],
        ncols: int,
        track: bool = False,
    ) -> "EchelonLattice":
        gens = [[int(v) for v in row] for row in rows]
        m = len(gens)
        work = [
            row + ([1 if i == k else 0 for k in range(m)] if track else [])
            for i, row in enumerate(gens)
        ]
        pivots: list[int] = []
        start = 0
        for col in range(ncols):
            if start == len(work):
                break
            while True:
                nonzero = [i for i in range(start, len(work)) if work[i][col]]
                if not nonzero:
                    break
                best = min(nonzero, key=lambda i: (abs(work[i][col]), i))
                work[start], work[best] = work[best], work[start]
                a = work[start][col]
                clean = True
                for i in range(start + 1, len(work)):
                    b = work[i][col]
                    if b:
                        k = b // a
                        work[i] = [x - k * y for x, y in zip(work[i], work[start], strict=True)]
                        if work[i][col]:
                            clean = False
                if clean:
                    break
            if work[start][col]:
                if work[start][col] < 0:
                    work[start] = [-x for x in work[start]]
                pivots.append(col)
                start += 1

        basis = tuple(tuple(row[:ncols]) for row in work[:start])
        combinations = tuple(tuple(row[ncols:]) for row in work[:start]) if track else ()
        kernel = tuple(tuple(row[ncols:]) for row in work[start:]) if track else ()
        return cls(ncols, basis, tuple(pivots), combinations, kernel, m)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def solve(self, vector: Sequence[int]) -> tuple[int, ...] | None:
        """Coefficients of vector over the echelon basis, or None if outside the lattice."""
        v = [int(x) for x in vector]
        coefficients = [0] * self.rank
        for index, (col, row) in enumerate(zip(self.pivots, self.basis, strict=True)):
            if v[col] % row[col]:
                return None
            k = v[col] // row[col]
            if k:
                v = [x - k * y for x, y in zip(v, row, strict=True)]
                coefficients[index] = k
        if any(v):
            return None
        return tuple(coefficients)

    def contains(self, vector: Sequence[int]) -> bool:
        return self.solve(vector) is not None

    def solve_generators(self, vector: Sequence[int]) -> tuple[int, ...] | None:
        """Coefficients of vector over the original generating rows."""
        coefficients = self.solve(vector)
        if coefficients is None:
            return None
        if self.rank and not self.combinations:
            raise ValueError("lattice was built without provenance tracking")
        out = [0] * self.generator_count
        for k, combo in zip(coefficients, self.combinations, strict=True):
            if k:
                out = [x + k * y for x, y in zip(out, combo, strict=True)]
        return tuple(out)


def left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """Basis of {x : x A = 0} for the matrix A with the given rows."""
    return EchelonLattice.from_rows(rows, ncols, track=True).kernel
