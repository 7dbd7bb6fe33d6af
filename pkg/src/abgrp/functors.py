"""Tensor product, Tor and exterior square of abelian groups."""

from itertools import combinations

from src.abgrp.groups import AbelianGroup, PresentedAbelian, direct_sum_all, from_relation_matrix
from src.abgrp.homs import AbelianHom, hom_kernel
from src.abgrp.lattice import SparseRow, axpy


def tensor_presentation(a: AbelianGroup, b: AbelianGroup) -> PresentedAbelian:
    """a ⊗ b on generator pairs (i, j) -> i * len(b) + j with Kronecker-lifted relations."""
    ca, cb = a.components(), b.components()
    width = len(cb)
    rows: list[SparseRow] = []
    for i, order in enumerate(ca):
        if order:
            rows.extend({i * width + j: order} for j in range(width))
    for j, order in enumerate(cb):
        if order:
            rows.extend({i * width + j: order} for i in range(len(ca)))
    return from_relation_matrix(rows, generator_count=len(ca) * width)


def tensor(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    return tensor_presentation(a, b).canonical


def tensor_all(*groups: AbelianGroup) -> AbelianGroup:
    """Left-nested tensor product; the empty product is Z."""
    result = AbelianGroup.cyclic(0)
    for group in groups:
        result = tensor(result, group)
    return result


def tor(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    """Tor(a, b) as the sum over cyclic summands Z/d of a of ker(d: b -> b)."""
    standard = PresentedAbelian.standard(b)
    parts = []
    for d in a.torsion:
        multiply = AbelianHom.build(
            standard,
            standard,
            [{j: d} for j in range(standard.generator_count)],
        )
        parts.append(hom_kernel(multiply).group.canonical)
    return direct_sum_all(parts)


def _pair_index(count: int) -> dict[tuple[int, int], int]:
    return {pair: k for k, pair in enumerate(combinations(range(count), 2))}


def wedge2_presentation(a: AbelianGroup) -> PresentedAbelian:
    """
    Exterior square on generators e_i ∧ e_j, i < j, over the cyclic summands of a.

    e_j ∧ e_i is rewritten as -(e_i ∧ e_j); e_i ∧ e_i is omitted. Each summand
    of order d contributes d · (e_i ∧ e_j) for every other summand j.
    """
    orders = a.components()
    index = _pair_index(len(orders))
    rows: list[SparseRow] = []
    for i, order in enumerate(orders):
        if not order:
            continue
        for j in range(len(orders)):
            if j == i:
                continue
            key = (min(i, j), max(i, j))
            rows.append({index[key]: order if i < j else -order})
    return from_relation_matrix(rows, generator_count=len(index))


def wedge2(a: AbelianGroup) -> AbelianGroup:
    return wedge2_presentation(a).canonical


def wedge2_map(f: AbelianHom) -> AbelianHom:
    """Λ²f between the exterior squares of the canonical forms of source and target."""
    source = wedge2_presentation(f.source.canonical)
    target = wedge2_presentation(f.target.canonical)
    matrix = f.canonical_matrix
    source_index = _pair_index(f.source.rank)
    target_index = _pair_index(f.target.rank)
    rows: list[SparseRow] = [{} for _ in range(source.generator_count)]
    for (i, j), row_index in source_index.items():
        image: SparseRow = {}
        for (k, m), column in target_index.items():
            coefficient = matrix[i][k] * matrix[j][m] - matrix[i][m] * matrix[j][k]
            if coefficient:
                axpy(image, coefficient, {column: 1})
        rows[row_index] = image
    return AbelianHom.build(source, target, rows)
