"""Built-in groups emitted as validated Cayley tables."""

from collections.abc import Sequence

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import AlternatingGroup, DihedralGroup, SymmetricGroup

from src.fingrp.group import FiniteGroup


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"cyclic group order must be positive, got {n}")
    k = np.arange(n)
    return FiniteGroup(np.add.outer(k, k) % n, name=f"Z{n}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup(np.zeros((1, 1), dtype=np.int64), labels=("1",), name="1")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G × H with (a, b) stored at index a·|H| + b."""
    m = h.order
    idx = np.arange(g.order * m)
    gi, hi = idx // m, idx % m
    table = g.table[gi[:, None], gi[None, :]] * m + h.table[hi[:, None], hi[None, :]]
    labels = tuple(f"({g.label(int(a))},{h.label(int(b))})" for a, b in zip(gi, hi, strict=True))
    return FiniteGroup(table, labels=labels, name=f"{g.name}x{h.name}")


def direct_product_all(groups: Sequence[FiniteGroup]) -> FiniteGroup:
    if not groups:
        return trivial_group()
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return out


def _cycle_label(p: Permutation) -> str:
    cycles = p.cyclic_form
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(i) for i in c) + ")" for c in cycles)


def from_permutations(group: PermutationGroup, name: str) -> FiniteGroup:
    """
    Cayley table of a sympy permutation group.

    Elements are sorted by array form, which puts the identity first.
    sympy composes left to right (p*q applies p, then q); the table uses the
    same convention.
    """
    elements = sorted(group.generate(), key=lambda p: p.array_form)
    index = {tuple(p.array_form): i for i, p in enumerate(elements)}
    table = [[index[tuple((p * q).array_form)] for q in elements] for p in elements]
    labels = tuple(_cycle_label(p) for p in elements)
    return FiniteGroup(np.array(table, dtype=np.int64), labels=labels, name=name)


def symmetric(n: int) -> FiniteGroup:
    return from_permutations(SymmetricGroup(n), f"S{n}")


def alternating(n: int) -> FiniteGroup:
    return from_permutations(AlternatingGroup(n), f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, of order 2n."""
    return from_permutations(DihedralGroup(n), f"D{n}")


def quaternion(order: int = 8) -> FiniteGroup:
    """
    Dicyclic group ⟨a, x | a^2m, x² = a^m, x⁻¹ax = a⁻¹⟩ of the given order 4m.

    Order 8 is the quaternion group Q8. The element a^k x^e is stored at
    index k + 2m·e.
    """
    if order < 8 or order % 4:
        raise ValueError(f"dicyclic order must be a multiple of 4 and at least 8, got {order}")
    m = order // 4
    n = 2 * m
    table = np.zeros((order, order), dtype=np.int64)
    for i in range(order):
        k, e = i % n, i // n
        for j in range(order):
            r, f = j % n, j // n
            if e == 0:
                table[i, j] = (k + r) % n + n * f
            elif f == 0:
                table[i, j] = (k - r) % n + n
            else:
                table[i, j] = (k - r + m) % n
    labels = tuple(
        " ".join(([f"a^{i % n}"] if i % n else []) + (["x"] if i >= n else [])) or "1"
        for i in range(order)
    )
    return FiniteGroup(table, labels=labels, name=f"Q{order}")
