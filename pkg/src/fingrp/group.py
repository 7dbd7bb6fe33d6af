"""Finite groups as validated Cayley tables."""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import structlog
from numpy.typing import NDArray

logger = structlog.get_logger()


class GroupAxiomError(ValueError):
    """A Cayley table violates a group axiom."""

    def __init__(self, axiom: str, witness: tuple[int, ...], detail: str = "") -> None:
        message = f"{axiom} fails at {list(witness)}"
        if detail:
            message += f": {detail}"
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class NotNormalError(ValueError):
    """A subgroup is not invariant under conjugation; g⁻¹ n g leaves it."""

    def __init__(self, g: int, n: int) -> None:
        super().__init__(f"conjugating {n} by {g} leaves the subgroup")
        self.witness = (g, n)


class NotHomomorphismError(ValueError):
    """A mapping table fails f(xy) = f(x)f(y) at the witness pair."""

    def __init__(self, x: int, y: int) -> None:
        super().__init__(f"mapping does not respect the product of {x} and {y}")
        self.witness = (x, y)


def _validate_table(table: NDArray[np.int64]) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise GroupAxiomError("shape", tuple(table.shape), "table must be a nonempty square")
    n = table.shape[0]
    bad = np.argwhere((table < 0) | (table >= n))
    if len(bad):
        i, j = bad[0]
        raise GroupAxiomError(
            "closure", (int(i), int(j)), f"entry {int(table[i, j])} out of range"
        )
    expected = np.arange(n)
    if not np.array_equal(table[0], expected):
        j = int(np.argmax(table[0] != expected))
        raise GroupAxiomError("identity", (0, j), "element 0 is not a left identity")
    if not np.array_equal(table[:, 0], expected):
        i = int(np.argmax(table[:, 0] != expected))
        raise GroupAxiomError("identity", (i, 0), "element 0 is not a right identity")
    rows_ok = np.all(np.sort(table, axis=1) == expected, axis=1)
    if not rows_ok.all():
        i = int(np.argmin(rows_ok))
        raise GroupAxiomError("latin-square", (i,), "row repeats an element")
    cols_ok = np.all(np.sort(table, axis=0) == expected[:, None], axis=0)
    if not cols_ok.all():
        j = int(np.argmin(cols_ok))
        raise GroupAxiomError("latin-square", (j,), "column repeats an element")
    # left[a, b, c] = (ab)c and right[a, b, c] = a(bc)
    left = table[table]
    right = table[:, table]
    broken = np.argwhere(left != right)
    if len(broken):
        a, b, c = (int(v) for v in broken[0])
        raise GroupAxiomError("associativity", (a, b, c))


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """
    Group on the elements 0..n-1 with table[i, j] the index of i·j.

    Element 0 is the identity. All axioms are checked on construction, so an
    accepted value is always a group. Equality and hashing go through the
    table bytes.
    """

    table: NDArray[np.int64]
    labels: tuple[str, ...] = ()
    name: str = ""
    inverses: NDArray[np.int64] = field(init=False, repr=False)
    _key: bytes = field(init=False, repr=False)

    def __post_init__(self) -> None:
        table = np.array(self.table, dtype=np.int64)
        _validate_table(table)
        table.setflags(write=False)
        n = table.shape[0]
        inverses = np.argmax(table == 0, axis=1).astype(np.int64)
        inverses.setflags(write=False)
        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(n))
        if len(labels) != n:
            raise ValueError(f"expected {n} labels, got {len(labels)}")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "inverses", inverses)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_key", n.to_bytes(4, "little") + table.tobytes())

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def product(self, items: Iterable[int]) -> int:
        out = 0
        for x in items:
            out = int(self.table[out, x])
        return out

    def conj(self, x: int, g: int) -> int:
        """g⁻¹ x g."""
        return int(self.table[self.table[self.inverses[g], x], g])

    def commutator(self, x: int, y: int) -> int:
        """[x, y] = x⁻¹ y⁻¹ x y."""
        return self.product((self.inv(x), self.inv(y), x, y))

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        out = 0
        for _ in range(k):
            out = int(self.table[out, x])
        return out

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = int(self.table[y, x])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def label(self, x: int) -> str:
        return self.labels[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"FiniteGroup(name={self.name!r}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its sorted element indices inside parent."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elements = tuple(sorted({int(x) for x in self.elements}))
        object.__setattr__(self, "elements", elements)
        if not elements or elements[0] != 0:
            raise GroupAxiomError("subgroup-identity", elements[:1], "identity missing")
        if elements[-1] >= self.parent.order:
            raise GroupAxiomError("subgroup-range", (elements[-1],))
        members = np.zeros(self.parent.order, dtype=bool)
        members[list(elements)] = True
        idx = np.array(elements)
        products = self.parent.table[np.ix_(idx, idx)]
        outside = np.argwhere(~members[products])
        if len(outside):
            i, j = outside[0]
            raise GroupAxiomError("subgroup-closure", (elements[i], elements[j]))

    @classmethod
    def whole(cls, g: FiniteGroup) -> "Subgroup":
        return cls(g, tuple(g.elements))

    @classmethod
    def trivial(cls, g: FiniteGroup) -> "Subgroup":
        return cls(g, (0,))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, x: object) -> bool:
        return x in self.members

    @cached_property
    def members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def normality_witness(self, within: "Subgroup | None" = None) -> tuple[int, int] | None:
        """First (g, n) with g⁻¹ n g outside self, g ranging over within (default: parent)."""
        g = self.parent
        conjugators = within.elements if within is not None else tuple(g.elements)
        members = np.zeros(g.order, dtype=bool)
        members[list(self.elements)] = True
        idx = np.array(self.elements)
        for x in conjugators:
            images = g.table[g.table[g.inverses[x], idx], x]
            if not members[images].all():
                return int(x), int(idx[int(np.argmin(members[images]))])
        return None

    def is_normal(self, within: "Subgroup | None" = None) -> bool:
        return self.normality_witness(within) is None

    def __repr__(self) -> str:
        return f"Subgroup(parent={self.parent.name!r}, order={self.order})"


@dataclass(frozen=True, eq=False)
class GroupHom:
    """A homomorphism given by its mapping table: mapping[x] is the image of x."""

    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        mapping = tuple(int(v) for v in self.mapping)
        object.__setattr__(self, "mapping", mapping)
        if len(mapping) != self.source.order:
            raise ValueError(
                f"mapping has {len(mapping)} entries for a group of order {self.source.order}"
            )
        if any(not 0 <= v < self.target.order for v in mapping):
            raise ValueError("mapping leaves the target group")
        m = np.array(mapping, dtype=np.int64)
        lhs = m[self.source.table]
        rhs = self.target.table[m[:, None], m[None, :]]
        broken = np.argwhere(lhs != rhs)
        if len(broken):
            x, y = broken[0]
            raise NotHomomorphismError(int(x), int(y))

    @classmethod
    def identity(cls, g: FiniteGroup) -> "GroupHom":
        return cls(g, g, tuple(g.elements))

    @classmethod
    def trivial(cls, source: FiniteGroup, target: FiniteGroup) -> "GroupHom":
        return cls(source, target, (0,) * source.order)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def then(self, after: "GroupHom") -> "GroupHom":
        """after ∘ self."""
        if after.source != self.target:
            raise ValueError("homomorphisms are not composable")
        return GroupHom(self.source, after.target, tuple(after.mapping[v] for v in self.mapping))

    def image(self) -> Subgroup:
        return Subgroup(self.target, tuple(set(self.mapping)))

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, tuple(x for x, v in enumerate(self.mapping) if v == 0))

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.order


@dataclass(frozen=True)
class PairOfGroups:
    """A group with a distinguished normal subgroup."""

    group: FiniteGroup
    normal: Subgroup
    name: str = ""

    def __post_init__(self) -> None:
        if self.normal.parent != self.group:
            raise ValueError("normal subgroup belongs to a different group")
        witness = self.normal.normality_witness()
        if witness is not None:
            raise NotNormalError(*witness)

    @classmethod
    def from_elements(
        cls, group: FiniteGroup, elements: Sequence[int], name: str = ""
    ) -> "PairOfGroups":
        return cls(group, Subgroup(group, tuple(elements)), name)

    @property
    def label(self) -> str:
        return self.name or f"({self.group.name}, order {self.normal.order})"
