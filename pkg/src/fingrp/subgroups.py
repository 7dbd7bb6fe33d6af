"""Subgroup machinery: closures, commutators, series, quotients and complements."""

from collections import deque
from collections.abc import Iterable
from functools import lru_cache
from itertools import combinations

import numpy as np
import structlog

from src.fingrp.group import FiniteGroup, GroupHom, NotNormalError, PairOfGroups, Subgroup

logger = structlog.get_logger()


def subgroup_generated(g: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """
    Smallest subgroup containing seeds, by breadth-first closure.

    Right multiplication by the seeds is enough: in a finite group every
    inverse is a positive power.
    """
    generators = sorted({int(s) for s in seeds} - {0})
    members = np.zeros(g.order, dtype=bool)
    members[0] = True
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s in generators:
            y = int(g.table[x, s])
            if not members[y]:
                members[y] = True
                queue.append(y)
    return Subgroup(g, tuple(int(x) for x in np.flatnonzero(members)))


def normal_closure(g: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest normal subgroup containing seeds."""
    seeds = [int(s) for s in seeds]
    if not seeds:
        return Subgroup.trivial(g)
    idx = np.array(seeds, dtype=np.int64)
    conjugates = g.table[g.table[g.inverses[:, None], idx[None, :]], np.arange(g.order)[:, None]]
    return subgroup_generated(g, set(conjugates.ravel().tolist()))


def commutator_subgroup(g: FiniteGroup, a: Subgroup, b: Subgroup) -> Subgroup:
    """[a, b]: generated by every x⁻¹y⁻¹xy with x in a, y in b."""
    ai = np.array(a.elements, dtype=np.int64)
    bi = np.array(b.elements, dtype=np.int64)
    left = g.table[g.inverses[ai][:, None], g.inverses[bi][None, :]]
    right = g.table[ai[:, None], bi[None, :]]
    commutators = g.table[left, right]
    return subgroup_generated(g, set(commutators.ravel().tolist()))


def _bracket_series(g: FiniteGroup, start: Subgroup, depth: int) -> list[Subgroup]:
    if depth < 1:
        raise ValueError(f"depth must be positive, got {depth}")
    whole = Subgroup.whole(g)
    terms = [start]
    while len(terms) < depth:
        nxt = commutator_subgroup(g, terms[-1], whole)
        if nxt == terms[-1]:
            terms.extend([nxt] * (depth - len(terms)))
            break
        terms.append(nxt)
    return terms


def lower_central_series(g: FiniteGroup, depth: int) -> list[Subgroup]:
    """
    γ₁ = G, γₖ₊₁ = [γₖ, G].

    Always returns exactly `depth` terms; once the series is stable the
    stable term is repeated.
    """
    return _bracket_series(g, Subgroup.whole(g), depth)


def relative_series(p: PairOfGroups, depth: int) -> list[Subgroup]:
    """γ₁(G,N) = N, γₖ₊₁(G,N) = [γₖ(G,N), G], padded like lower_central_series."""
    return _bracket_series(p.group, p.normal, depth)


def center(g: FiniteGroup) -> Subgroup:
    commuting = np.all(g.table == g.table.T, axis=1)
    return Subgroup(g, tuple(int(x) for x in np.flatnonzero(commuting)))


def intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    return Subgroup(a.parent, tuple(a.members & b.members))


def join(a: Subgroup, b: Subgroup) -> Subgroup:
    return subgroup_generated(a.parent, generating_set(a) + generating_set(b))


@lru_cache(maxsize=4096)
def generating_set(sub: Subgroup) -> tuple[int, ...]:
    """Greedy generating set: scan elements in index order, keep those not yet reached."""
    gens: list[int] = []
    reached = Subgroup.trivial(sub.parent)
    for x in sub.elements:
        if x not in reached:
            gens.append(x)
            reached = subgroup_generated(sub.parent, gens)
            if reached.order == sub.order:
                break
    return tuple(gens)


def quotient(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """
    Coset group G/N with its projection.

    Cosets are numbered by their smallest element, so the coset of the
    identity is element 0.

    Raises:
        NotNormalError: n is not normal in g
    """
    witness = n.normality_witness()
    if witness is not None:
        raise NotNormalError(*witness)
    idx = np.array(n.elements, dtype=np.int64)
    smallest = g.table[:, idx].min(axis=1)
    representatives = np.unique(smallest)
    class_of = np.searchsorted(representatives, smallest)
    table = class_of[g.table[representatives[:, None], representatives[None, :]]]
    labels = tuple(f"{g.label(int(r))}N" for r in representatives)
    q = FiniteGroup(table, labels=labels, name=f"{g.name}/N{n.order}")
    projection = GroupHom(g, q, tuple(int(c) for c in class_of))
    logger.debug("Quotient built", group=g.name, normal_order=n.order, quotient_order=q.order)
    return q, projection


def subgroup_as_group(sub: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """Re-index sub as a group in its own right, with the inclusion into the parent."""
    parent = sub.parent
    idx = np.array(sub.elements, dtype=np.int64)
    position = np.full(parent.order, -1, dtype=np.int64)
    position[idx] = np.arange(len(idx))
    table = position[parent.table[np.ix_(idx, idx)]]
    labels = tuple(parent.label(x) for x in sub.elements)
    group = FiniteGroup(table, labels=labels, name=f"{parent.name}[{sub.order}]")
    return group, GroupHom(group, parent, sub.elements)


def preimage(f: GroupHom, sub: Subgroup) -> Subgroup:
    """{x in source : f(x) in sub}."""
    if sub.parent != f.target:
        raise ValueError("subgroup does not live in the target of the homomorphism")
    return Subgroup(f.source, tuple(x for x in f.source.elements if f(x) in sub))


def _sorted(subgroups: Iterable[Subgroup]) -> tuple[Subgroup, ...]:
    return tuple(sorted(subgroups, key=lambda s: (s.order, s.elements)))


def _join_closure(seeds: list[Subgroup]) -> set[Subgroup]:
    found = set(seeds) | {Subgroup.trivial(seeds[0].parent)}
    frontier = list(found)
    while frontier:
        fresh = []
        for s in frontier:
            for c in seeds:
                if c.is_subgroup_of(s):
                    continue
                j = join(s, c)
                if j not in found:
                    found.add(j)
                    fresh.append(j)
        frontier = fresh
    return found


@lru_cache(maxsize=64)
def subgroup_lattice(g: FiniteGroup) -> tuple[Subgroup, ...]:
    """Every subgroup of g, as joins of cyclic subgroups, ordered by (order, elements)."""
    cyclic = list({subgroup_generated(g, [x]) for x in g.elements})
    lattice = _sorted(_join_closure(cyclic))
    logger.debug("Subgroup lattice built", group=g.name, count=len(lattice))
    return lattice


@lru_cache(maxsize=64)
def normal_subgroups(g: FiniteGroup) -> tuple[Subgroup, ...]:
    """Every normal subgroup of g, as joins of normal closures of single elements."""
    closures = list({normal_closure(g, [x]) for x in g.elements})
    return _sorted(_join_closure(closures))


def is_normal(g: FiniteGroup, sub: Subgroup) -> bool:
    if sub.parent != g:
        raise ValueError("subgroup belongs to a different group")
    return sub.is_normal()


def _is_complement(q: Subgroup, n: Subgroup) -> bool:
    return q.order * n.order == q.parent.order and q.members & n.members == {0}


def find_complement(p: PairOfGroups) -> Subgroup | None:
    """
    A subgroup Q with Q ∩ N = 1 and QN = G, or None.

    Searches subgroups generated by one, two and then three candidate
    elements in index order, then falls back to the full lattice. The first
    hit in that order is returned, so witnesses are reproducible.
    """
    g, n = p.group, p.normal
    if n.is_whole():
        return Subgroup.trivial(g)
    if n.is_trivial():
        return Subgroup.whole(g)
    index = n.index
    candidates = [
        x
        for x in g.elements
        if x not in n
        and index % g.element_order(x) == 0
        and subgroup_generated(g, [x]).members & n.members == {0}
    ]
    for size in (1, 2, 3):
        for seeds in combinations(candidates, size):
            q = subgroup_generated(g, seeds)
            if _is_complement(q, n):
                return q
    for q in subgroup_lattice(g):
        if _is_complement(q, n):
            return q
    logger.debug("No complement found", group=g.name, normal_order=n.order)
    return None
