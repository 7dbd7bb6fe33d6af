"""Sequence and splitting checks on pairs of groups."""

from typing import Any

import structlog

from src.abgrp.functors import tensor, wedge2, wedge2_map
from src.abgrp.groups import AbelianGroup, direct_sum
from src.abgrp.homs import AbelianHom, hom_kernel
from src.config import Settings
from src.fingrp.group import FiniteGroup, GroupHom, PairOfGroups, Subgroup
from src.fingrp.sections import AbelianSection, abelian_section, abelianization, section_hom
from src.fingrp.subgroups import (
    commutator_subgroup,
    find_complement,
    intersection,
    join,
    preimage,
    quotient,
    relative_series,
    subgroup_as_group,
    subgroup_lattice,
)
from src.homology.oracle import (
    HomologyBoundError,
    homology_group,
    induced_on_homology,
    schur_multiplier,
)
from src.pairmult.routes import consistency_audit, hopf_route, semidirect_kernel
from src.seqcheck.exactness import AbelianSequence, coker_ker_compare, exact_at
from src.verdicts import NAReason, Status, Verdict, combine

logger = structlog.get_logger()


class TailMaps:
    """
    N/[N,G] → G^ab → (G/N)^ab for a pair, with the sections involved.

    alpha is induced by the inclusion of N, beta by the projection to G/N.
    """

    def __init__(self, p: PairOfGroups) -> None:
        g, n = p.group, p.normal
        self.quotient, self.projection = quotient(g, n)
        self.n_mod: AbelianSection = abelian_section(
            g, n, commutator_subgroup(g, n, Subgroup.whole(g))
        )
        self.g_ab = abelianization(g)
        self.q_ab = abelianization(self.quotient)
        self.alpha: AbelianHom = section_hom(self.n_mod, self.g_ab, lambda x: x)
        self.beta: AbelianHom = section_hom(self.g_ab, self.q_ab, self.projection)

    @property
    def lemma_middle(self) -> AbelianGroup:
        """Λ²(N/[N,G]) ⊕ (N/[N,G] ⊗ (G/N)^ab)."""
        a = self.n_mod.canonical
        return direct_sum(wedge2(a), tensor(a, self.q_ab.canonical))


def semidirect_splitting_check(p: PairOfGroups, settings: Settings | None = None) -> Verdict:
    """M(G) ≅ M(G, N) ⊕ M(Q) for a complement Q of N."""
    complement = find_complement(p)
    if complement is None:
        return Verdict.na(NAReason.NO_COMPLEMENT, "N has no complement in G")
    relative = semidirect_kernel(p, 1, settings)
    if relative.value is None:
        return Verdict.na(relative.reason or NAReason.HOMOLOGY_BOUND, "; ".join(relative.notes))
    q_group, _ = subgroup_as_group(complement)
    try:
        whole = schur_multiplier(p.group, settings)
        m_q = schur_multiplier(q_group, settings)
    except HomologyBoundError as exc:
        return Verdict.na(exc.reason, str(exc))
    expected = direct_sum(relative.value, m_q)
    status = Status.PASS if whole == expected else Status.FAIL
    return Verdict(
        status,
        values={
            "M(G)": whole.to_dict(),
            "M(G,N)": relative.value.to_dict(),
            "M(Q)": m_q.to_dict(),
        },
        witnesses={"complement": list(complement.elements)},
    )


def five_term_check(p: PairOfGroups, settings: Settings | None = None) -> Verdict:
    """
    Computable consequences of M(G) → M(G/N) → N/[N,G] → G^ab → (G/N)^ab → 0.

    (a) G^ab → (G/N)^ab is onto, (b) the tail is exact at G^ab and (c) the
    cokernel of M(G) → M(G/N) is isomorphic to the kernel of N/[N,G] → G^ab.
    """
    tail = TailMaps(p)
    statuses: list[Status] = []
    values: dict[str, Any] = {
        "N/[N,G]": tail.n_mod.canonical.to_dict(),
        "G^ab": tail.g_ab.canonical.to_dict(),
        "(G/N)^ab": tail.q_ab.canonical.to_dict(),
    }
    witnesses: dict[str, Any] = {}
    notes: list[str] = []

    onto = tail.beta.is_surjective()
    values["surjective"] = onto
    statuses.append(Status.PASS if onto else Status.FAIL)

    exact = exact_at(AbelianSequence.of(tail.alpha, tail.beta), 1)
    values["exact_at_G^ab"] = exact.holds
    if not exact.holds:
        witnesses["exactness"] = {"element": list(exact.witness or ()), "detail": exact.detail}
    statuses.append(Status.PASS if exact.holds else Status.FAIL)

    reason: NAReason | None = None
    try:
        induced = induced_on_homology(tail.projection, 2, settings)
    except HomologyBoundError as exc:
        statuses.append(Status.NA)
        reason = exc.reason
        notes.append(str(exc))
    else:
        agrees = coker_ker_compare(induced, tail.alpha)
        values["coker_ker"] = agrees
        statuses.append(Status.PASS if agrees else Status.FAIL)

    status = combine(statuses)
    if status is Status.FAIL:
        logger.warning("Five-term check failed", pair=p.label, values=values)
    return Verdict(status, values, witnesses, reason if status is Status.NA else None, tuple(notes))


def lemma38_check(p: PairOfGroups) -> Verdict:
    """
    ker(Λ²G^ab → Λ²(G/N)^ab) against Λ²(N/[N,G]) ⊕ (N/[N,G] ⊗ (G/N)^ab).

    A non-isomorphic pair is a finding (MISMATCH); a wedge map that is not
    onto contradicts functoriality (FAIL).
    """
    tail = TailMaps(p)
    wedge = wedge2_map(tail.beta)
    kernel = hom_kernel(wedge).group.canonical
    middle = tail.lemma_middle
    onto = wedge.is_surjective()
    values = {
        "kernel": kernel.to_dict(),
        "expected": middle.to_dict(),
        "surjective": onto,
    }
    if not onto:
        return Verdict(Status.FAIL, values, notes=("wedge-square map is not onto",))
    if kernel != middle:
        logger.warning(
            "Wedge-square kernel differs", pair=p.label, kernel=str(kernel), expected=str(middle)
        )
        return Verdict(Status.MISMATCH, values, notes=(f"{kernel} is not {middle}",))
    return Verdict(Status.PASS, values)


def _restrict(sub: Subgroup, inclusion: GroupHom) -> Subgroup:
    """sub, which lies in the image of inclusion, as a subgroup of its source."""
    return preimage(inclusion, sub)


def thm39_tail_check(p: PairOfGroups) -> Verdict:
    """
    N/γ₃(G,N) → N/[N,G] is a well-defined surjection.

    Also records the orders of the two middle groups and whether
    |[N,G]/γ₃(G,N)| divides the order of Λ²(N/[N,G]) ⊕ (N/[N,G] ⊗ (G/N)^ab).
    """
    g = p.group
    _, gamma2, gamma3 = relative_series(p, 3)
    n_group, inclusion = subgroup_as_group(p.normal)
    q3, project3 = quotient(n_group, _restrict(gamma3, inclusion))
    q2, project2 = quotient(n_group, _restrict(gamma2, inclusion))
    mapping = [0] * q3.order
    for x in n_group.elements:
        mapping[project3(x)] = project2(x)
    tail = GroupHom(q3, q2, tuple(mapping))
    onto = tail.is_surjective()

    middle_order = int(TailMaps(p).lemma_middle.order())
    layer = gamma2.order // gamma3.order
    values = {
        "N/gamma3": q3.order,
        "N/[N,G]": q2.order,
        "middle": middle_order,
        "layer_divides_middle": middle_order % layer == 0,
        "surjective": onto,
    }
    logger.debug("Tail orders recorded", pair=p.label, group=g.name, **values)
    return Verdict(Status.PASS if onto else Status.FAIL, values)


def mn_check(
    g: FiniteGroup,
    m: Subgroup,
    n: Subgroup,
    c: int = 1,
    settings: Settings | None = None,
) -> Verdict:
    """
    M^(c)(MN, N) against M^(c)(M, M ∩ N), each from its audit headline.

    The hypothesis M ≅ MN is recorded, not imposed.
    """
    mn = join(m, n)
    if not n.is_normal(within=mn):
        return Verdict.na(NAReason.HYPOTHESIS_UNMET, "N is not normal in <M, N>")
    mn_group, mn_inclusion = subgroup_as_group(mn)
    m_group, m_inclusion = subgroup_as_group(m)
    left_pair = PairOfGroups(mn_group, _restrict(n, mn_inclusion), f"{g.name}:MN,N")
    right_pair = PairOfGroups(
        m_group, _restrict(intersection(m, n), m_inclusion), f"{g.name}:M,M^N"
    )
    left = consistency_audit(left_pair, c, settings=settings).headline
    right = consistency_audit(right_pair, c, settings=settings).headline
    values: dict[str, Any] = {
        "hypothesis_as_printed": m.order == mn.order,
        "M(MN,N)": left.value.to_dict() if left and left.value else None,
        "M(M,MnN)": right.value.to_dict() if right and right.value else None,
    }
    if left is None or right is None or left.value is None or right.value is None:
        return Verdict(Status.UNDERDETERMINED, values)
    values["routes"] = [str(left.route), str(right.route)]
    status = Status.PASS if left.value == right.value else Status.MISMATCH
    return Verdict(status, values)


def mn_sweep(
    p: PairOfGroups, c: int = 1, settings: Settings | None = None
) -> Verdict:
    """mn_check for every subgroup M of G with MN = G."""
    g, n = p.group, p.normal
    rows: list[dict[str, Any]] = []
    statuses: list[Status] = []
    for m in subgroup_lattice(g):
        if not join(m, n).is_whole():
            continue
        verdict = mn_check(g, m, n, c, settings)
        statuses.append(verdict.status)
        rows.append({"M": list(m.elements), "status": str(verdict.status), **verdict.values})
    logger.debug("Complements of N swept", pair=p.label, subgroups=len(rows))
    return Verdict(combine(statuses), {"subgroups": rows})


def oracle_cross_check(p: PairOfGroups, settings: Settings | None = None) -> Verdict:
    """
    Identities the homology oracle and the routes are forced to satisfy.

    H0 = Z, H1 = G^ab and exp M(G) dividing |G|; the semidirect route
    reproducing M(G) on (G, G); every route vanishing on (G, 1); and the
    presentation route agreeing with the semidirect route where both apply.
    """
    g, n = p.group, p.normal
    try:
        h0 = homology_group(g, 0, settings).canonical
        h1 = homology_group(g, 1, settings).canonical
        h2 = schur_multiplier(g, settings)
    except HomologyBoundError as exc:
        return Verdict.na(exc.reason, str(exc))

    values: dict[str, Any] = {
        "H0=Z": h0 == AbelianGroup(free_rank=1),
        "H1=G^ab": h1 == abelianization(g).canonical,
        "exponent_divides_order": g.order % h2.exponent() == 0,
    }
    if n.is_whole():
        whole = semidirect_kernel(p, 1, settings)
        values["semidirect=M(G)"] = whole.value is None or whole.value == h2
    if n.is_trivial():
        audits = [consistency_audit(p, c, settings=settings) for c in (1, 2)]
        values["trivial_routes_vanish"] = all(
            r.value.is_trivial() for a in audits for r in a.routes if r.value is not None
        )
    hopf = hopf_route(p, 1)
    if hopf.value is not None:
        semidirect = semidirect_kernel(p, 1, settings)
        if semidirect.value is not None:
            values["hopf=semidirect"] = hopf.value == semidirect.value

    failed = [key for key, holds in values.items() if not holds]
    if failed:
        logger.warning("Oracle cross-check failed", pair=p.label, failed=failed)
        return Verdict(Status.FAIL, values, notes=tuple(failed))
    return Verdict(Status.PASS, values)
