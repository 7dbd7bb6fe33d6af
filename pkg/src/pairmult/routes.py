"""Independent computation routes for M^(c)(G, N) and their consistency audit."""

from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import structlog

from src.abgrp.functors import tensor_all
from src.abgrp.groups import AbelianGroup
from src.abgrp.homs import hom_cokernel, hom_kernel
from src.config import Interpretation, Settings, get_settings
from src.fingrp.group import PairOfGroups, Subgroup
from src.fingrp.sections import abelian_section, abelianization
from src.fingrp.subgroups import (
    center,
    commutator_subgroup,
    find_complement,
    generating_set,
    lower_central_series,
    quotient,
    relative_series,
)
from src.homology.oracle import HomologyBoundError, induced_on_homology, schur_multiplier
from src.nilfree.baer import abelian_presentation, baer_section
from src.nilfree.collection import NilpotentScopeError
from src.verdicts import NAReason, Status, Verdict

logger = structlog.get_logger()


class Route(StrEnum):
    SEMIDIRECT = "semidirect-kernel"
    CENTRAL = "central-formula"
    HOPF = "hopf-section"
    SPECIALIZATION = "specialization"


# Headline precedence in reports
PRECEDENCE = (Route.HOPF, Route.SEMIDIRECT, Route.CENTRAL, Route.SPECIALIZATION)


@dataclass(frozen=True)
class RouteResult:
    """
    One route's value for M^(c)(G, N), or the reason it does not apply.

    The value is present exactly when the route applies.
    """

    route: Route
    applicable: bool
    value: AbelianGroup | None = None
    reason: NAReason | None = None
    notes: tuple[str, ...] = ()
    witnesses: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.applicable != (self.value is not None):
            raise ValueError("a route value is present exactly when the route applies")

    @classmethod
    def ok(
        cls, route: Route, value: AbelianGroup, *notes: str, **witnesses: Any
    ) -> "RouteResult":
        return cls(route, True, value, notes=notes, witnesses=witnesses)

    @classmethod
    def na(cls, route: Route, reason: NAReason, detail: str) -> "RouteResult":
        return cls(route, False, reason=reason, notes=(detail,))

    def to_dict(self) -> dict[str, Any]:
        return {
            "route": str(self.route),
            "applicable": self.applicable,
            "value": self.value.to_dict() if self.value is not None else None,
            "reason": str(self.reason) if self.reason else None,
            "notes": list(self.notes),
            "witnesses": dict(self.witnesses),
        }


def semidirect_kernel(
    p: PairOfGroups, c: int = 1, settings: Settings | None = None
) -> RouteResult:
    """
    ker(M(G) → M(G/N)) when N has a complement.

    Only c = 1 is computable, through the homology oracle.
    """
    if c != 1:
        detail = f"homology gives M^(c) at c = 1 only, not {c}"
        return RouteResult.na(Route.SEMIDIRECT, NAReason.HYPOTHESIS_UNMET, detail)
    complement = find_complement(p)
    if complement is None:
        return RouteResult.na(Route.SEMIDIRECT, NAReason.NO_COMPLEMENT, "N has no complement in G")
    _, projection = quotient(p.group, p.normal)
    try:
        induced = induced_on_homology(projection, 2, settings)
    except HomologyBoundError as exc:
        return RouteResult.na(Route.SEMIDIRECT, exc.reason, str(exc))
    value = hom_kernel(induced).group.canonical
    return RouteResult.ok(
        Route.SEMIDIRECT,
        value,
        "kernel of M(G) -> M(G/N)",
        complement=list(complement.elements),
    )


def _abelian_normal(p: PairOfGroups) -> AbelianGroup | None:
    g, n = p.group, p.normal
    if commutator_subgroup(g, n, n).is_trivial():
        return abelian_section(g, n, Subgroup.trivial(g)).canonical
    return None


def central_formula(
    p: PairOfGroups,
    c: int = 1,
    interpretation: Interpretation | None = None,
    settings: Settings | None = None,
) -> RouteResult:
    """
    G^ab ⊗ N for central N at c = 1; N ⊗ Q^(⊗c) for c-central N at c >= 2.

    Q is G/γ_c(G) under the literal reading and G^ab under the reduced one.
    Both readings are computed; the value follows the requested one and the
    other is kept as a witness.
    """
    settings = settings or get_settings()
    interpretation = interpretation or settings.interpretation
    g, n = p.group, p.normal
    if c < 1:
        raise ValueError(f"c must be positive, got {c}")

    if c == 1:
        if not n.is_subgroup_of(center(g)):
            return RouteResult.na(Route.CENTRAL, NAReason.NOT_CENTRAL, "N is not central in G")
        n_ab = abelian_section(g, n, Subgroup.trivial(g)).canonical
        value = tensor_all(abelianization(g).canonical, n_ab)
        return RouteResult.ok(Route.CENTRAL, value, "G^ab (x) N", interpretation="c=1")

    if not relative_series(p, c + 1)[c].is_trivial():
        return RouteResult.na(
            Route.CENTRAL, NAReason.NOT_CENTRAL, f"[N, G, ..., G] with {c} brackets is nontrivial"
        )
    n_ab = _abelian_normal(p)
    if n_ab is None:
        return RouteResult.na(Route.CENTRAL, NAReason.NONABELIAN_FACTOR, "N is not abelian")

    whole = Subgroup.whole(g)
    gamma_c = lower_central_series(g, c)[c - 1]
    reduced = tensor_all(n_ab, *([abelianization(g).canonical] * c))
    literal: AbelianGroup | None = None
    if commutator_subgroup(g, whole, whole).is_subgroup_of(gamma_c):
        literal = tensor_all(n_ab, *([abelian_section(g, whole, gamma_c).canonical] * c))

    witnesses = {
        "interpretation": str(interpretation),
        "literal": literal.to_dict() if literal is not None else None,
        "reduced": reduced.to_dict(),
    }
    if interpretation is Interpretation.REDUCED:
        return RouteResult.ok(Route.CENTRAL, reduced, "N (x) (G^ab)^(x c)", **witnesses)
    if literal is None:
        return RouteResult.na(
            Route.CENTRAL, NAReason.NONABELIAN_FACTOR, f"G/gamma_{c}(G) is not abelian"
        )
    return RouteResult.ok(Route.CENTRAL, literal, "N (x) (G/gamma_c(G))^(x c)", **witnesses)


def hopf_route(p: PairOfGroups, c: int = 1) -> RouteResult:
    """
    (R ∩ [S, cF]) / [R, cF] from a generated presentation of G.

    Presentations are generated for abelian G from its invariant factors,
    with S generated by the coordinates of a generating set of N.
    """
    g, n = p.group, p.normal
    if find_complement(p) is None:
        return RouteResult.na(Route.HOPF, NAReason.NO_COMPLEMENT, "N has no complement in G")
    if not g.is_abelian():
        return RouteResult.na(
            Route.HOPF, NAReason.NILFREE_SCOPE, "presentations are generated for abelian G only"
        )
    section = abelianization(g)
    coordinates = [section.coordinates(x) for x in generating_set(n)]
    try:
        presentation = abelian_presentation(section.canonical.torsion, coordinates, p.label)
        value = baer_section(presentation, c)
    except NilpotentScopeError as exc:
        return RouteResult.na(Route.HOPF, exc.reason, str(exc))
    return RouteResult.ok(
        Route.HOPF,
        value,
        "S = preimage of N in the free group",
        rank=presentation.rank,
        subgroup=[list(v) for v in coordinates],
    )


def specialization(
    p: PairOfGroups, c: int = 1, settings: Settings | None = None
) -> RouteResult:
    """M^(c)(G, 1) = 0 for every c, and M(G, G) = M(G) at c = 1."""
    g, n = p.group, p.normal
    if n.is_trivial():
        return RouteResult.ok(Route.SPECIALIZATION, AbelianGroup.trivial(), "N = 1")
    if n.is_whole() and c == 1:
        try:
            value = schur_multiplier(g, settings)
        except HomologyBoundError as exc:
            return RouteResult.na(Route.SPECIALIZATION, exc.reason, str(exc))
        return RouteResult.ok(Route.SPECIALIZATION, value, "N = G")
    return RouteResult.na(
        Route.SPECIALIZATION, NAReason.HYPOTHESIS_UNMET, "N is neither trivial nor G at c = 1"
    )


@dataclass(frozen=True)
class ConsistencyVerdict:
    """
    Every route's value for one pair and their pairwise agreement.

    `agreement[i][j]` is None when either route does not apply. MISMATCH
    holds exactly when two applicable routes disagree.
    """

    pair: str
    c: int
    routes: tuple[RouteResult, ...]
    agreement: tuple[tuple[bool | None, ...], ...]
    status: Status
    interpretation: Interpretation
    constraints: Mapping[str, Any] = field(default_factory=dict)

    @property
    def headline(self) -> RouteResult | None:
        by_route = {r.route: r for r in self.routes if r.applicable}
        return next((by_route[route] for route in PRECEDENCE if route in by_route), None)

    def to_verdict(self) -> Verdict:
        headline = self.headline
        values: dict[str, Any] = {
            "pair": self.pair,
            "c": self.c,
            "interpretation": str(self.interpretation),
            "headline_route": str(headline.route) if headline else None,
            "headline": headline.value.to_dict() if headline and headline.value else None,
        }
        witnesses: dict[str, Any] = {
            "routes": [r.to_dict() for r in self.routes],
            "agreement": [list(row) for row in self.agreement],
        }
        if self.constraints:
            witnesses["constraints"] = dict(self.constraints)
        return Verdict(self.status, values, witnesses)


def _five_term_constraints(p: PairOfGroups, settings: Settings | None) -> dict[str, Any]:
    """Image of M(G, N) in M(G) and coker(M(G) → M(G/N)), both from the oracle."""
    _, projection = quotient(p.group, p.normal)
    try:
        induced = induced_on_homology(projection, 2, settings)
    except HomologyBoundError as exc:
        return {"unavailable": str(exc)}
    return {
        "image_in_M(G)": hom_kernel(induced).group.canonical.to_dict(),
        "coker_M(G)_to_M(G/N)": hom_cokernel(induced).group.canonical.to_dict(),
    }


def consistency_audit(
    p: PairOfGroups,
    c: int = 1,
    interpretation: Interpretation | None = None,
    settings: Settings | None = None,
) -> ConsistencyVerdict:
    """Run every route on the pair and compare the applicable values."""
    settings = settings or get_settings()
    interpretation = interpretation or settings.interpretation
    routes = (
        hopf_route(p, c),
        semidirect_kernel(p, c, settings),
        central_formula(p, c, interpretation, settings),
        specialization(p, c, settings),
    )
    agreement = tuple(
        tuple(
            a.value == b.value if a.applicable and b.applicable else None for b in routes
        )
        for a in routes
    )
    applicable = [r for r in routes if r.applicable]
    constraints: dict[str, Any] = {}
    if not applicable:
        status = Status.UNDERDETERMINED
        if c == 1:
            constraints = _five_term_constraints(p, settings)
    elif any(cell is False for row in agreement for cell in row):
        status = Status.MISMATCH
        logger.warning(
            "Routes disagree",
            pair=p.label,
            c=c,
            values={str(r.route): str(r.value) for r in applicable},
        )
    else:
        status = Status.PASS
    return ConsistencyVerdict(p.label, c, routes, agreement, status, interpretation, constraints)
