"""Invariant data of a pair of groups, as consumed by the free-product evaluators."""

from dataclasses import dataclass, replace
from enum import StrEnum
from typing import Any

import numpy as np
import structlog

from src.abgrp.groups import AbelianGroup
from src.config import Settings, get_settings
from src.fingrp.group import PairOfGroups, Subgroup
from src.fingrp.sections import abelian_section, abelianization
from src.fingrp.subgroups import commutator_subgroup, quotient
from src.homology.oracle import HomologyBoundError, schur_multiplier, third_homology
from src.pairmult.routes import consistency_audit
from src.verdicts import NAReason

logger = structlog.get_logger()


class DataSource(StrEnum):
    COMPUTED = "computed-from-group"
    SUPPLIED = "supplied"


class MissingInvariantError(LookupError):
    """An evaluator needs a field the data tuple does not carry."""

    reason = NAReason.MISSING_INVARIANT

    def __init__(self, field_name: str, label: str = "") -> None:
        self.field_name = field_name
        self.label = label
        where = f" for {label}" if label else ""
        super().__init__(f"invariant {field_name!r} is missing{where}")


# Field name -> the invariant it holds, in report order
FIELD_MEANINGS = {
    "m1": "M(G,N)",
    "m2": "M2(G,N)",
    "n_mod": "N/[N,G]",
    "q_ab": "(G/N)^ab",
    "m_q": "M(G/N)",
    "g_ab": "G^ab",
    "h3_q": "H3(G/N)",
    "m_g": "M(G)",
}


@dataclass(frozen=True)
class PairInvariantData:
    """
    The abelian invariants of a pair (G, N) that the free-product formulas use.

    Every invariant is optional; evaluators raise MissingInvariantError when a
    field they consume is absent. `m_g` and `g_ab` are the absolute invariants
    M(G) and G^ab needed by the group-level hypotheses.
    """

    m1: AbelianGroup | None = None
    m2: AbelianGroup | None = None
    n_mod: AbelianGroup | None = None
    q_ab: AbelianGroup | None = None
    m_q: AbelianGroup | None = None
    g_ab: AbelianGroup | None = None
    h3_q: AbelianGroup | None = None
    m_g: AbelianGroup | None = None
    source: DataSource = DataSource.SUPPLIED
    label: str = ""

    def require(self, name: str) -> AbelianGroup:
        value = getattr(self, name)
        if value is None:
            raise MissingInvariantError(name, self.label)
        assert isinstance(value, AbelianGroup)
        return value

    @classmethod
    def trivial(cls, label: str = "1") -> "PairInvariantData":
        """Data of the trivial group with the trivial normal subgroup."""
        zero = AbelianGroup.trivial()
        return cls(*([zero] * len(FIELD_MEANINGS)), label=label)  # type: ignore[arg-type]

    @classmethod
    def whole(
        cls,
        multiplier: AbelianGroup,
        abelianized: AbelianGroup,
        m2: AbelianGroup | None = None,
        label: str = "",
    ) -> "PairInvariantData":
        """Data of (G, G) from M(G), G^ab and optionally M2(G)."""
        zero = AbelianGroup.trivial()
        return cls(
            m1=multiplier,
            m2=m2,
            n_mod=abelianized,
            q_ab=zero,
            m_q=zero,
            g_ab=abelianized,
            h3_q=zero,
            m_g=multiplier,
            label=label,
        )

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"label": self.label, "source": str(self.source)}
        for name in FIELD_MEANINGS:
            value = getattr(self, name)
            out[name] = value.to_dict() if value is not None else None
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PairInvariantData":
        values: dict[str, Any] = {
            name: AbelianGroup.from_dict(data[name]) if data.get(name) is not None else None
            for name in FIELD_MEANINGS
        }
        return cls(
            **values,
            source=DataSource(data.get("source", DataSource.SUPPLIED)),
            label=str(data.get("label", "")),
        )

    def relabel(self, label: str) -> "PairInvariantData":
        return replace(self, label=label)


def _bounded(compute: Any, *args: Any) -> AbelianGroup | None:
    try:
        value = compute(*args)
    except HomologyBoundError as exc:
        logger.warning("Invariant left out", detail=str(exc))
        return None
    assert isinstance(value, AbelianGroup)
    return value


def pair_data_from_pair(p: PairOfGroups, settings: Settings | None = None) -> PairInvariantData:
    """
    Compute every invariant of the pair from the group itself.

    M(G, N) and M2(G, N) come from the consistency audit headline, the rest
    from sections and the homology oracle. Fields beyond the oracle bounds
    are left empty.
    """
    settings = settings or get_settings()
    g, n = p.group, p.normal
    q, _ = quotient(g, n)
    headlines = [consistency_audit(p, c, settings=settings).headline for c in (1, 2)]
    m1, m2 = (h.value if h is not None else None for h in headlines)
    data = PairInvariantData(
        m1=m1,
        m2=m2,
        n_mod=abelian_section(g, n, commutator_subgroup(g, n, Subgroup.whole(g))).canonical,
        q_ab=abelianization(q).canonical,
        m_q=_bounded(schur_multiplier, q, settings),
        g_ab=abelianization(g).canonical,
        h3_q=_bounded(third_homology, q, settings),
        m_g=_bounded(schur_multiplier, g, settings),
        source=DataSource.COMPUTED,
        label=p.label,
    )
    logger.debug("Pair data computed", pair=p.label, **{k: str(v) for k, v in vars(data).items()})
    return data


def random_abelian(rng: np.random.Generator, max_summands: int = 3) -> AbelianGroup:
    """A small finite abelian group with up to max_summands cyclic summands of order <= 6."""
    count = int(rng.integers(0, max_summands + 1))
    return AbelianGroup.from_orders(int(d) for d in rng.integers(1, 7, size=count))


def random_pair_data(rng: np.random.Generator, label: str = "") -> PairInvariantData:
    """A supplied data tuple with every field drawn by random_abelian."""
    values = [random_abelian(rng) for _ in FIELD_MEANINGS]
    return PairInvariantData(*values, label=label)  # type: ignore[arg-type]
