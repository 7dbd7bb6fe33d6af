"""Corpus documents: named groups, pairs and presentations, validated on load."""

import json
import math
import string
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.config import Settings, get_settings
from src.fingrp.constructors import (
    alternating,
    cyclic,
    dihedral,
    direct_product_all,
    quaternion,
    symmetric,
)
from src.fingrp.group import FiniteGroup, GroupAxiomError, NotNormalError, PairOfGroups, Subgroup
from src.fingrp.subgroups import commutator_subgroup, normal_subgroups, subgroup_generated
from src.nilfree.baer import PresentationWithSubgroup
from src.nilfree.collection import NilpotentScopeError
from src.nilfree.words import WordSyntaxError

logger = structlog.get_logger()


class CorpusError(ValueError):
    """A corpus document does not parse or names an invalid object."""

    def __init__(
        self,
        message: str,
        *,
        name: str | None = None,
        axiom: str | None = None,
        witness: tuple[int, ...] | None = None,
        line: int | None = None,
        column: int | None = None,
    ) -> None:
        where = f"{name}: " if name else ""
        if line is not None:
            where = f"line {line}, column {column}: " + where
        super().__init__(where + message)
        self.name = name
        self.axiom = axiom
        self.witness = witness
        self.line = line
        self.column = column


class ConstructSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    cyclic: int | None = Field(default=None, ge=1)
    dihedral: int | None = Field(default=None, ge=2)
    symmetric: int | None = Field(default=None, ge=1)
    alternating: int | None = Field(default=None, ge=2)
    quaternion: int | None = Field(default=None, ge=8)
    product: list[str] | None = None

    @model_validator(mode="after")
    def _one_constructor(self) -> "ConstructSpec":
        chosen = [k for k, v in self.model_dump().items() if v is not None]
        if len(chosen) != 1:
            raise ValueError(f"exactly one constructor expected, got {chosen or 'none'}")
        return self

    @property
    def kind(self) -> str:
        return next(k for k, v in self.model_dump().items() if v is not None)


class GroupEntry(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    name: str = Field(min_length=1)
    table: list[list[int]] | None = None
    constructor: ConstructSpec | None = Field(default=None, alias="construct")

    @model_validator(mode="after")
    def _table_or_construct(self) -> "GroupEntry":
        if (self.table is None) == (self.constructor is None):
            raise ValueError("a group needs exactly one of 'table' and 'construct'")
        return self


class GeneratedBy(BaseModel):
    model_config = ConfigDict(extra="forbid")

    generated_by: list[int]


class PairEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    group: str
    normal: list[int] | GeneratedBy


class PresentationEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    rank: int
    relators: list[str] = []
    subgroup: list[str] = []


class CorpusDocument(BaseModel):
    """The JSON corpus format."""

    model_config = ConfigDict(extra="forbid")

    groups: list[GroupEntry] = []
    pairs: list[PairEntry] = []
    presentations: list[PresentationEntry] = []
    enumerate_pairs: bool = True


@dataclass
class Corpus:
    """Validated groups, pairs and presentations, each in document order."""

    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    pairs: dict[str, PairOfGroups] = field(default_factory=dict)
    presentations: dict[str, PresentationWithSubgroup] = field(default_factory=dict)

    def pair(self, reference: str) -> PairOfGroups:
        """A pair by id, or (G, G) for a group name."""
        if reference in self.pairs:
            return self.pairs[reference]
        if reference in self.groups:
            g = self.groups[reference]
            return PairOfGroups(g, Subgroup.whole(g), f"{reference}:whole")
        raise CorpusError("no such pair or group", name=reference, axiom="reference")

    def group(self, reference: str) -> FiniteGroup:
        """A group by name, or the group of a pair."""
        if reference in self.groups:
            return self.groups[reference]
        if reference in self.pairs:
            return self.pairs[reference].group
        raise CorpusError("no such group or pair", name=reference, axiom="reference")


def _predicted_order(spec: ConstructSpec, groups: dict[str, FiniteGroup]) -> int:
    match spec.kind:
        case "cyclic":
            return spec.cyclic or 1
        case "dihedral":
            return 2 * (spec.dihedral or 0)
        case "symmetric":
            return math.factorial(spec.symmetric or 0)
        case "alternating":
            return max(math.factorial(spec.alternating or 0) // 2, 1)
        case "quaternion":
            return spec.quaternion or 0
        case _:
            return math.prod(groups[name].order for name in spec.product or ())


def _construct(spec: ConstructSpec, groups: dict[str, FiniteGroup]) -> FiniteGroup:
    match spec.kind:
        case "cyclic":
            return cyclic(spec.cyclic or 1)
        case "dihedral":
            return dihedral(spec.dihedral or 2)
        case "symmetric":
            return symmetric(spec.symmetric or 1)
        case "alternating":
            return alternating(spec.alternating or 2)
        case "quaternion":
            return quaternion(spec.quaternion or 8)
        case _:
            return direct_product_all([groups[name] for name in spec.product or ()])


def _build_group(
    entry: GroupEntry, groups: dict[str, FiniteGroup], settings: Settings
) -> FiniteGroup:
    spec = entry.constructor
    if spec is not None:
        missing = [name for name in spec.product or () if name not in groups]
        if missing:
            raise CorpusError(
                f"product factor {missing[0]!r} is not defined earlier",
                name=entry.name,
                axiom="reference",
            )
    order = _predicted_order(spec, groups) if spec is not None else len(entry.table or ())
    if order > settings.max_group_order:
        raise CorpusError(
            f"order {order} exceeds max_group_order {settings.max_group_order}",
            name=entry.name,
            axiom="order-bound",
        )
    try:
        if spec is not None:
            return replace(_construct(spec, groups), name=entry.name)
        try:
            table = np.array(entry.table, dtype=np.int64)
        except ValueError:
            raise GroupAxiomError("shape", (order,), "rows have different lengths") from None
        return FiniteGroup(table, name=entry.name)
    except GroupAxiomError as exc:
        raise CorpusError(str(exc), name=entry.name, axiom=exc.axiom, witness=exc.witness) from exc
    except ValueError as exc:
        raise CorpusError(str(exc), name=entry.name, axiom="construct") from exc


def _build_pair(entry: PairEntry, groups: dict[str, FiniteGroup]) -> PairOfGroups:
    if entry.group not in groups:
        raise CorpusError(
            f"group {entry.group!r} is not defined", name=entry.name, axiom="reference"
        )
    g = groups[entry.group]
    indices = entry.normal if isinstance(entry.normal, list) else entry.normal.generated_by
    outside = [x for x in indices if not 0 <= x < g.order]
    if outside:
        raise CorpusError(
            f"element {outside[0]} outside 0..{g.order - 1}",
            name=entry.name,
            axiom="subgroup-range",
            witness=(outside[0],),
        )
    try:
        if isinstance(entry.normal, list):
            sub = Subgroup(g, tuple(entry.normal))
        else:
            sub = subgroup_generated(g, entry.normal.generated_by)
        return PairOfGroups(g, sub, entry.name)
    except GroupAxiomError as exc:
        raise CorpusError(str(exc), name=entry.name, axiom=exc.axiom, witness=exc.witness) from exc
    except NotNormalError as exc:
        raise CorpusError(
            str(exc), name=entry.name, axiom="normality", witness=exc.witness
        ) from exc


def _build_presentation(entry: PresentationEntry) -> PresentationWithSubgroup:
    try:
        return PresentationWithSubgroup.parse(
            entry.rank, entry.relators, entry.subgroup, entry.name
        )
    except WordSyntaxError as exc:
        raise CorpusError(
            str(exc), name=entry.name, axiom="word-syntax", witness=(exc.column,)
        ) from exc
    except (NilpotentScopeError, ValueError) as exc:
        raise CorpusError(str(exc), name=entry.name, axiom="presentation") from exc


def _enumerated_pairs(g: FiniteGroup, settings: Settings) -> list[PairOfGroups]:
    """
    Pairs "<group>:<order><letter>" for the normal subgroups of a small group.

    Beyond pair_enumeration_max_order only (G, G') and (G, G) are generated.
    """
    if g.order <= settings.pair_enumeration_max_order:
        subgroups = list(normal_subgroups(g))
    else:
        whole = Subgroup.whole(g)
        derived = commutator_subgroup(g, whole, whole)
        subgroups = [derived] if derived != whole else []
        subgroups.append(whole)
    counts: dict[int, int] = {}
    pairs: list[PairOfGroups] = []
    for n in subgroups:
        k = counts.get(n.order, 0)
        counts[n.order] = k + 1
        pairs.append(PairOfGroups(g, n, f"{g.name}:{n.order}{string.ascii_lowercase[k % 26]}"))
    return pairs


def build_corpus(document: CorpusDocument, settings: Settings | None = None) -> Corpus:
    """
    Validate a parsed document into a Corpus.

    Raises:
        CorpusError: An entry names an undefined object, breaks a group axiom,
            gives a non-normal subgroup or a malformed presentation
    """
    settings = settings or get_settings()
    corpus = Corpus()
    for group_entry in document.groups:
        if group_entry.name in corpus.groups:
            raise CorpusError("duplicate group name", name=group_entry.name, axiom="unique-name")
        corpus.groups[group_entry.name] = _build_group(group_entry, corpus.groups, settings)
    for pair_entry in document.pairs:
        if pair_entry.name in corpus.pairs:
            raise CorpusError("duplicate pair name", name=pair_entry.name, axiom="unique-name")
        corpus.pairs[pair_entry.name] = _build_pair(pair_entry, corpus.groups)
    if document.enumerate_pairs:
        seen = {(p.group, p.normal.elements) for p in corpus.pairs.values()}
        for g in corpus.groups.values():
            for p in _enumerated_pairs(g, settings):
                if (p.group, p.normal.elements) not in seen and p.name not in corpus.pairs:
                    corpus.pairs[p.name] = p
    for presentation_entry in document.presentations:
        if presentation_entry.name in corpus.presentations:
            raise CorpusError(
                "duplicate presentation name", name=presentation_entry.name, axiom="unique-name"
            )
        corpus.presentations[presentation_entry.name] = _build_presentation(presentation_entry)
    logger.info(
        "Corpus loaded",
        groups=len(corpus.groups),
        pairs=len(corpus.pairs),
        presentations=len(corpus.presentations),
    )
    return corpus


def parse_document(text: str) -> CorpusDocument:
    """
    Parse corpus JSON.

    Raises:
        CorpusError: Invalid JSON (with line and column) or a schema violation
    """
    try:
        payload: Any = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    try:
        return CorpusDocument.model_validate(payload)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise CorpusError(f"{location}: {first['msg']}", axiom="schema") from exc


def load_corpus(path: str | Path, settings: Settings | None = None) -> Corpus:
    """
    Read, parse and validate a corpus file.

    Raises:
        OSError: The file cannot be read
        CorpusError: See parse_document and build_corpus
    """
    text = Path(path).read_text(encoding="utf-8")
    logger.info("Reading corpus", path=str(path))
    return build_corpus(parse_document(text), settings)


def _cyclic_entry(n: int) -> GroupEntry:
    return GroupEntry(name=f"Z{n}", construct=ConstructSpec(cyclic=n))


DEFAULT_DOCUMENT = CorpusDocument(
    groups=[
        *(_cyclic_entry(n) for n in range(2, 9)),
        GroupEntry(name="Z2^2", construct=ConstructSpec(product=["Z2", "Z2"])),
        GroupEntry(name="Z3^2", construct=ConstructSpec(product=["Z3", "Z3"])),
        GroupEntry(name="Z2^3", construct=ConstructSpec(product=["Z2", "Z2", "Z2"])),
        GroupEntry(name="Z4xZ2", construct=ConstructSpec(product=["Z4", "Z2"])),
        GroupEntry(name="D4", construct=ConstructSpec(dihedral=4)),
        GroupEntry(name="Q8", construct=ConstructSpec(quaternion=8)),
        GroupEntry(name="S3", construct=ConstructSpec(symmetric=3)),
        GroupEntry(name="D6", construct=ConstructSpec(dihedral=6)),
        GroupEntry(name="A4", construct=ConstructSpec(alternating=4)),
        GroupEntry(name="S4", construct=ConstructSpec(symmetric=4)),
    ],
    presentations=[
        PresentationEntry(
            name="Z2^2:factor", rank=2, relators=["x1^2", "x2^2", "[x1,x2]"], subgroup=["x1"]
        ),
        PresentationEntry(
            name="Z2^2:whole", rank=2, relators=["x1^2", "x2^2", "[x1,x2]"], subgroup=["x1", "x2"]
        ),
        PresentationEntry(name="Z4:2", rank=1, relators=["x1^4"], subgroup=["x1^2"]),
    ],
)


def default_corpus(settings: Settings | None = None) -> Corpus:
    """The built-in corpus; every group comes from a constructor."""
    return build_corpus(DEFAULT_DOCUMENT, settings)
