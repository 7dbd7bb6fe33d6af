"""Tests for corpus loading and validation."""

import json
from pathlib import Path
from typing import Any

import pytest
from pydantic import BaseModel

from src.cli.corpus import (
    ConstructSpec,
    Corpus,
    CorpusError,
    GroupEntry,
    build_corpus,
    default_corpus,
    load_corpus,
    parse_document,
)
from src.config import Settings

# A Latin square with identity 0 where every element squares to 0. Order 5
# rules out a group, so some triple is not associative.
LOOP_5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def load(payload: dict[str, Any], settings: Settings | None = None) -> Corpus:
    return build_corpus(parse_document(json.dumps(payload)), settings)


class TestGroups:
    """Tests for group entries."""

    def test_cyclic_construct(self) -> None:
        """{"cyclic": 6} gives a group of order 6 under the entry name."""
        corpus = load({"groups": [{"name": "C6", "construct": {"cyclic": 6}}]})
        assert corpus.groups["C6"].order == 6
        assert corpus.groups["C6"].name == "C6"

    def test_product(self) -> None:
        """Factors are looked up among earlier entries."""
        corpus = load(
            {
                "groups": [
                    {"name": "Z2", "construct": {"cyclic": 2}},
                    {"name": "Z3", "construct": {"cyclic": 3}},
                    {"name": "Z6", "construct": {"product": ["Z2", "Z3"]}},
                ],
                "enumerate_pairs": False,
            }
        )
        assert corpus.groups["Z6"].order == 6
        assert corpus.pairs == {}

    def test_table(self) -> None:
        """A valid Cayley table is accepted as is."""
        table = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
        corpus = load({"groups": [{"name": "T3", "table": table}]})
        assert corpus.groups["T3"].table.tolist() == table

    def test_non_associative_table(self) -> None:
        """The rejection carries the failing triple."""
        with pytest.raises(CorpusError) as info:
            load({"groups": [{"name": "loop", "table": LOOP_5}]})
        assert info.value.axiom == "associativity"
        assert info.value.name == "loop"
        assert info.value.witness is not None and len(info.value.witness) == 3

    def test_undefined_factor(self) -> None:
        """A product of unknown names is a reference error."""
        with pytest.raises(CorpusError, match="not defined") as info:
            load({"groups": [{"name": "P", "construct": {"product": ["Z9"]}}]})
        assert info.value.axiom == "reference"

    def test_order_bound(self) -> None:
        """Groups beyond max_group_order are rejected before construction."""
        with pytest.raises(CorpusError) as info:
            load(
                {"groups": [{"name": "S4", "construct": {"symmetric": 4}}]},
                Settings(max_group_order=12),
            )
        assert info.value.axiom == "order-bound"

    def test_table_and_construct(self) -> None:
        """Exactly one of table and construct."""
        with pytest.raises(CorpusError) as info:
            load({"groups": [{"name": "X", "table": [[0]], "construct": {"cyclic": 1}}]})
        assert info.value.axiom == "schema"

    def test_construct_key_and_field_name(self) -> None:
        """The "construct" key fills the constructor field without shadowing BaseModel."""
        by_key = GroupEntry.model_validate({"name": "Z5", "construct": {"cyclic": 5}})
        by_field = GroupEntry(name="Z5", constructor=ConstructSpec(cyclic=5))
        assert by_key.constructor == by_field.constructor == ConstructSpec(cyclic=5)
        assert not set(GroupEntry.model_fields) & set(dir(BaseModel))


class TestPairs:
    """Tests for pair entries."""

    @pytest.fixture
    def s3_entry(self) -> dict[str, Any]:
        """S3 with elements ordered by array form: 1 is a transposition, 3 a 3-cycle."""
        return {"name": "S3", "construct": {"symmetric": 3}}

    def test_generated_by(self, s3_entry: dict[str, Any]) -> None:
        """A 3-cycle generates A3."""
        corpus = load(
            {
                "groups": [s3_entry],
                "pairs": [{"name": "S3-A3", "group": "S3", "normal": {"generated_by": [3]}}],
                "enumerate_pairs": False,
            }
        )
        assert corpus.pairs["S3-A3"].normal.order == 3

    def test_not_normal(self, s3_entry: dict[str, Any]) -> None:
        """A transposition subgroup is rejected with a conjugation witness."""
        with pytest.raises(CorpusError) as info:
            load(
                {
                    "groups": [s3_entry],
                    "pairs": [{"name": "bad", "group": "S3", "normal": [0, 1]}],
                }
            )
        assert info.value.axiom == "normality"
        assert info.value.witness is not None and len(info.value.witness) == 2

    def test_not_closed(self, s3_entry: dict[str, Any]) -> None:
        """{1, (1 2), (1 2 3)} is not a subgroup."""
        with pytest.raises(CorpusError) as info:
            load(
                {
                    "groups": [s3_entry],
                    "pairs": [{"name": "x", "group": "S3", "normal": [0, 1, 3]}],
                }
            )
        assert info.value.axiom == "subgroup-closure"

    def test_unknown_group(self) -> None:
        """Pairs must name a defined group."""
        with pytest.raises(CorpusError) as info:
            load({"pairs": [{"name": "p", "group": "nope", "normal": [0]}]})
        assert info.value.axiom == "reference"

    def test_out_of_range(self, s3_entry: dict[str, Any]) -> None:
        """Indices stay inside the group."""
        with pytest.raises(CorpusError) as info:
            load({"groups": [s3_entry], "pairs": [{"name": "p", "group": "S3", "normal": [0, 9]}]})
        assert info.value.witness == (9,)

    def test_enumeration(self) -> None:
        """Every normal subgroup of Z4, named by order."""
        corpus = load({"groups": [{"name": "Z4", "construct": {"cyclic": 4}}]})
        assert list(corpus.pairs) == ["Z4:1a", "Z4:2a", "Z4:4a"]

    def test_explicit_pair_not_duplicated(self) -> None:
        """An explicit pair replaces the enumerated one on the same subgroup."""
        corpus = load(
            {
                "groups": [{"name": "Z4", "construct": {"cyclic": 4}}],
                "pairs": [{"name": "Z4-Z2", "group": "Z4", "normal": [0, 2]}],
            }
        )
        assert list(corpus.pairs) == ["Z4-Z2", "Z4:1a", "Z4:4a"]

    def test_lookup(self) -> None:
        """Group names resolve to (G, G)."""
        corpus = load({"groups": [{"name": "Z4", "construct": {"cyclic": 4}}]})
        assert corpus.pair("Z4").normal.is_whole()
        assert corpus.group("Z4:2a").order == 4
        with pytest.raises(CorpusError):
            corpus.pair("Z5")


class TestPresentations:
    """Tests for presentation entries."""

    def test_parse(self) -> None:
        """Relators are adjoined to the subgroup words."""
        corpus = load(
            {
                "presentations": [
                    {"name": "Z4:2", "rank": 1, "relators": ["x1^4"], "subgroup": ["x1^2"]}
                ]
            }
        )
        assert len(corpus.presentations["Z4:2"].subgroup_words) == 2

    def test_bad_word(self) -> None:
        """The word error keeps its column."""
        with pytest.raises(CorpusError) as info:
            load({"presentations": [{"name": "p", "rank": 1, "relators": ["x1^"]}]})
        assert info.value.axiom == "word-syntax"


class TestLoading:
    """Tests for load_corpus and parse_document."""

    def test_invalid_json(self, tmp_path: Path) -> None:
        """Parse errors report line and column."""
        path = tmp_path / "corpus.json"
        path.write_text('{\n  "groups": [\n}\n', encoding="utf-8")
        with pytest.raises(CorpusError) as info:
            load_corpus(path)
        assert info.value.line == 3
        assert info.value.column is not None

    def test_unknown_section(self) -> None:
        """Extra top-level keys are rejected."""
        with pytest.raises(CorpusError, match="Extra inputs"):
            parse_document('{"group": []}')

    def test_missing_file(self, tmp_path: Path) -> None:
        """I/O errors propagate."""
        with pytest.raises(OSError):
            load_corpus(tmp_path / "missing.json")

    def test_default_corpus(self) -> None:
        """Built-in groups with their enumerated pairs."""
        corpus = default_corpus()
        assert len(corpus.groups) == 17
        assert len(corpus.pairs) >= 40
        assert "D4:8a" in corpus.pairs
        assert [k for k in corpus.pairs if k.startswith("S4:")] == ["S4:12a", "S4:24a"]
        assert "Z2^2:factor" in corpus.presentations
