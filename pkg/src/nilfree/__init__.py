from src.nilfree.baer import (
    PresentationWithSubgroup,
    abelian_presentation,
    baer_section,
    scope_violation,
)
from src.nilfree.collection import (
    CommutatorBasis,
    NilElement,
    NilpotentScopeError,
    basic_commutator_basis,
    collect,
    witt_count,
)
from src.nilfree.words import Word, WordSyntaxError, format_word, parse_word

__all__ = [
    "CommutatorBasis",
    "NilElement",
    "NilpotentScopeError",
    "PresentationWithSubgroup",
    "Word",
    "WordSyntaxError",
    "abelian_presentation",
    "baer_section",
    "basic_commutator_basis",
    "collect",
    "format_word",
    "parse_word",
    "scope_violation",
    "witt_count",
]
