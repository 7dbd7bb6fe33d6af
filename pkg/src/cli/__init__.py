from src.cli.corpus import (
    Corpus,
    CorpusDocument,
    CorpusError,
    build_corpus,
    default_corpus,
    load_corpus,
    parse_document,
)
from src.cli.report import CheckRecord, PropertyBatch, VerificationReport
from src.cli.runner import CHECK_IDS, ConfigurationError, parse_checks, run_checks

__all__ = [
    "CHECK_IDS",
    "CheckRecord",
    "ConfigurationError",
    "Corpus",
    "CorpusDocument",
    "CorpusError",
    "PropertyBatch",
    "VerificationReport",
    "build_corpus",
    "default_corpus",
    "load_corpus",
    "parse_checks",
    "parse_document",
    "run_checks",
]
