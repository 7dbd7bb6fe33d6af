from src.freeprod.data import (
    DataSource,
    MissingInvariantError,
    PairInvariantData,
    pair_data_from_pair,
    random_pair_data,
)
from src.freeprod.evaluators import (
    Term,
    burns_ellis_terms,
    eval_all_c,
    eval_burns_ellis,
    eval_c1,
    eval_c2,
    eval_c2_terms,
    eval_miller,
    mixed_terms,
)
from src.freeprod.hypotheses import (
    Condition,
    Cor44Result,
    HypothesisReport,
    Scope,
    cor44_check,
    cor44_coprime,
    cor44_perfect,
    thm41_eval_check,
    thm43_check,
    thm43_hypotheses,
)

__all__ = [
    "Condition",
    "Cor44Result",
    "DataSource",
    "HypothesisReport",
    "MissingInvariantError",
    "PairInvariantData",
    "Scope",
    "Term",
    "burns_ellis_terms",
    "cor44_check",
    "cor44_coprime",
    "cor44_perfect",
    "eval_all_c",
    "eval_burns_ellis",
    "eval_c1",
    "eval_c2",
    "eval_c2_terms",
    "eval_miller",
    "mixed_terms",
    "pair_data_from_pair",
    "random_pair_data",
    "thm41_eval_check",
    "thm43_check",
    "thm43_hypotheses",
]
