from src.pairmult.checks import (
    TailMaps,
    five_term_check,
    lemma38_check,
    mn_check,
    mn_sweep,
    oracle_cross_check,
    semidirect_splitting_check,
    thm39_tail_check,
)
from src.pairmult.routes import (
    ConsistencyVerdict,
    Route,
    RouteResult,
    central_formula,
    consistency_audit,
    hopf_route,
    semidirect_kernel,
    specialization,
)

__all__ = [
    "ConsistencyVerdict",
    "Route",
    "RouteResult",
    "TailMaps",
    "central_formula",
    "consistency_audit",
    "five_term_check",
    "hopf_route",
    "lemma38_check",
    "mn_check",
    "mn_sweep",
    "oracle_cross_check",
    "semidirect_kernel",
    "semidirect_splitting_check",
    "specialization",
    "thm39_tail_check",
]
