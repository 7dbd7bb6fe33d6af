from src.homology.bar import ChainComplexZ, bar_complex
from src.homology.oracle import (
    HomologyBoundError,
    HomologyGroup,
    homology_at,
    homology_group,
    induced_on_homology,
    schur_multiplier,
    third_homology,
)

__all__ = [
    "ChainComplexZ",
    "HomologyBoundError",
    "HomologyGroup",
    "bar_complex",
    "homology_at",
    "homology_group",
    "induced_on_homology",
    "schur_multiplier",
    "third_homology",
]
