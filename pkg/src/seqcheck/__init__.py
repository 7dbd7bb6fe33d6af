from src.seqcheck.exactness import (
    AbelianSequence,
    SequenceCheck,
    SequenceShapeError,
    coker_ker_compare,
    exact_at,
    exact_everywhere,
    is_complex,
    order_telescopes,
)

__all__ = [
    "AbelianSequence",
    "SequenceCheck",
    "SequenceShapeError",
    "coker_ker_compare",
    "exact_at",
    "exact_everywhere",
    "is_complex",
    "order_telescopes",
]
