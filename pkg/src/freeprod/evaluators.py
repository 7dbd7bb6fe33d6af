"""Free-product formulas for M(G1 * G2, <N1 * N2>) evaluated on invariant data."""

from typing import NamedTuple

from src.abgrp.functors import tensor, tor
from src.abgrp.groups import AbelianGroup, direct_sum, direct_sum_all
from src.freeprod.data import PairInvariantData


class Term(NamedTuple):
    """One labelled summand of a decomposition."""

    label: str
    value: AbelianGroup


def _sum(terms: list[Term]) -> AbelianGroup:
    return direct_sum_all(t.value for t in terms)


def eval_c1(d1: PairInvariantData, d2: PairInvariantData) -> AbelianGroup:
    """M(G1, N1) ⊕ M(G2, N2)."""
    return direct_sum(d1.require("m1"), d2.require("m1"))


def mixed_terms(d1: PairInvariantData, d2: PairInvariantData) -> list[Term]:
    """
    The nine summands of the class-2 formula beyond the two M2 terms.

    Assembled in a fixed order: the four tensor terms against N/[N,G] of
    the other side, the two (G/N)^ab terms, then the three Tor terms.
    """
    m1_1, m1_2 = d1.require("m1"), d2.require("m1")
    n1, n2 = d1.require("n_mod"), d2.require("n_mod")
    q1, q2 = d1.require("q_ab"), d2.require("q_ab")
    mq1, mq2 = d1.require("m_q"), d2.require("m_q")
    return [
        Term("M(G1,N1) (x) N2/[N2,G2]", tensor(m1_1, n2)),
        Term("M(G2,N2) (x) N1/[N1,G1]", tensor(m1_2, n1)),
        Term("M(G2/N2) (x) N1/[N1,G1]", tensor(mq2, n1)),
        Term("M(G1/N1) (x) N2/[N2,G2]", tensor(mq1, n2)),
        Term("(G1/N1)^ab (x) M(G2,N2)", tensor(q1, m1_2)),
        Term("(G2/N2)^ab (x) M(G1,N1)", tensor(q2, m1_1)),
        Term("Tor(N1/[N1,G1], N2/[N2,G2])", tor(n1, n2)),
        Term("Tor((G1/N1)^ab, N2/[N2,G2])", tor(q1, n2)),
        Term("Tor((G2/N2)^ab, N1/[N1,G1])", tor(q2, n1)),
    ]


def eval_c2_terms(d1: PairInvariantData, d2: PairInvariantData) -> list[Term]:
    """All eleven labelled summands of M2 of the free-product pair."""
    return [
        Term("M2(G1,N1)", d1.require("m2")),
        Term("M2(G2,N2)", d2.require("m2")),
        *mixed_terms(d1, d2),
    ]


def eval_c2(d1: PairInvariantData, d2: PairInvariantData) -> AbelianGroup:
    return _sum(eval_c2_terms(d1, d2))


def burns_ellis_terms(d1: PairInvariantData, d2: PairInvariantData) -> list[Term]:
    """
    M2(G * H) for absolute groups, read from N = G data.

    The five summands are M2(G), M2(H), M(G) ⊗ H^ab, G^ab ⊗ M(H) and
    Tor(G^ab, H^ab), with M and M2 taken from the pair fields.
    """
    g_ab, h_ab = d1.require("g_ab"), d2.require("g_ab")
    return [
        Term("M2(G)", d1.require("m2")),
        Term("M2(H)", d2.require("m2")),
        Term("M(G) (x) H^ab", tensor(d1.require("m1"), h_ab)),
        Term("G^ab (x) M(H)", tensor(g_ab, d2.require("m1"))),
        Term("Tor(G^ab, H^ab)", tor(g_ab, h_ab)),
    ]


def eval_burns_ellis(d1: PairInvariantData, d2: PairInvariantData) -> AbelianGroup:
    return _sum(burns_ellis_terms(d1, d2))


def eval_miller(d1: PairInvariantData, d2: PairInvariantData) -> AbelianGroup:
    """M(G1 * G2) = M(G1) ⊕ M(G2)."""
    return direct_sum(d1.require("m_g"), d2.require("m_g"))


def eval_all_c(d1: PairInvariantData, d2: PairInvariantData, c: int) -> AbelianGroup:
    """
    M^(c)(G1, N1) ⊕ M^(c)(G2, N2), the value under the all-c hypotheses.

    Data tuples carry M^(c) for c in {1, 2} only.

    Raises:
        ValueError: If c is not 1 or 2
    """
    if c not in (1, 2):
        raise ValueError(f"data tuples carry M^(c) for c = 1, 2 only, got {c}")
    name = "m1" if c == 1 else "m2"
    return direct_sum(d1.require(name), d2.require(name))
