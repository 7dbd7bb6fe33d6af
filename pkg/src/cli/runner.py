"""Batch verification of a corpus: pair data, per-pair checks and property batches."""

import logging
import sys
import time
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Any, NamedTuple

import numpy as np
import structlog

from src.cli.corpus import Corpus
from src.cli.report import CheckRecord, PropertyBatch, VerificationReport
from src.config import Settings, get_settings
from src.fingrp.group import PairOfGroups
from src.freeprod.data import PairInvariantData, pair_data_from_pair, random_pair_data
from src.freeprod.evaluators import eval_c1, eval_c2
from src.freeprod.hypotheses import (
    cor44_check,
    cor44_coprime,
    thm41_eval_check,
    thm43_check,
    thm43_hypotheses,
)
from src.pairmult.checks import (
    five_term_check,
    lemma38_check,
    mn_sweep,
    oracle_cross_check,
    semidirect_splitting_check,
    thm39_tail_check,
)
from src.pairmult.routes import consistency_audit
from src.verdicts import Status, Verdict

logger = structlog.get_logger()

CHECK_IDS = (
    "five-term",
    "lemma38",
    "thm33",
    "thm35",
    "thm36-audit",
    "thm39-tail",
    "thm41-eval",
    "thm43",
    "cor44",
    "oracle-cross",
)

# Checks that pair each corpus pair with a partner and need invariant data
TWO_PAIR_CHECKS = frozenset({"thm41-eval", "thm43", "cor44"})


class ConfigurationError(ValueError):
    """Flags or settings that make a run impossible."""


def configure_logging(level: int = logging.INFO) -> None:
    """Route structlog to stderr so stdout only carries the report."""
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=structlog.PrintLoggerFactory(sys.stderr),
        cache_logger_on_first_use=False,
    )


def parse_checks(text: str | None) -> list[str]:
    """
    Check ids from a comma list, in canonical order. None selects every check.

    Raises:
        ConfigurationError: An id is not a known check
    """
    if text is None:
        return list(CHECK_IDS)
    requested = {part.strip() for part in text.split(",") if part.strip()}
    unknown = sorted(requested - set(CHECK_IDS))
    if unknown:
        raise ConfigurationError(
            f"unknown checks {unknown}; choose from {', '.join(CHECK_IDS)}"
        )
    return [check for check in CHECK_IDS if check in requested]


class CheckTask(NamedTuple):
    pair_index: int
    check_index: int
    check: str
    pair: PairOfGroups
    partner: PairOfGroups
    data: PairInvariantData | None
    partner_data: PairInvariantData | None
    settings: Settings


def _require_data(task: CheckTask) -> tuple[PairInvariantData, PairInvariantData]:
    assert task.data is not None and task.partner_data is not None
    return task.data, task.partner_data


def _thm41(task: CheckTask) -> Verdict:
    d1, d2 = _require_data(task)
    p, q = task.pair.normal, task.partner.normal
    return thm41_eval_check(
        d1,
        d2,
        both_trivial=p.is_trivial() and q.is_trivial(),
        both_whole=p.is_whole() and q.is_whole(),
    )


def _cor44(task: CheckTask) -> Verdict:
    d1, d2 = _require_data(task)
    return cor44_check(task.pair.group, task.partner.group, d1, d2)


CHECKS: dict[str, Callable[[CheckTask], Verdict]] = {
    "five-term": lambda t: five_term_check(t.pair, t.settings),
    "lemma38": lambda t: lemma38_check(t.pair),
    "thm33": lambda t: semidirect_splitting_check(t.pair, t.settings),
    "thm35": lambda t: mn_sweep(t.pair, t.settings.nilpotency_class, t.settings),
    "thm36-audit": lambda t: consistency_audit(
        t.pair, t.settings.nilpotency_class, t.settings.interpretation, t.settings
    ).to_verdict(),
    "thm39-tail": lambda t: thm39_tail_check(t.pair),
    "thm41-eval": _thm41,
    "thm43": lambda t: thm43_check(*_require_data(t)),
    "cor44": _cor44,
    "oracle-cross": lambda t: oracle_cross_check(t.pair, t.settings),
}


def run_task(task: CheckTask) -> CheckRecord:
    """
    Run one check on one pair.

    Arithmetic blow-ups and unexpected value errors become FAIL records so a
    single pair cannot abort the batch.
    """
    start = time.perf_counter()
    try:
        verdict = CHECKS[task.check](task)
    except (ArithmeticError, ValueError) as exc:
        logger.exception("Check crashed", check=task.check, pair=task.pair.label)
        verdict = Verdict(Status.FAIL, notes=(f"{type(exc).__name__}: {exc}",))
    seconds = time.perf_counter() - start
    if verdict.status is Status.NA:
        logger.warning(
            "Check not applicable", check=task.check, pair=task.pair.label, reason=verdict.reason
        )
    else:
        logger.info("Check finished", check=task.check, pair=task.pair.label, status=verdict.status)
    return CheckRecord.from_verdict(task.check, task.pair.label, verdict, seconds)


def _pair_data_task(args: tuple[PairOfGroups, Settings]) -> PairInvariantData:
    pair, settings = args
    return pair_data_from_pair(pair, settings)


def _map(
    fn: Callable[[Any], Any], items: Sequence[Any], settings: Settings
) -> list[Any]:
    """Map in worker processes, or in order when running sequentially."""
    if settings.sequential or len(items) < 2:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(
        max_workers=settings.workers, initializer=configure_logging
    ) as executor:
        return list(executor.map(fn, items))


def symmetry_batch(settings: Settings) -> PropertyBatch:
    """Both evaluators are unchanged by swapping the pairs on seeded random data."""
    rng = np.random.default_rng(settings.seed)
    failures: list[dict[str, Any]] = []
    for i in range(settings.symmetry_batch_size):
        d1 = random_pair_data(rng, f"random-{2 * i}")
        d2 = random_pair_data(rng, f"random-{2 * i + 1}")
        if eval_c1(d1, d2) != eval_c1(d2, d1) or eval_c2(d1, d2) != eval_c2(d2, d1):
            failures.append({"left": d1.to_dict(), "right": d2.to_dict()})
    return PropertyBatch(
        name="swap-symmetry",
        seed=settings.seed,
        size=settings.symmetry_batch_size,
        status=Status.FAIL if failures else Status.PASS,
        checked=settings.symmetry_batch_size,
        failures=failures,
    )


def cor44_batch(
    pairs: Sequence[PairOfGroups],
    data: Sequence[PairInvariantData | None],
    settings: Settings,
) -> PropertyBatch:
    """
    Coprime abelianizations against the group-level conditions on random corpus couples.

    Couples whose criterion fails, or whose invariants could not be gathered,
    are drawn but not counted as checked. data is indexed like pairs.
    """
    rng = np.random.default_rng(settings.seed)
    failures: list[dict[str, Any]] = []
    checked = 0
    size = settings.cor44_batch_size if pairs else 0
    for _ in range(size):
        i, j = (int(k) for k in rng.integers(len(pairs), size=2))
        left, right = data[i], data[j]
        if left is None or right is None:
            continue
        if not cor44_coprime(pairs[i].group, pairs[j].group).holds:
            continue
        report = thm43_hypotheses(left, right)
        if report.group_level_holds is None:
            continue
        checked += 1
        if not report.group_level_holds:
            failures.append(
                {"left": pairs[i].label, "right": pairs[j].label, "violations": report.violations}
            )
    return PropertyBatch(
        name="cor44-coprime-implication",
        seed=settings.seed,
        size=size,
        status=Status.MISMATCH if failures else Status.PASS,
        checked=checked,
        failures=failures,
    )


def configuration_of(settings: Settings, checks: Iterable[str]) -> dict[str, Any]:
    data = settings.model_dump(mode="json", exclude={"sequential", "workers"})
    data["checks"] = list(checks)
    return data


def run_checks(
    corpus: Corpus, checks: Sequence[str], settings: Settings | None = None
) -> VerificationReport:
    """
    Run every requested check on every corpus pair.

    Records come back ordered by (pair, check) in corpus and canonical check
    order whatever the completion order. The two-pair checks use the next
    corpus pair (cyclically) as the partner.

    Raises:
        ConfigurationError: A check id is unknown
    """
    settings = settings or get_settings()
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ConfigurationError(f"unknown checks {unknown}")
    checks = [c for c in CHECK_IDS if c in checks]
    pairs = list(corpus.pairs.values())
    configuration = configuration_of(settings, checks)
    if not checks or not pairs:
        return VerificationReport.assemble(configuration, [])

    needs_data = bool(TWO_PAIR_CHECKS & set(checks))
    data: list[PairInvariantData | None] = [None] * len(pairs)
    if needs_data:
        logger.info("Computing pair data", pairs=len(pairs))
        data = _map(_pair_data_task, [(p, settings) for p in pairs], settings)

    tasks = [
        CheckTask(
            i,
            CHECK_IDS.index(check),
            check,
            pair,
            pairs[(i + 1) % len(pairs)],
            data[i],
            data[(i + 1) % len(pairs)],
            settings,
        )
        for i, pair in enumerate(pairs)
        for check in checks
    ]
    logger.info("Running checks", pairs=len(pairs), checks=len(checks), tasks=len(tasks))
    records: list[CheckRecord] = _map(run_task, tasks, settings)
    keyed = zip(((t.pair_index, t.check_index) for t in tasks), records, strict=True)
    records = [r for _, r in sorted(keyed, key=lambda item: item[0])]

    batches: list[PropertyBatch] = []
    if "thm41-eval" in checks:
        batches.append(symmetry_batch(settings))
    if "cor44" in checks:
        batches.append(cor44_batch(pairs, data, settings))
    report = VerificationReport.assemble(configuration, records, batches)
    logger.info(
        "Verification finished",
        records=len(records),
        findings=len(report.findings),
        failed=report.has_failure(),
    )
    return report
