"""Command-line entry point: `verify` a corpus or `compute` a single invariant."""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

import pandas as pd
import structlog
from pydantic import ValidationError

from src.abgrp.groups import AbelianGroup
from src.cli.corpus import Corpus, CorpusError, default_corpus, load_corpus
from src.cli.runner import ConfigurationError, configure_logging, parse_checks, run_checks
from src.config import Settings
from src.fingrp.sections import abelianization
from src.freeprod.data import MissingInvariantError, pair_data_from_pair
from src.freeprod.evaluators import eval_c1, eval_c2
from src.homology.oracle import HomologyBoundError, schur_multiplier, third_homology
from src.nilfree.baer import baer_section
from src.nilfree.collection import NilpotentScopeError
from src.pairmult.routes import RouteResult, central_formula, consistency_audit, hopf_route

logger = structlog.get_logger()

INVARIANTS = (
    "schur",
    "h3",
    "abelianization",
    "audit",
    "central",
    "hopf",
    "eval-c1",
    "eval-c2",
    "baer",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="baer-pairs",
        description="Schur multipliers and Baer invariants of pairs of finite groups",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--corpus", type=Path, help="Corpus JSON file (default: built-in corpus)")
    common.add_argument("--max-order", type=int, help="Largest |G| for homology in degrees <= 2")
    common.add_argument("--h3-max-order", type=int, help="Largest |G| for degree-3 homology")
    common.add_argument("--c", type=int, choices=(1, 2), help="Nilpotency class")
    common.add_argument(
        "--interpretation",
        choices=("literal", "reduced"),
        help="Reading of the central formula at c >= 2",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="Run checks over a corpus")
    verify.add_argument(
        "--checks", help="Comma-separated check ids; an empty list runs nothing (default: all)"
    )
    verify.add_argument("--out", type=Path, help="Write the JSON report here")
    verify.add_argument("--sequential", action="store_true", help="Run without worker processes")
    verify.add_argument("--seed", type=int, help="Seed for the randomized property batches")

    compute = sub.add_parser("compute", parents=[common], help="Compute one invariant")
    compute.add_argument("target", help="Group name, pair id or presentation name")
    compute.add_argument("--invariant", choices=INVARIANTS, default="schur")
    compute.add_argument("--partner", help="Second pair for eval-c1 and eval-c2 (default: target)")
    return parser


def settings_from_args(args: argparse.Namespace) -> Settings:
    """
    Settings from the environment with the given flags taking precedence.

    Raises:
        ValidationError: A flag value is out of range
    """
    overrides = {
        "max_order": args.max_order,
        "h3_max_order": args.h3_max_order,
        "nilpotency_class": args.c,
        "interpretation": args.interpretation,
        "sequential": getattr(args, "sequential", None) or None,
        "seed": getattr(args, "seed", None),
    }
    return Settings(**{k: v for k, v in overrides.items() if v is not None})


def _corpus(args: argparse.Namespace, settings: Settings) -> Corpus:
    return load_corpus(args.corpus, settings) if args.corpus else default_corpus(settings)


def format_route(result: RouteResult) -> str:
    if result.value is not None:
        return result.value.describe()
    return f"NA ({result.reason}): {'; '.join(result.notes)}"


def audit_table(result_routes: Sequence[RouteResult]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "route": str(r.route),
                "value": r.value.describe() if r.value is not None else "",
                "reason": str(r.reason) if r.reason else "",
            }
            for r in result_routes
        ]
    )


def compute(args: argparse.Namespace, settings: Settings) -> str:
    """
    The requested invariant of one corpus object as printable text.

    Raises:
        CorpusError: The target or partner is not in the corpus
    """
    corpus = _corpus(args, settings)
    c = settings.nilpotency_class
    invariant = args.invariant
    value: AbelianGroup
    try:
        match invariant:
            case "schur":
                value = schur_multiplier(corpus.group(args.target), settings)
            case "h3":
                value = third_homology(corpus.group(args.target), settings)
            case "abelianization":
                value = abelianization(corpus.group(args.target)).canonical
            case "audit":
                pair = corpus.pair(args.target)
                audit = consistency_audit(pair, c, settings.interpretation, settings)
                return f"{audit_table(audit.routes).to_string(index=False)}\nstatus {audit.status}"
            case "central":
                pair = corpus.pair(args.target)
                return format_route(central_formula(pair, c, settings.interpretation, settings))
            case "hopf":
                return format_route(hopf_route(corpus.pair(args.target), c))
            case "eval-c1" | "eval-c2":
                d1 = pair_data_from_pair(corpus.pair(args.target), settings)
                partner = args.partner or args.target
                d2 = pair_data_from_pair(corpus.pair(partner), settings)
                value = eval_c1(d1, d2) if invariant == "eval-c1" else eval_c2(d1, d2)
            case _:
                if args.target not in corpus.presentations:
                    raise CorpusError("no such presentation", name=args.target, axiom="reference")
                value = baer_section(corpus.presentations[args.target], c)
    except (HomologyBoundError, MissingInvariantError, NilpotentScopeError) as exc:
        return f"NA ({exc.reason}): {exc}"
    logger.info("Invariant computed", target=args.target, invariant=invariant, c=c)
    return value.describe()


def verify(args: argparse.Namespace, settings: Settings) -> int:
    checks = parse_checks(args.checks)
    corpus = _corpus(args, settings)
    report = run_checks(corpus, checks, settings)
    print(report.render())
    if args.out:
        args.out.write_text(report.to_json() + "\n", encoding="utf-8")
        logger.info("Report written", path=str(args.out))
    return report.exit_code()


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run the CLI and return its exit code.

    0: no FAIL; 1: at least one FAIL; 2: configuration, I/O or corpus error.
    """
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        settings = settings_from_args(args)
        if args.command == "verify":
            return verify(args, settings)
        print(compute(args, settings))
        return 0
    except (CorpusError, ConfigurationError, ValidationError, OSError) as exc:
        logger.error("Run aborted", error=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
