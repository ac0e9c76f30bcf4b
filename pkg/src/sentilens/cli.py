"""Command-line interface.

One subcommand per pipeline stage plus `run` for several at once, and
the model/report helpers `predict`, `compare` and `export-terms`.
Flags override config-file fields, which override built-in defaults.
Logs go to standard error; every artifact lands in the output
directory, so standard output stays clean.  Exit codes: 0 success,
2 config error, 3 data error, 4 network error, 5 internal error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from sentilens import __version__
from sentilens.config import load_config
from sentilens.errors import SentilensError
from sentilens.pipeline import (
    CANONICAL_STAGES,
    ArtifactPaths,
    run_compare,
    run_export_terms,
    run_pipeline,
    run_predict,
)

log = logging.getLogger("sentilens")

_STAGE_HELP = {
    "collect": "gather raw records and build the cleaned corpus",
    "preprocess": "tokenize the corpus and write the tf-idf matrix",
    "score": "score every document against the merged lexicon",
    "bootstrap": "turn lexicon scores into weak training labels",
    "train": "fit the Naive Bayes model on the training split",
    "evaluate": "confusion matrix and accuracy on the held-out split",
    "report": "distribution, ratio and histogram summaries",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="TOML or JSON config file")
    common.add_argument("--out", metavar="DIR", help="output directory override")
    common.add_argument("--seed", type=int, metavar="N", help="random seed override")
    common.add_argument(
        "--verbose", action="store_true", help="log progress details to stderr"
    )

    parser = argparse.ArgumentParser(
        prog="sentilens",
        description="Social-media sentiment mining for product-safety monitoring.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for stage in CANONICAL_STAGES:
        subparsers.add_parser(stage, parents=[common], help=_STAGE_HELP[stage])

    run = subparsers.add_parser(
        "run", parents=[common], help="run several stages in order"
    )
    run.add_argument(
        "--stages",
        default=",".join(CANONICAL_STAGES),
        metavar="A,B,...",
        help="comma-separated stage subset (default: all)",
    )

    subparsers.add_parser(
        "predict", parents=[common], help="classify the whole corpus with the model"
    )
    subparsers.add_parser(
        "compare", parents=[common], help="lexicon vs classifier label counts"
    )
    export = subparsers.add_parser(
        "export-terms",
        parents=[common],
        help="top matrix terms as an annotatable word list",
    )
    export.add_argument(
        "--top-k", type=int, default=50, metavar="N", help="terms to export"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = load_config(args.config, output_dir=args.out, seed=args.seed)
        if args.command in CANONICAL_STAGES:
            written = run_pipeline(config, {args.command})
        elif args.command == "run":
            stages = {s.strip() for s in args.stages.split(",") if s.strip()}
            written = run_pipeline(config, stages)
        else:
            paths = ArtifactPaths(config.output_dir)
            paths.out_dir.mkdir(parents=True, exist_ok=True)
            if args.command == "predict":
                written = run_predict(config, paths)
            elif args.command == "compare":
                written = run_compare(config, paths)
            else:
                written = run_export_terms(paths, args.top_k)
        for path in written:
            log.info("wrote %s", path)
        return 0
    except SentilensError as exc:
        log.error("%s", exc)
        return exc.exit_code
    except Exception:
        log.exception("internal error")
        return 5


if __name__ == "__main__":
    raise SystemExit(main())
