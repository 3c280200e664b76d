"""Command-line surface: ingest, induce-lexicon, train, evaluate, score, serve."""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .config import PipelineConfig, load_config
from .corpus import CorpusError, label_users, load_survey, load_users, save_users
from .engine import load_snapshot, save_snapshot, score_cohort
from .evaluation import compare_modes, evaluate, render_comparison, render_report
from .lexicon import induce_domain_lexicon, load_lexicon, save_domain_lexicon
from .pipeline import fit_pipeline, load_pipeline, save_pipeline


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brandintent",
        description="Attitude and action-intention scoring for brand-mention corpora.",
    )
    parser.add_argument("--config", help="JSON config file overriding pipeline defaults")
    parser.add_argument("--seed", type=int, help="override the configured RNG seed")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate, dedupe and normalize a corpus file")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("induce-lexicon", help="induce the domain lexicon from a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--positive-words", required=True)
    p.add_argument("--negative-words", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("train", help="fit a full pipeline and save the bundle")
    p.add_argument("--corpus", required=True)
    p.add_argument("--survey", required=True)
    p.add_argument("--positive-words", required=True)
    p.add_argument("--negative-words", required=True)
    p.add_argument("--out", required=True, help="bundle directory")

    p = sub.add_parser("evaluate", help="k-fold cross-validated metrics")
    p.add_argument("--corpus", required=True)
    p.add_argument("--survey", required=True)
    p.add_argument("--positive-words", required=True)
    p.add_argument("--negative-words", required=True)
    p.add_argument("--mode", choices=["independent", "ica", "both"], default="ica")
    p.add_argument("--report", help="also write the report to this path")

    p = sub.add_parser("score", help="score a cohort with a trained bundle")
    p.add_argument("--bundle", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True, help="snapshot JSONL path")

    p = sub.add_parser("serve", help="serve a scored snapshot over HTTP")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--brand", help="brand name (default: from the snapshot)")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", help="optional dashboard build directory to mount at /ui")

    return parser


def _load_cfg(args) -> PipelineConfig:
    cfg = load_config(args.config) if args.config else PipelineConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    cfg.validate()
    return cfg


def _labeled(args, cfg: PipelineConfig):
    users = load_users(args.corpus)
    responses = load_survey(args.survey)
    labeled = label_users(
        users, responses, mode=cfg.binarize_mode, midpoint=cfg.likert_midpoint
    )
    if not labeled:
        raise CorpusError("no users matched between corpus and survey")
    return labeled


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_cfg(args)

        if args.command == "ingest":
            users = load_users(args.corpus)
            save_users(users, args.out)
            n_tweets = sum(len(u.tweets) for u in users)
            print(f"wrote {len(users)} users ({n_tweets} tweets) to {args.out}")
            return 0

        if args.command == "induce-lexicon":
            users = load_users(args.corpus)
            general = load_lexicon(args.positive_words, args.negative_words)
            domain = induce_domain_lexicon(
                users,
                cfg.brand_keywords,
                general,
                window=cfg.domain_window,
                threshold=cfg.domain_threshold,
                brand=cfg.brand,
            )
            save_domain_lexicon(domain, args.out)
            print(f"induced {len(domain)} domain entries to {args.out}")
            return 0

        if args.command == "train":
            general = load_lexicon(args.positive_words, args.negative_words)
            labeled = _labeled(args, cfg)
            pipeline = fit_pipeline(labeled, general, cfg)
            save_pipeline(pipeline, args.out)
            print(
                f"trained on {len(labeled)} users "
                f"({len(pipeline.vocabulary)} vocabulary terms, "
                f"{len(pipeline.domain)} domain entries) -> {args.out}"
            )
            if pipeline.skipped:
                for dim, reason in pipeline.skipped.items():
                    print(f"warning: {dim.value} not trained ({reason})")
            return 0

        if args.command == "evaluate":
            general = load_lexicon(args.positive_words, args.negative_words)
            labeled = _labeled(args, cfg)
            if args.mode == "both":
                report = render_comparison(compare_modes(labeled, general, cfg))
            else:
                report = render_report(evaluate(labeled, general, cfg, mode=args.mode))
            print(report, end="")
            if args.report:
                with open(args.report, "w", encoding="utf-8") as fh:
                    fh.write(report)
            return 0

        if args.command == "score":
            pipeline = load_pipeline(args.bundle)
            users = load_users(args.corpus)
            cohort = score_cohort(users, pipeline.config.brand, pipeline)
            save_snapshot(cohort, args.out)
            print(f"scored {len(cohort)} users -> {args.out}")
            return 0

        if args.command == "serve":
            import uvicorn

            from .server import SnapshotStore, create_app

            cohort = load_snapshot(args.snapshot)
            brand = args.brand or (cohort[0].brand if cohort else cfg.brand)
            store = SnapshotStore()
            store.replace(brand, cohort)
            app = create_app(store, default_bins=cfg.histogram_bins, static_dir=args.static)
            print(f"serving {len(cohort)} scored users for {brand!r} on {args.host}:{args.port}")
            uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
            return 0

        raise AssertionError(f"unhandled command {args.command}")
    except (CorpusError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
