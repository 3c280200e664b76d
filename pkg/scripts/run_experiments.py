"""Run the full demo study on a generated dataset.

Cross-validates both prediction modes, writes the reports and an AUC-delta
summary, then trains a bundle on the complete cohort and scores a snapshot
ready for `brandintent serve`.
"""

import argparse
import json
import os
import time

from brandintent.config import PipelineConfig
from brandintent.corpus import ALL_DIMENSIONS, label_users, load_survey, load_users
from brandintent.engine import save_snapshot, score_cohort
from brandintent.evaluation import compare_modes, render_report
from brandintent.lexicon import load_lexicon
from brandintent.pipeline import fit_pipeline, save_pipeline


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--data", default="demo_data", help="make_demo_data output dir")
    ap.add_argument("--out", default="demo_results", help="results directory")
    args = ap.parse_args()

    with open(os.path.join(args.data, "config.json"), encoding="utf-8") as fh:
        config = PipelineConfig.from_dict(json.load(fh))
    users = load_users(os.path.join(args.data, "corpus.jsonl"))
    responses = load_survey(os.path.join(args.data, "survey.csv"))
    general = load_lexicon(
        os.path.join(args.data, "positive_words.txt"),
        os.path.join(args.data, "negative_words.txt"),
    )
    labeled = label_users(users, responses, midpoint=config.likert_midpoint)
    print(f"loaded {len(labeled)} labeled users")

    os.makedirs(args.out, exist_ok=True)
    t0 = time.monotonic()
    cmp = compare_modes(labeled, general, config)
    print(f"cross-validated both modes in {time.monotonic() - t0:.1f}s")

    for mode, result in (("independent", cmp.independent), ("ica", cmp.ica)):
        path = os.path.join(args.out, f"report_{mode}.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(render_report(result))
        print(f"wrote {path}")

    delta = cmp.auc_delta()
    lines = ["dimension        auc_independent  auc_ica  delta"]
    for dim in ALL_DIMENSIONS:
        ind = cmp.independent.metrics.get(dim)
        ica = cmp.ica.metrics.get(dim)
        if ind is None or ica is None:
            lines.append(f"{dim.value:<16} skipped")
            continue
        lines.append(
            f"{dim.value:<16} {ind.auc:>15.3f}  {ica.auc:>7.3f}  {delta[dim]:+.3f}"
        )
    summary = "\n".join(lines) + "\n"
    with open(os.path.join(args.out, "auc_delta.txt"), "w", encoding="utf-8") as fh:
        fh.write(summary)
    print(summary)

    pipeline = fit_pipeline(labeled, general, config)
    bundle = os.path.join(args.out, "bundle")
    save_pipeline(pipeline, bundle)
    scored = score_cohort(users, config.brand, pipeline)
    snapshot = os.path.join(args.out, "snapshot.jsonl")
    save_snapshot(scored, snapshot)
    print(f"trained bundle at {bundle}; scored snapshot at {snapshot}")
    print(f"serve it with: brandintent serve --snapshot {snapshot}")


if __name__ == "__main__":
    main()
