"""Generate a synthetic demo corpus plus the input files the CLI needs.

Writes corpus.jsonl, survey.csv, positive_words.txt, negative_words.txt and
a config.json tuned for quick demo runs.
"""

import argparse
import json
import os

from brandintent.corpus import Dimension
from brandintent.synthetic import SyntheticSpec, write_corpus

POSITIVE_WORDS = [
    "good", "great", "love", "nice", "awesome", "excellent", "happy",
    "fantastic", "smooth", "helpful",
]
NEGATIVE_WORDS = [
    "bad", "hate", "awful", "poor", "terrible", "broken", "angry",
    "horrible", "slow", "useless",
]

DEMO_CONFIG = {
    "brand": "delta",
    "brand_keywords": ["@delta"],
    "epochs": 20,
    "k_folds": 5,
    "seed": 0,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="demo_data", help="output directory")
    ap.add_argument("--users", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    os.makedirs(args.out, exist_ok=True)
    # plant the buy/recommend intentions as noisy copies of favorability so
    # the induced dependency graph has edges worth refining over
    spec = SyntheticSpec(
        n_users=args.users,
        copy_from={
            Dimension.BUY: (Dimension.FAVORABILITY, 0.10),
            Dimension.RECOMMEND: (Dimension.FAVORABILITY, 0.20),
        },
    )
    corpus = os.path.join(args.out, "corpus.jsonl")
    survey = os.path.join(args.out, "survey.csv")
    write_corpus(spec, corpus, survey, seed=args.seed)

    for name, words in (
        ("positive_words.txt", POSITIVE_WORDS),
        ("negative_words.txt", NEGATIVE_WORDS),
    ):
        with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
            fh.write("\n".join(words) + "\n")

    with open(os.path.join(args.out, "config.json"), "w", encoding="utf-8") as fh:
        json.dump(DEMO_CONFIG, fh, indent=2)
        fh.write("\n")

    print(f"wrote {args.users} synthetic users under {args.out}/")
    print(f"  corpus:  {corpus}")
    print(f"  survey:  {survey}")
    print(f"  lexicon: positive_words.txt / negative_words.txt")
    print(f"  config:  config.json")


if __name__ == "__main__":
    main()
