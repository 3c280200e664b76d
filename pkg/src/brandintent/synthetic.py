"""Synthetic brand-mention corpora with planted, recoverable signal.

Each dimension gets a signal token emitted at different rates for positive
and negative users, so a working pipeline must recover it and a broken one
cannot. Label correlations are planted by copying a source dimension's label
with a small flip probability. Everything is driven by one seeded RNG.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .corpus import (
    ALL_DIMENSIONS,
    Dimension,
    LabeledUser,
    SurveyResponse,
    Tweet,
    UserRecord,
    label_users,
    save_users,
    SURVEY_HEADER,
)

HOUR = 3600


def signal_token(dim: Dimension) -> str:
    # single token under the tokenizer (underscores would split it in two)
    return f"sig{dim.value}"


def default_signal() -> dict[Dimension, tuple[float, float]]:
    """Moderate signal on every dimension; fine for plumbing tests."""
    return {d: (0.5, 0.1) for d in ALL_DIMENSIONS}


@dataclass(frozen=True)
class SyntheticSpec:
    n_users: int = 200
    brand: str = "delta"
    brand_keyword: str = "@delta"
    tweets_per_user: tuple[int, int] = (8, 20)
    mention_rate: float = 0.5
    noise_vocab: int = 150
    noise_tokens_per_tweet: tuple[int, int] = (5, 12)
    base_rate: float = 0.5
    # dimension -> (emission rate when positive, when negative)
    signal: Mapping[Dimension, tuple[float, float]] = field(default_factory=default_signal)
    # dimension -> (source dimension, flip probability)
    copy_from: Mapping[Dimension, tuple[Dimension, float]] = field(default_factory=dict)

    def __post_init__(self):
        if self.n_users < 1:
            raise ValueError("n_users must be >= 1")
        lo, hi = self.tweets_per_user
        if not 1 <= lo <= hi:
            raise ValueError("bad tweets_per_user range")
        for dim, (src, flip) in self.copy_from.items():
            if dim == src:
                raise ValueError(f"{dim.value} cannot copy itself")
            if src in self.copy_from:
                raise ValueError(f"{dim.value} copies {src.value}, which itself copies")
            if not 0.0 <= flip <= 1.0:
                raise ValueError("flip probability outside [0, 1]")


def _draw_labels(spec: SyntheticSpec, rng: random.Random) -> dict[Dimension, bool]:
    labels: dict[Dimension, bool] = {}
    for dim in ALL_DIMENSIONS:
        if dim in spec.copy_from:
            continue
        labels[dim] = rng.random() < spec.base_rate
    for dim in ALL_DIMENSIONS:
        link = spec.copy_from.get(dim)
        if link is None:
            continue
        src, flip = link
        labels[dim] = labels[src] != (rng.random() < flip)
    return labels


def _survey_value(positive: bool, rng: random.Random) -> float:
    # keeps midpoint binarization at 3.0 consistent with the planted label
    return rng.uniform(3.5, 5.0) if positive else rng.uniform(1.0, 2.5)


def generate_users(
    spec: SyntheticSpec, seed: int = 0
) -> tuple[list[UserRecord], list[SurveyResponse]]:
    rng = random.Random(seed)
    noise = [f"w{i:03d}" for i in range(spec.noise_vocab)]
    users = []
    responses = []
    for i in range(spec.n_users):
        user_id = f"u{i:04d}"
        labels = _draw_labels(spec, rng)
        n_tweets = rng.randint(*spec.tweets_per_user)
        mention_at = {j for j in range(n_tweets) if rng.random() < spec.mention_rate}
        if not mention_at:
            mention_at = {0}
        start = rng.randint(0, 365) * 24 * HOUR
        tweets = []
        for j in range(n_tweets):
            tokens = []
            if j in mention_at:
                tokens.append(spec.brand_keyword)
            for dim in ALL_DIMENSIONS:
                p_pos, p_neg = spec.signal.get(dim, (0.0, 0.0))
                if rng.random() < (p_pos if labels[dim] else p_neg):
                    tokens.append(signal_token(dim))
            for _ in range(rng.randint(*spec.noise_tokens_per_tweet)):
                tokens.append(rng.choice(noise))
            rng.shuffle(tokens)
            tweets.append(Tweet(user_id, start + j * 6 * HOUR, " ".join(tokens)))
        users.append(UserRecord(user_id, tuple(tweets), {"handle": f"@{user_id}"}))
        responses.append(
            SurveyResponse(
                user_id,
                spec.brand,
                {d: _survey_value(labels[d], rng) for d in ALL_DIMENSIONS},
            )
        )
    return users, responses


def generate_labeled(spec: SyntheticSpec, seed: int = 0) -> list[LabeledUser]:
    users, responses = generate_users(spec, seed)
    return label_users(users, responses)


def write_corpus(
    spec: SyntheticSpec, corpus_path: str, survey_path: str, seed: int = 0
) -> None:
    """Write the generated corpus in the service's input formats."""
    import csv

    users, responses = generate_users(spec, seed)
    save_users(users, corpus_path)
    with open(survey_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SURVEY_HEADER)
        for r in responses:
            writer.writerow(
                [r.user_id, r.brand] + [f"{r.values[d]:.2f}" for d in ALL_DIMENSIONS]
            )
    return None
