"""Cohort scoring and the query primitives behind the HTTP service.

A scored cohort is immutable once built: distributions, range filters and
user detail all read from it, so identical queries return identical answers
until a new cohort replaces it. Snapshots round-trip through a JSONL file so
a service restart does not rescore.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from .corpus import ALL_DIMENSIONS, Dimension, Tweet, UserRecord, dimension_from_name
from .features import tweet_mentions_brand
from .pipeline import Pipeline


@dataclass(frozen=True)
class ScoredUser:
    user_id: str
    brand: str
    scores: Mapping[Dimension, float]  # collective (ICA-refined) probabilities
    static_scores: Mapping[Dimension, float]  # f_static, for mode=independent
    profile: Mapping[str, str]
    relevant_tweets: tuple[Tweet, ...]  # newest first

    def __post_init__(self):
        for name, table in (("scores", self.scores), ("static_scores", self.static_scores)):
            missing = [d.value for d in ALL_DIMENSIONS if d not in table]
            if missing:
                raise ValueError(f"{name} missing dimensions: {missing}")
            for d, p in table.items():
                if not 0.0 <= p <= 1.0:
                    raise ValueError(f"{name}[{d.value}] = {p} outside [0, 1]")

    def scores_for(self, mode: str) -> Mapping[Dimension, float]:
        if mode == "ica":
            return self.scores
        if mode == "independent":
            return self.static_scores
        raise ValueError(f"unknown mode {mode!r}")


def score_cohort(
    users: Sequence[UserRecord], brand: str, pipeline: Pipeline
) -> list[ScoredUser]:
    """Score every user with at least one brand-mention tweet; users without
    one are dropped, an empty result is not an error."""
    if pipeline.skipped:
        names = ", ".join(d.value for d in pipeline.skipped)
        raise ValueError(f"bundle cannot score all dimensions (missing: {names})")
    keywords = pipeline.config.brand_keywords
    out = []
    for user in users:
        relevant = tuple(
            sorted(
                (t for t in user.tweets if tweet_mentions_brand(t.text, keywords)),
                key=lambda t: (t.timestamp, t.text),
                reverse=True,
            )
        )
        if not relevant:
            continue
        static, assignment = pipeline.score_user(user)
        out.append(
            ScoredUser(
                user_id=user.user_id,
                brand=brand,
                scores=dict(assignment.probs),
                static_scores=dict(static),
                profile=dict(user.profile),
                relevant_tweets=relevant,
            )
        )
    return out


@dataclass(frozen=True)
class Histogram:
    dimension: Dimension
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.bin_edges) != len(self.counts) + 1:
            raise ValueError("bin_edges must have one more entry than counts")


def bin_index(score: float, bins: int) -> int:
    """Equal bins over [0,1]; every bin is left-closed, the last one is also
    right-closed so 1.0 lands in it."""
    if not 0.0 <= score <= 1.0:
        raise ValueError(f"score {score} outside [0, 1]")
    return min(int(score * bins), bins - 1)


def distribution(
    cohort: Sequence[ScoredUser], dimension: Dimension, bins: int = 5, mode: str = "ica"
) -> Histogram:
    if bins < 1:
        raise ValueError("bins must be >= 1")
    counts = [0] * bins
    for user in cohort:
        counts[bin_index(user.scores_for(mode)[dimension], bins)] += 1
    edges = tuple(i / bins for i in range(bins + 1))
    return Histogram(dimension=dimension, bin_edges=edges, counts=tuple(counts))


def distributions(
    cohort: Sequence[ScoredUser], bins: int = 5, mode: str = "ica"
) -> dict[Dimension, Histogram]:
    return {d: distribution(cohort, d, bins, mode) for d in ALL_DIMENSIONS}


@dataclass(frozen=True)
class FilterSpec:
    ranges: tuple[tuple[Dimension, float, float], ...]

    def __post_init__(self):
        seen = set()
        for dim, lo, hi in self.ranges:
            if dim in seen:
                raise ValueError(f"duplicate predicate for {dim.value}")
            seen.add(dim)
            if not 0.0 <= lo <= hi <= 1.0:
                raise ValueError(f"bad range [{lo}, {hi}] for {dim.value}")

    def matches(self, scores: Mapping[Dimension, float]) -> bool:
        return all(lo <= scores.get(dim, -1.0) <= hi for dim, lo, hi in self.ranges)

    def to_query(self) -> str:
        return ",".join(f"{d.value}:{lo:g}:{hi:g}" for d, lo, hi in self.ranges)


def parse_filter_spec(raw: str) -> FilterSpec:
    """Parse the `filters=` query value: dim:lo:hi pairs joined by commas.
    An empty string means no predicates."""
    ranges = []
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        parts = item.split(":")
        if len(parts) != 3:
            raise ValueError(f"bad filter {item!r}, expected dim:lo:hi")
        name, lo_raw, hi_raw = parts
        dim = dimension_from_name(name)
        try:
            lo, hi = float(lo_raw), float(hi_raw)
        except ValueError:
            raise ValueError(f"non-numeric bound in filter {item!r}") from None
        ranges.append((dim, lo, hi))
    return FilterSpec(tuple(ranges))


def filter_users(
    cohort: Sequence[ScoredUser], spec: FilterSpec, mode: str = "ica"
) -> list[ScoredUser]:
    """Conjunction of inclusive range tests; cohort order preserved."""
    return [u for u in cohort if spec.matches(u.scores_for(mode))]


def user_detail(cohort: Sequence[ScoredUser], user_id: str) -> ScoredUser:
    for user in cohort:
        if user.user_id == user_id:
            return user
    raise LookupError(f"unknown user {user_id!r}")


def _scores_to_json(table: Mapping[Dimension, float]) -> dict[str, float]:
    return {d.value: table[d] for d in ALL_DIMENSIONS}


def _scores_from_json(obj: Mapping[str, float]) -> dict[Dimension, float]:
    return {dimension_from_name(name): float(v) for name, v in obj.items()}


def scored_user_to_dict(user: ScoredUser) -> dict:
    return {
        "user_id": user.user_id,
        "brand": user.brand,
        "scores": _scores_to_json(user.scores),
        "static_scores": _scores_to_json(user.static_scores),
        "profile": dict(user.profile),
        "relevant_tweets": [
            {"timestamp": t.timestamp, "text": t.text} for t in user.relevant_tweets
        ],
    }


def scored_user_from_dict(obj: Mapping) -> ScoredUser:
    return ScoredUser(
        user_id=obj["user_id"],
        brand=obj["brand"],
        scores=_scores_from_json(obj["scores"]),
        static_scores=_scores_from_json(obj["static_scores"]),
        profile={k: str(v) for k, v in obj.get("profile", {}).items()},
        relevant_tweets=tuple(
            Tweet(obj["user_id"], t["timestamp"], t["text"])
            for t in obj.get("relevant_tweets", [])
        ),
    )


def save_snapshot(cohort: Sequence[ScoredUser], path: str) -> None:
    """One scored user per line; loading restores the cohort bit-for-bit."""
    with open(path, "w", encoding="utf-8") as fh:
        for user in cohort:
            fh.write(json.dumps(scored_user_to_dict(user), sort_keys=True) + "\n")


def load_snapshot(path: str) -> list[ScoredUser]:
    cohort = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                cohort.append(scored_user_from_dict(json.loads(line)))
            except (KeyError, ValueError) as exc:
                raise ValueError(f"snapshot line {lineno}: {exc}") from None
    return cohort
