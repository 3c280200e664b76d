"""Tweet corpora, survey responses, and binary label construction.

Corpus files are UTF-8 line-delimited JSON, one tweet per line with fields
user_id / timestamp / text; any extra fields are treated as user profile
display fields. Survey files are CSV with one Likert value in [1, 5] per
dimension.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

MAX_TWEETS_PER_USER = 3200

TWEET_FIELDS = ("user_id", "timestamp", "text")


class CorpusError(ValueError):
    """Malformed corpus or survey input."""


class Dimension(Enum):
    """The eight predicted dimensions; declaration order is the canonical order."""

    FAVORABILITY = "favorability"
    PERSISTENCE = "persistence"
    CONFIDENCE = "confidence"
    ACCESSIBILITY = "accessibility"
    RESISTANCE = "resistance"
    BUY = "buy"
    RECOMMEND = "recommend"
    PROHIBIT = "prohibit"


ATTITUDE_DIMENSIONS = (
    Dimension.FAVORABILITY,
    Dimension.PERSISTENCE,
    Dimension.CONFIDENCE,
    Dimension.ACCESSIBILITY,
    Dimension.RESISTANCE,
)
ACTION_DIMENSIONS = (Dimension.BUY, Dimension.RECOMMEND, Dimension.PROHIBIT)
ALL_DIMENSIONS = tuple(Dimension)

_DIMENSION_BY_NAME = {d.value: d for d in Dimension}


def dimension_from_name(name: str) -> Dimension:
    try:
        return _DIMENSION_BY_NAME[name.lower()]
    except KeyError:
        raise ValueError(f"unknown dimension {name!r}") from None


@dataclass(frozen=True)
class Tweet:
    user_id: str
    timestamp: int
    text: str

    def __post_init__(self):
        if self.timestamp < 0:
            raise CorpusError(f"negative timestamp {self.timestamp} for user {self.user_id!r}")
        if self.text is None:
            raise CorpusError(f"null text for user {self.user_id!r}")


@dataclass(frozen=True)
class UserRecord:
    """A user's tweet history; tweets sorted ascending, capped at the newest 3200."""

    user_id: str
    tweets: tuple[Tweet, ...]
    profile: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for t in self.tweets:
            if t.user_id != self.user_id:
                raise CorpusError(
                    f"tweet user_id {t.user_id!r} does not match record {self.user_id!r}"
                )
        ordered = tuple(sorted(self.tweets, key=lambda t: (t.timestamp, t.text)))
        if len(ordered) > MAX_TWEETS_PER_USER:
            ordered = ordered[-MAX_TWEETS_PER_USER:]
        object.__setattr__(self, "tweets", ordered)


@dataclass(frozen=True)
class SurveyResponse:
    user_id: str
    brand: str
    values: Mapping[Dimension, float]

    def __post_init__(self):
        missing = [d.value for d in Dimension if d not in self.values]
        if missing:
            raise CorpusError(f"survey response for {self.user_id!r} missing {missing}")
        for d, v in self.values.items():
            if not 1.0 <= v <= 5.0:
                raise CorpusError(f"survey value {v} for {d.value} outside [1, 5]")


@dataclass(frozen=True)
class LabeledUser:
    record: UserRecord
    labels: Mapping[Dimension, bool]  # True = positive

    def __post_init__(self):
        missing = [d.value for d in Dimension if d not in self.labels]
        if missing:
            raise CorpusError(f"labels for {self.record.user_id!r} missing {missing}")


def load_users(path: str, fmt: str = "jsonl") -> list[UserRecord]:
    """Parse a corpus file into one UserRecord per distinct user.

    Duplicate (user_id, timestamp, text) triples are dropped silently; users
    appear in first-seen order.
    """
    if fmt != "jsonl":
        raise ValueError(f"unknown corpus format {fmt!r}")
    tweets_by_user: dict[str, dict[tuple, Tweet]] = {}
    profiles: dict[str, dict[str, str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if lineno == 1 and line.startswith("﻿"):
                raise CorpusError("line 1: byte-order mark not allowed")
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {lineno}: invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict):
                raise CorpusError(f"line {lineno}: expected an object")
            try:
                user_id, timestamp, text = (obj[k] for k in TWEET_FIELDS)
            except KeyError as exc:
                raise CorpusError(f"line {lineno}: missing field {exc.args[0]}") from None
            if not isinstance(user_id, str) or not user_id:
                raise CorpusError(f"line {lineno}: user_id must be a non-empty string")
            if isinstance(timestamp, bool) or not isinstance(timestamp, int):
                raise CorpusError(f"line {lineno}: timestamp must be an integer")
            if not isinstance(text, str):
                raise CorpusError(f"line {lineno}: text must be a string")
            try:
                tweet = Tweet(user_id, timestamp, text)
            except CorpusError as exc:
                raise CorpusError(f"line {lineno}: {exc}") from None
            bucket = tweets_by_user.setdefault(user_id, {})
            bucket[(timestamp, text)] = tweet
            extra = {k: v for k, v in obj.items() if k not in TWEET_FIELDS}
            if extra:
                prof = profiles.setdefault(user_id, {})
                for k, v in extra.items():
                    prof[k] = str(v)
    return [
        UserRecord(uid, tuple(bucket.values()), profiles.get(uid, {}))
        for uid, bucket in tweets_by_user.items()
    ]


def save_users(users: Iterable[UserRecord], path: str) -> None:
    """Write the corpus format back out; load_users() on the result round-trips."""
    with open(path, "w", encoding="utf-8") as fh:
        for user in users:
            for i, tweet in enumerate(user.tweets):
                obj: dict = {"user_id": user.user_id, "timestamp": tweet.timestamp, "text": tweet.text}
                if i == 0 and user.profile:
                    obj.update(user.profile)
                fh.write(json.dumps(obj, sort_keys=True) + "\n")


def filter_brand_mentions(
    users: Sequence[UserRecord], brand_keywords: Sequence[str]
) -> list[UserRecord]:
    """Users with at least one tweet mentioning a brand keyword (token match)."""
    from .features import tweet_mentions_brand

    if not brand_keywords:
        raise ValueError("brand_keywords must be non-empty")
    return [
        u for u in users
        if any(tweet_mentions_brand(t.text, brand_keywords) for t in u.tweets)
    ]


def aggregate_dimension(values: Sequence[float]) -> float:
    """Arithmetic mean of multi-question Likert responses for one dimension."""
    if not values:
        raise CorpusError("cannot aggregate an empty value list")
    # all-equal fast path keeps mean([v]*n) == v exact
    if min(values) == max(values):
        return float(values[0])
    return math.fsum(values) / len(values)


def binarize(value: float, midpoint: float = 3.0) -> bool:
    """Positive iff strictly above the midpoint; a tie is negative."""
    if not 1.0 <= value <= 5.0:
        raise CorpusError(f"Likert value {value} outside [1, 5]")
    return value > midpoint


SURVEY_HEADER = ["user_id", "brand"] + [d.value for d in Dimension]


def load_survey(path: str) -> list[SurveyResponse]:
    responses = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusError("survey file is empty") from None
        if header != SURVEY_HEADER:
            raise CorpusError(f"bad survey header, expected {','.join(SURVEY_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(SURVEY_HEADER):
                raise CorpusError(f"line {lineno}: expected {len(SURVEY_HEADER)} cells")
            user_id, brand = row[0], row[1]
            values = {}
            for dim, cell in zip(Dimension, row[2:]):
                try:
                    values[dim] = float(cell)
                except ValueError:
                    raise CorpusError(f"line {lineno}: non-numeric cell {cell!r}") from None
            try:
                responses.append(SurveyResponse(user_id, brand, values))
            except CorpusError as exc:
                raise CorpusError(f"line {lineno}: {exc}") from None
    return responses


def binarization_thresholds(
    responses: Sequence[SurveyResponse], mode: str = "midpoint", midpoint: float = 3.0
) -> dict[Dimension, float]:
    """Per-dimension label threshold: the fixed scale midpoint (default) or the
    per-dimension sample mean of the given responses."""
    if mode == "midpoint":
        return {d: midpoint for d in Dimension}
    if mode == "sample_mean":
        if not responses:
            raise CorpusError("sample_mean thresholds need at least one response")
        return {
            d: aggregate_dimension([r.values[d] for r in responses]) for d in Dimension
        }
    raise ValueError(f"unknown binarize mode {mode!r}")


def label_users(
    users: Sequence[UserRecord],
    responses: Sequence[SurveyResponse],
    mode: str = "midpoint",
    midpoint: float = 3.0,
) -> list[LabeledUser]:
    """Join users with survey responses and binarize; users without a response
    are dropped."""
    thresholds = binarization_thresholds(responses, mode=mode, midpoint=midpoint)
    by_user = {r.user_id: r for r in responses}
    labeled = []
    for user in users:
        resp = by_user.get(user.user_id)
        if resp is None:
            continue
        labels = {d: binarize(resp.values[d], thresholds[d]) for d in Dimension}
        labeled.append(LabeledUser(user, labels))
    return labeled
