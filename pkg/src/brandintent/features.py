"""Tokenization and the six per-user feature families.

Feature ids are namespaced: unigram:<w>, sent_pos/sent_neg (general lexicon
counts), ctx_pos/ctx_neg (general lexicon near brand mentions), dom_pos/
dom_neg (domain lexicon near brand mentions), length_of_use (days between a
user's first and last brand mention), mention_freq (brand-mentioning tweets).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Mapping, Optional, Sequence

if TYPE_CHECKING:
    from .corpus import UserRecord
    from .lexicon import DomainLexicon, Lexicon

SECONDS_PER_DAY = 86400.0

_SPLIT_RE = re.compile(r"[^a-z0-9@#']+")


def tokenize(text: str) -> list[str]:
    """Lowercase, drop URL tokens, split on anything outside [a-z0-9@#']."""
    tokens = []
    for chunk in text.lower().split():
        if chunk.startswith("http://") or chunk.startswith("https://"):
            continue
        tokens.extend(t for t in _SPLIT_RE.split(chunk) if t)
    return tokens


@dataclass(frozen=True)
class TokenizedTweet:
    tokens: tuple[str, ...]
    timestamp: int


def tokenize_user(user: "UserRecord") -> list[TokenizedTweet]:
    return [TokenizedTweet(tuple(tokenize(t.text)), t.timestamp) for t in user.tweets]


def _keyword_token_seqs(brand_keywords: Sequence[str]) -> list[tuple[str, ...]]:
    seqs = []
    for kw in brand_keywords:
        toks = tuple(tokenize(kw))
        if toks:
            seqs.append(toks)
    return seqs


def brand_token_positions(tokens: Sequence[str], brand_keywords: Sequence[str]) -> set[int]:
    """Token indices covered by a brand-keyword match (multi-token keywords
    match as a contiguous run)."""
    positions: set[int] = set()
    for seq in _keyword_token_seqs(brand_keywords):
        n = len(seq)
        for i in range(len(tokens) - n + 1):
            if tuple(tokens[i : i + n]) == seq:
                positions.update(range(i, i + n))
    return positions


def tweet_mentions_brand(text: str, brand_keywords: Sequence[str]) -> bool:
    return bool(brand_token_positions(tokenize(text), brand_keywords))


@dataclass(frozen=True)
class FeatureConfig:
    brand_keywords: tuple[str, ...]
    window: int = 3
    min_doc_freq: int = 2
    vocabulary: Optional[tuple[str, ...]] = None
    occurrence_level_frequency: bool = False

    def __post_init__(self):
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.min_doc_freq < 1:
            raise ValueError("min_doc_freq must be >= 1")


@dataclass
class FeatureVector:
    """Sparse feature map; zero values are never stored."""

    values: dict[str, float] = field(default_factory=dict)

    def get(self, feature_id: str) -> float:
        return self.values.get(feature_id, 0.0)

    def __len__(self) -> int:
        return len(self.values)


def build_vocabulary(users: Iterable["UserRecord"], min_doc_freq: int = 2) -> tuple[str, ...]:
    """Unigrams appearing in at least min_doc_freq distinct users' tweets,
    sorted. Build from training users only."""
    doc_freq: dict[str, int] = {}
    for user in users:
        seen = set()
        for tweet in user.tweets:
            seen.update(tokenize(tweet.text))
        for tok in seen:
            doc_freq[tok] = doc_freq.get(tok, 0) + 1
    return tuple(sorted(w for w, c in doc_freq.items() if c >= min_doc_freq))


def unigram_features(user: "UserRecord", vocabulary: Sequence[str]) -> dict[str, float]:
    vocab = set(vocabulary)
    counts: dict[str, float] = {}
    for tweet in user.tweets:
        for tok in tokenize(tweet.text):
            if tok in vocab:
                key = f"unigram:{tok}"
                counts[key] = counts.get(key, 0) + 1
    return counts


def lexicon_counts(user: "UserRecord", lex) -> tuple[int, int]:
    """Total positive/negative lexicon-word occurrences across all tweets."""
    pos = neg = 0
    for tweet in user.tweets:
        for tok in tokenize(tweet.text):
            p = lex.polarity(tok)
            if p == "positive":
                pos += 1
            elif p == "negative":
                neg += 1
    return pos, neg


def context_lexicon_counts(
    user: "UserRecord", lex, brand_keywords: Sequence[str], window: int
) -> tuple[int, int]:
    """Polarity-word occurrences within `window` tokens of a brand mention.

    Each occurrence counts once even when several brand mentions are in range.
    Works with the general lexicon or a domain lexicon.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    pos = neg = 0
    for tweet in user.tweets:
        tokens = tokenize(tweet.text)
        anchors = brand_token_positions(tokens, brand_keywords)
        if not anchors:
            continue
        for i, tok in enumerate(tokens):
            p = lex.polarity(tok)
            if p is None:
                continue
            if any(abs(i - a) <= window for a in anchors):
                if p == "positive":
                    pos += 1
                else:
                    neg += 1
    return pos, neg


def length_of_use(user: "UserRecord", brand_keywords: Sequence[str]) -> float:
    """Seconds between the user's oldest and latest brand mention; 0 with
    fewer than two mentions."""
    stamps = [t.timestamp for t in user.tweets if tweet_mentions_brand(t.text, brand_keywords)]
    if len(stamps) < 2:
        return 0.0
    return float(max(stamps) - min(stamps))


def mention_frequency(
    user: "UserRecord", brand_keywords: Sequence[str], occurrence_level: bool = False
) -> int:
    """How often the user mentions the brand: tweet-level by default,
    occurrence-level behind the flag."""
    if not occurrence_level:
        return sum(1 for t in user.tweets if tweet_mentions_brand(t.text, brand_keywords))
    total = 0
    for tweet in user.tweets:
        tokens = tokenize(tweet.text)
        for seq in _keyword_token_seqs(brand_keywords):
            n = len(seq)
            total += sum(1 for i in range(len(tokens) - n + 1) if tuple(tokens[i : i + n]) == seq)
    return total


def build_feature_vector(
    user: "UserRecord",
    config: FeatureConfig,
    general: "Lexicon",
    domain: "DomainLexicon",
) -> FeatureVector:
    """Concatenate all six feature families for one user."""
    if config.vocabulary is None:
        raise ValueError("FeatureConfig.vocabulary must be frozen before extraction")
    values: dict[str, float] = {}
    values.update(unigram_features(user, config.vocabulary))

    sent_pos, sent_neg = lexicon_counts(user, general)
    ctx_pos, ctx_neg = context_lexicon_counts(user, general, config.brand_keywords, config.window)
    dom_pos, dom_neg = context_lexicon_counts(user, domain, config.brand_keywords, config.window)
    days = length_of_use(user, config.brand_keywords) / SECONDS_PER_DAY
    freq = mention_frequency(user, config.brand_keywords, config.occurrence_level_frequency)

    for key, val in (
        ("sent_pos", sent_pos),
        ("sent_neg", sent_neg),
        ("ctx_pos", ctx_pos),
        ("ctx_neg", ctx_neg),
        ("dom_pos", dom_pos),
        ("dom_neg", dom_neg),
        ("length_of_use", days),
        ("mention_freq", freq),
    ):
        if val:
            values[key] = float(val)
    return FeatureVector(values)


def _format_value(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return repr(float(v))


def format_feature_vector(user_id: str, fv: FeatureVector) -> str:
    """One line of the feature dump format: user_id<TAB>id:value,... sorted by id."""
    body = ",".join(f"{k}:{_format_value(v)}" for k, v in sorted(fv.values.items()))
    return f"{user_id}\t{body}"


def parse_feature_vector(line: str) -> tuple[str, FeatureVector]:
    user_id, _, body = line.partition("\t")
    values: dict[str, float] = {}
    if body:
        for item in body.split(","):
            key, _, raw = item.rpartition(":")
            values[key] = float(raw)
    return user_id, FeatureVector(values)


def save_feature_vectors(rows: Iterable[tuple[str, FeatureVector]], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for user_id, fv in rows:
            fh.write(format_feature_vector(user_id, fv) + "\n")
