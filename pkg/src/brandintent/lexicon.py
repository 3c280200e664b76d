"""General polarity lexicons and brand-domain lexicon induction.

Lexicon files hold one lowercase word per line; lines starting with ';' are
comments (the format of the public opinion-lexicon distribution). The domain
lexicon is induced from co-occurrence counts between candidate words and the
brand keywords, scored by the polarity balance of the surrounding tweet.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping, Optional, Sequence

if TYPE_CHECKING:
    from .corpus import UserRecord

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class Lexicon:
    entries: Mapping[str, str]  # word -> POSITIVE | NEGATIVE

    def polarity(self, word: str) -> Optional[str]:
        return self.entries.get(word)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries


@dataclass(frozen=True)
class DomainLexicon:
    entries: Mapping[str, tuple[str, float]]  # word -> (polarity, score)
    source_brand: str
    threshold_used: float

    def polarity(self, word: str) -> Optional[str]:
        entry = self.entries.get(word)
        return entry[0] if entry else None

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    @classmethod
    def empty(cls, brand: str = "", threshold: float = 0.0) -> "DomainLexicon":
        return cls({}, brand, threshold)


def _read_word_file(path: str) -> list[str]:
    words = []
    with open(path, encoding="utf-8", errors="replace") as fh:
        for line in fh:
            line = line.strip().lower()
            if not line or line.startswith(";"):
                continue
            words.append(line)
    return words


def load_lexicon(positive_path: str, negative_path: str) -> Lexicon:
    """Merge positive and negative word files; a word listed in both is dropped."""
    pos = _read_word_file(positive_path)
    neg = _read_word_file(negative_path)
    conflicts = set(pos) & set(neg)
    if conflicts:
        sample = ", ".join(sorted(conflicts)[:5])
        warnings.warn(f"{len(conflicts)} word(s) in both polarity files dropped: {sample}")
    entries = {}
    for w in pos:
        if w not in conflicts:
            entries[w] = POSITIVE
    for w in neg:
        if w not in conflicts:
            entries[w] = NEGATIVE
    return Lexicon(entries)


def tweet_polarity_balance(tokens: Sequence[str], general: Lexicon) -> int:
    """Sign of the tweet's general-lexicon balance: +1 more positive tokens,
    -1 more negative, 0 balanced."""
    pos = neg = 0
    for tok in tokens:
        p = general.polarity(tok)
        if p == POSITIVE:
            pos += 1
        elif p == NEGATIVE:
            neg += 1
    if pos > neg:
        return 1
    if neg > pos:
        return -1
    return 0


def induce_domain_lexicon(
    training_users: Sequence["UserRecord"],
    brand_keywords: Sequence[str],
    general: Lexicon,
    window: int = 3,
    threshold: float = 3.0,
    brand: str = "",
) -> DomainLexicon:
    """Induce the brand-specific polarity lexicon from training users' tweets.

    A candidate token (not in the general lexicon, not a brand keyword) gets a
    positive co-occurrence point for each occurrence within `window` tokens of
    a brand keyword in a positive-balance tweet, a negative point in a
    negative-balance tweet. It enters the lexicon when one side beats the
    other by at least `threshold`.
    """
    from .features import brand_token_positions, tokenize

    if window < 1:
        raise ValueError("window must be >= 1")
    if threshold <= 0:
        raise ValueError("threshold must be > 0")
    pos_score: dict[str, int] = {}
    neg_score: dict[str, int] = {}
    seen_order: dict[str, None] = {}
    for user in training_users:
        for tweet in user.tweets:
            tokens = tokenize(tweet.text)
            anchors = brand_token_positions(tokens, brand_keywords)
            if not anchors:
                continue
            balance = tweet_polarity_balance(tokens, general)
            if balance == 0:
                continue
            scores = pos_score if balance > 0 else neg_score
            for i, tok in enumerate(tokens):
                if i in anchors or tok in general:
                    continue
                if any(abs(i - a) <= window for a in anchors):
                    scores[tok] = scores.get(tok, 0) + 1
                    seen_order.setdefault(tok, None)
    entries: dict[str, tuple[str, float]] = {}
    for tok in seen_order:
        diff = pos_score.get(tok, 0) - neg_score.get(tok, 0)
        if diff >= threshold:
            entries[tok] = (POSITIVE, float(diff))
        elif -diff >= threshold:
            entries[tok] = (NEGATIVE, float(-diff))
    if not brand and brand_keywords:
        brand = brand_keywords[0].lstrip("@#")
    return DomainLexicon(entries, brand, float(threshold))


def save_domain_lexicon(lex: DomainLexicon, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"; brand={lex.source_brand}\n")
        fh.write(f"; threshold={lex.threshold_used!r}\n")
        for word in sorted(lex.entries):
            polarity, score = lex.entries[word]
            fh.write(f"{word}\t{polarity}\t{score!r}\n")


def load_domain_lexicon(path: str) -> DomainLexicon:
    brand = ""
    threshold = 0.0
    entries: dict[str, tuple[str, float]] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith(";"):
                body = line[1:].strip()
                if body.startswith("brand="):
                    brand = body[len("brand="):]
                elif body.startswith("threshold="):
                    threshold = float(body[len("threshold="):])
                continue
            word, polarity, score = line.split("\t")
            entries[word] = (polarity, float(score))
    return DomainLexicon(entries, brand, threshold)


def save_lexicon_tsv(lex: Lexicon, path: str) -> None:
    """General lexicon as word<TAB>polarity lines (bundle serialization)."""
    with open(path, "w", encoding="utf-8") as fh:
        for word in sorted(lex.entries):
            fh.write(f"{word}\t{lex.entries[word]}\n")


def load_lexicon_tsv(path: str) -> Lexicon:
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            word, polarity = line.split("\t")
            entries[word] = polarity
    return Lexicon(entries)
