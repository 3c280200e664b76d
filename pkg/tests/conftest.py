import pytest

from brandintent.corpus import Tweet, UserRecord
from brandintent.lexicon import Lexicon


def make_user(user_id, texts, start=1_000_000, step=86400, profile=None):
    """One UserRecord with evenly spaced tweet timestamps."""
    tweets = tuple(
        Tweet(user_id, start + i * step, text) for i, text in enumerate(texts)
    )
    return UserRecord(user_id, tweets, profile or {})


@pytest.fixture
def general():
    return Lexicon(
        {
            "good": "positive",
            "great": "positive",
            "love": "positive",
            "nice": "positive",
            "bad": "negative",
            "hate": "negative",
            "awful": "negative",
            "poor": "negative",
        }
    )
