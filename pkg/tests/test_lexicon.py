import pytest

from brandintent.corpus import Tweet, UserRecord
from brandintent.lexicon import (
    DomainLexicon,
    Lexicon,
    induce_domain_lexicon,
    load_domain_lexicon,
    load_lexicon,
    load_lexicon_tsv,
    save_domain_lexicon,
    save_lexicon_tsv,
    tweet_polarity_balance,
)

from conftest import make_user


def test_load_lexicon_files(tmp_path):
    pos = tmp_path / "pos.txt"
    neg = tmp_path / "neg.txt"
    pos.write_text("; opinion words\nGood\nfine\n\nsolid\n")
    neg.write_text("bad\nbroken\n")
    lex = load_lexicon(str(pos), str(neg))
    assert lex.polarity("good") == "positive"
    assert lex.polarity("broken") == "negative"
    assert lex.polarity("meh") is None
    assert "fine" in lex and len(lex) == 5


def test_load_lexicon_drops_conflicts(tmp_path):
    (tmp_path / "pos.txt").write_text("fine\nsharp\n")
    (tmp_path / "neg.txt").write_text("sharp\ndull\n")
    with pytest.warns(UserWarning, match="sharp"):
        lex = load_lexicon(str(tmp_path / "pos.txt"), str(tmp_path / "neg.txt"))
    assert "sharp" not in lex
    assert len(lex) == 2


def test_polarity_balance(general):
    assert tweet_polarity_balance(["good", "great", "bad"], general) == 1
    assert tweet_polarity_balance(["awful", "bad", "nice"], general) == -1
    assert tweet_polarity_balance(["good", "bad"], general) == 0
    assert tweet_polarity_balance(["crew", "wifi"], general) == 0


# Small corpus whose window-1 co-occurrence counts are easy to tally by hand.
# "upgrade" rides along with positive-balance tweets 3 times, "cancelled"
# with negative ones 3 times, and "gate" appears on both sides (net +1).
INDUCTION_TEXTS = [
    "good @delta upgrade",          # +1: upgrade adjacent to @delta
    "great @delta upgrade",         # +1
    "love @delta upgrade",          # +1
    "bad @delta cancelled",         # -1: cancelled adjacent
    "awful @delta cancelled",       # -1
    "hate @delta cancelled",        # -1
    "good @delta gate",             # +1: gate
    "great @delta gate",            # +1
    "bad @delta gate",              # -1
    "good bad @delta upgrade",      # tie, skipped entirely
]


def induction_users():
    return [make_user(f"u{i}", [text]) for i, text in enumerate(INDUCTION_TEXTS)]


def test_induce_domain_lexicon_hand_oracle(general):
    lex = induce_domain_lexicon(
        induction_users(), ["@delta"], general, window=1, threshold=3.0, brand="delta"
    )
    assert lex.entries == {
        "upgrade": ("positive", 3.0),
        "cancelled": ("negative", 3.0),
    }
    assert lex.source_brand == "delta"
    assert lex.threshold_used == 3.0


def test_induction_threshold_monotone(general):
    users = induction_users()
    sizes = {}
    for threshold in (1.0, 3.0, 5.0):
        lex = induce_domain_lexicon(
            users, ["@delta"], general, window=1, threshold=threshold
        )
        sizes[threshold] = set(lex.entries)
    assert sizes[5.0] <= sizes[3.0] <= sizes[1.0]
    assert "gate" in sizes[1.0]  # net +1 passes only the lowest bar
    assert sizes[5.0] == set()


def test_induction_disjoint_from_general(general):
    lex = induce_domain_lexicon(
        induction_users(), ["@delta"], general, window=3, threshold=1.0
    )
    assert not set(lex.entries) & set(general.entries)
    assert "@delta" not in lex.entries  # anchors are never candidates


def test_induction_window_widens_candidates(general):
    users = [make_user("a", ["good shiny new @delta"]),
             make_user("b", ["great shiny old @delta"]),
             make_user("c", ["love shiny big @delta"])]
    narrow = induce_domain_lexicon(users, ["@delta"], general, window=1, threshold=3.0)
    wide = induce_domain_lexicon(users, ["@delta"], general, window=2, threshold=3.0)
    assert "shiny" not in narrow.entries
    assert wide.entries["shiny"] == ("positive", 3.0)


def test_domain_lexicon_round_trip(tmp_path, general):
    lex = induce_domain_lexicon(
        induction_users(), ["@delta"], general, window=1, threshold=1.0, brand="delta"
    )
    path = tmp_path / "domain.tsv"
    save_domain_lexicon(lex, str(path))
    loaded = load_domain_lexicon(str(path))
    assert loaded == lex


def test_general_lexicon_tsv_round_trip(tmp_path, general):
    path = tmp_path / "general.tsv"
    save_lexicon_tsv(general, str(path))
    assert load_lexicon_tsv(str(path)) == general


def test_empty_domain_lexicon():
    lex = DomainLexicon.empty()
    assert len(lex) == 0
    assert lex.polarity("anything") is None
