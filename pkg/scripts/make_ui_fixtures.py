"""Record engine API responses into a fixture file for the dashboard tests.

Builds a small deterministic scored cohort, serves it through the real HTTP
app in-process, and saves each response body verbatim. The dashboard test
suite replays these from a mocked fetch, so what the UI tests assert against
is exactly what the engine returns.

Usage: python scripts/make_ui_fixtures.py [--out frontend/tests/fixtures]
"""

import argparse
import json
import os

import numpy as np
from fastapi.testclient import TestClient

from brandintent.corpus import ALL_DIMENSIONS, Dimension, Tweet
from brandintent.engine import ScoredUser
from brandintent.server import SnapshotStore, create_app

NAMES = [
    "Avery Collins", "Jordan Lee", "Sam Porter", "Dana Whitfield", "Riley Nash",
    "Casey Morgan", "Alex Duran", "", "Quinn Harper", "Morgan Ellis",
    "Jamie Fox", "Taylor Reed", "Drew Santos", "Robin Vale", "Skyler Chen",
    "Cameron Ito", "Jesse Wolfe", "Harper Lane", "Rowan Ash", "Kendall Price",
    "Emerson Cole", "Sage Winters", "Parker Hale", "Devon Marsh",
]

CITIES = ["Atlanta, GA", "Minneapolis, MN", "", "Seattle, WA", "Detroit, MI", "Boston, MA"]

TWEET_TEMPLATES = [
    "@delta flight {n} boarded right on time, smooth ride",
    "stuck at the gate again, @delta what happened to flight {n}",
    "shoutout to the @delta crew on {n}, friendliest team in a while",
    "@delta wifi on flight {n} actually worked the whole way",
    "bag made it before I did, nice one @delta",
    "@delta rebooked me in minutes after the {n} cancellation",
    "legroom on @delta flight {n} keeps shrinking I swear",
    "upgraded on @delta {n} today, cannot complain",
]

PLANTED = {
    # user index -> (favorability, persistence, buy)
    1: (0.82, 0.74, 0.81),
    3: (0.30, 0.66, 0.35),
    5: (0.77, 0.58, 0.66),
    9: (0.68, 0.52, 0.41),
    12: (0.64, 0.31, 0.72),
    14: (0.61, 0.49, 0.90),
    18: (0.93, 0.88, 0.63),
}


def build_cohort(n_users=24, seed=7):
    rng = np.random.default_rng(seed)
    cohort = []
    for i in range(n_users):
        user_id = "u%03d" % i
        scores = {d: float(rng.uniform(0.05, 0.93)) for d in ALL_DIMENSIONS}
        if i in PLANTED:
            fav, pers, buy = PLANTED[i]
            scores[Dimension.FAVORABILITY] = fav
            scores[Dimension.PERSISTENCE] = pers
            scores[Dimension.BUY] = buy
        static = {
            d: float(np.clip(p + rng.normal(0.0, 0.08), 0.01, 0.94))
            for d, p in scores.items()
        }
        if i == 7:
            profile = {}
        else:
            profile = {"name": NAMES[i % len(NAMES)]}
            if i % 3 != 0:
                profile["location"] = CITIES[i % len(CITIES)]
            if i % 4 == 0:
                profile["description"] = "frequent flyer, posts about travel"
        n_tweets = int(rng.integers(2, 6))
        tweets = []
        for j in range(n_tweets):
            ts = 1700000000 + i * 86400 + j * 5400
            text = TWEET_TEMPLATES[(i + j) % len(TWEET_TEMPLATES)].format(n=1200 + i)
            tweets.append(Tweet(user_id, ts, text))
        tweets.sort(key=lambda t: t.timestamp, reverse=True)
        cohort.append(
            ScoredUser(
                user_id=user_id,
                brand="delta",
                scores=scores,
                static_scores=static,
                profile=profile,
                relevant_tweets=tuple(tweets),
            )
        )
    return cohort


FIXTURE_PATHS = [
    "/api/v1/health",
    "/api/v1/brands/delta/distributions?mode=ica",
    "/api/v1/brands/delta/distributions?mode=independent",
    "/api/v1/brands/delta/users?mode=ica",
    "/api/v1/brands/delta/users?mode=independent",
    "/api/v1/brands/delta/users?filters=favorability:0.6:1&mode=ica",
    "/api/v1/brands/delta/users?filters=favorability:0.6:1,persistence:0.5:1&mode=ica",
    "/api/v1/brands/delta/users?filters=favorability:0.6:1,persistence:0.5:1,buy:0.6:1&mode=ica",
    "/api/v1/brands/delta/users?filters=favorability:0.4:1&mode=ica",
    "/api/v1/brands/delta/users?filters=favorability:0.95:1&mode=ica",
    "/api/v1/brands/delta/users?filters=buy:0.6:1&mode=independent",
    "/api/v1/brands/delta/users?filters=favorability:0.6:1,buy:0.6:1&mode=ica",
    "/api/v1/brands/delta/users/u001",
    "/api/v1/brands/delta/users/u003",
    "/api/v1/brands/delta/users/u007",
    "/api/v1/brands/delta/users/ghost",
    "/api/v1/brands/nope/users?mode=ica",
    "/api/v1/brands/nope/distributions?mode=ica",
]


def record(app):
    fixtures = {}
    with TestClient(app) as client:
        for path in FIXTURE_PATHS:
            resp = client.get(path)
            fixtures[path] = {"status": resp.status_code, "body": resp.json()}
    return fixtures


def check(fixtures):
    """Fail fast if the cohort does not exercise every UI scenario."""
    def ids(path):
        return [u["user_id"] for u in fixtures[path]["body"]["users"]]

    full = ids("/api/v1/brands/delta/users?mode=ica")
    one = ids("/api/v1/brands/delta/users?filters=favorability:0.6:1&mode=ica")
    two = ids(
        "/api/v1/brands/delta/users?filters=favorability:0.6:1,persistence:0.5:1&mode=ica"
    )
    three = ids(
        "/api/v1/brands/delta/users?filters=favorability:0.6:1,persistence:0.5:1,buy:0.6:1&mode=ica"
    )
    wide = ids("/api/v1/brands/delta/users?filters=favorability:0.4:1&mode=ica")
    zero = ids("/api/v1/brands/delta/users?filters=favorability:0.95:1&mode=ica")
    assert len(full) > len(one) > len(two) > len(three) >= 3, (
        len(full), len(one), len(two), len(three),
    )
    assert set(three) < set(two) < set(one) <= set(full)
    assert len(wide) > len(one)
    assert zero == []
    assert "u003" in full and "u003" not in one
    detail = fixtures["/api/v1/brands/delta/users/u003"]["body"]
    stamps = [t["timestamp"] for t in detail["relevant_tweets"]]
    assert len(stamps) >= 2 and stamps == sorted(stamps, reverse=True)
    assert fixtures["/api/v1/brands/delta/users/u007"]["body"]["profile"] == {}
    for path in FIXTURE_PATHS[-3:]:
        assert fixtures[path]["status"] == 404, path
        assert "error" in fixtures[path]["body"], path
    indep = ids("/api/v1/brands/delta/users?filters=buy:0.6:1&mode=independent")
    assert indep, "independent-mode fixture should not be empty"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="frontend/tests/fixtures")
    args = parser.parse_args()

    cohort = build_cohort()
    store = SnapshotStore()
    store.replace("delta", cohort)
    fixtures = record(create_app(store))
    check(fixtures)

    os.makedirs(args.out, exist_ok=True)
    out_path = os.path.join(args.out, "engine_responses.json")
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(fixtures, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print("wrote %d fixtures to %s" % (len(fixtures), out_path))


if __name__ == "__main__":
    main()
