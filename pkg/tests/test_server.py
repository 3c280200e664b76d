import random

import pytest
from fastapi.testclient import TestClient

from brandintent.corpus import ALL_DIMENSIONS, Dimension, Tweet
from brandintent.engine import FilterSpec, ScoredUser, distribution, filter_users
from brandintent.server import SnapshotStore, create_app

FAV = Dimension.FAVORABILITY
BUY = Dimension.BUY


def scored(user_id, rng):
    scores = {d: rng.random() for d in ALL_DIMENSIONS}
    static = {d: rng.random() for d in ALL_DIMENSIONS}
    return ScoredUser(
        user_id=user_id,
        brand="delta",
        scores=scores,
        static_scores=static,
        profile={"handle": f"@{user_id}"},
        relevant_tweets=(
            Tweet(user_id, 200, "@delta again"),
            Tweet(user_id, 100, "@delta first"),
        ),
    )


@pytest.fixture
def cohort():
    rng = random.Random(42)
    return [scored(f"u{i:03d}", rng) for i in range(40)]


@pytest.fixture
def client(cohort):
    store = SnapshotStore()
    store.replace("delta", cohort)
    return TestClient(create_app(store))


def test_health(client):
    resp = client.get("/api/v1/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok", "brands": ["delta"]}


def test_distributions_match_engine(client, cohort):
    resp = client.get("/api/v1/brands/delta/distributions")
    assert resp.status_code == 200
    body = resp.json()
    assert body["brand"] == "delta"
    assert body["mode"] == "ica"
    assert body["users"] == len(cohort)
    assert set(body["distributions"]) == {d.value for d in ALL_DIMENSIONS}
    for d in ALL_DIMENSIONS:
        h = distribution(cohort, d, bins=5, mode="ica")
        entry = body["distributions"][d.value]
        assert entry["counts"] == list(h.counts)
        assert entry["bin_edges"] == list(h.bin_edges)
        assert sum(entry["counts"]) == len(cohort)


def test_distributions_custom_bins_and_mode(client, cohort):
    resp = client.get(
        "/api/v1/brands/delta/distributions", params={"bins": 10, "mode": "independent"}
    )
    body = resp.json()
    assert body["bins"] == 10
    expected = distribution(cohort, FAV, bins=10, mode="independent")
    assert body["distributions"]["favorability"]["counts"] == list(expected.counts)


def test_distributions_errors(client):
    resp = client.get("/api/v1/brands/acme/distributions")
    assert resp.status_code == 404
    assert "error" in resp.json()
    resp = client.get("/api/v1/brands/delta/distributions", params={"mode": "magic"})
    assert resp.status_code == 400
    assert "error" in resp.json()
    resp = client.get("/api/v1/brands/delta/distributions", params={"bins": 0})
    assert resp.status_code == 400
    resp = client.get("/api/v1/brands/delta/distributions", params={"bins": "many"})
    assert resp.status_code == 400
    assert "error" in resp.json()


def test_users_listing_matches_filter_users(client, cohort):
    query = "favorability:0.6:1,buy:0.6:1"
    resp = client.get("/api/v1/brands/delta/users", params={"filters": query})
    assert resp.status_code == 200
    body = resp.json()
    expected = filter_users(
        cohort, FilterSpec(((FAV, 0.6, 1.0), (BUY, 0.6, 1.0))), mode="ica"
    )
    assert body["total"] == len(expected)
    assert [u["user_id"] for u in body["users"]] == [u.user_id for u in expected]
    for row, su in zip(body["users"], expected):
        assert row["scores"]["favorability"] == su.scores[FAV]
        assert row["n_relevant_tweets"] == 2
        assert row["profile"] == {"handle": f"@{su.user_id}"}


def test_users_mode_switch_changes_scores(client, cohort):
    ica = client.get("/api/v1/brands/delta/users").json()
    ind = client.get("/api/v1/brands/delta/users", params={"mode": "independent"}).json()
    assert ica["total"] == ind["total"] == len(cohort)
    u0 = cohort[0]
    assert ica["users"][0]["scores"]["favorability"] == u0.scores[FAV]
    assert ind["users"][0]["scores"]["favorability"] == u0.static_scores[FAV]


def test_users_limit(client, cohort):
    resp = client.get("/api/v1/brands/delta/users", params={"limit": 3})
    body = resp.json()
    assert body["total"] == len(cohort)
    assert len(body["users"]) == 3
    assert client.get(
        "/api/v1/brands/delta/users", params={"limit": -1}
    ).status_code == 400


def test_users_bad_filters(client):
    resp = client.get("/api/v1/brands/delta/users", params={"filters": "favorability:x:y"})
    assert resp.status_code == 400
    assert "error" in resp.json()
    resp = client.get("/api/v1/brands/delta/users", params={"filters": "shoes:0:1"})
    assert resp.status_code == 400


def test_user_detail_endpoint(client, cohort):
    target = cohort[7]
    resp = client.get(f"/api/v1/brands/delta/users/{target.user_id}")
    assert resp.status_code == 200
    body = resp.json()
    assert body["user_id"] == target.user_id
    assert body["scores"]["buy"] == target.scores[BUY]
    assert body["static_scores"]["buy"] == target.static_scores[BUY]
    texts = [t["text"] for t in body["relevant_tweets"]]
    assert texts == ["@delta again", "@delta first"]  # newest first

    resp = client.get("/api/v1/brands/delta/users/nobody")
    assert resp.status_code == 404
    assert "error" in resp.json()


def test_snapshot_replacement_is_visible(cohort):
    store = SnapshotStore()
    store.replace("delta", cohort[:5])
    client = TestClient(create_app(store))
    assert client.get("/api/v1/brands/delta/distributions").json()["users"] == 5
    store.replace("delta", cohort)
    assert client.get("/api/v1/brands/delta/distributions").json()["users"] == len(cohort)
    store.replace("acme", cohort[:3])
    assert client.get("/api/v1/health").json()["brands"] == ["acme", "delta"]


def test_static_mount(tmp_path, cohort):
    (tmp_path / "index.html").write_text("<!doctype html><p>dash</p>")
    store = SnapshotStore()
    store.replace("delta", cohort[:2])
    client = TestClient(create_app(store, static_dir=str(tmp_path)))
    resp = client.get("/ui/")
    assert resp.status_code == 200
    assert "dash" in resp.text
