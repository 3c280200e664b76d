import json

import pytest

from brandintent.cli import main
from brandintent.corpus import load_users
from brandintent.engine import load_snapshot
from brandintent.synthetic import SyntheticSpec, write_corpus


@pytest.fixture
def workspace(tmp_path):
    spec = SyntheticSpec(n_users=24, tweets_per_user=(4, 8), noise_vocab=30)
    corpus = tmp_path / "corpus.jsonl"
    survey = tmp_path / "survey.csv"
    write_corpus(spec, str(corpus), str(survey), seed=13)
    pos = tmp_path / "positive.txt"
    neg = tmp_path / "negative.txt"
    pos.write_text("good\ngreat\nlove\nnice\n")
    neg.write_text("bad\nhate\nawful\npoor\n")
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"epochs": 5, "k_folds": 3}))
    return tmp_path


def run(workspace, *argv):
    args = ["--config", str(workspace / "config.json"), *argv]
    return main(args)


def test_ingest(workspace, capsys):
    out = workspace / "clean.jsonl"
    rc = run(workspace, "ingest", "--corpus", str(workspace / "corpus.jsonl"), "--out", str(out))
    assert rc == 0
    assert "wrote 24 users" in capsys.readouterr().out
    assert len(load_users(str(out))) == 24


def test_induce_lexicon(workspace, capsys):
    out = workspace / "domain.tsv"
    rc = run(
        workspace,
        "induce-lexicon",
        "--corpus", str(workspace / "corpus.jsonl"),
        "--positive-words", str(workspace / "positive.txt"),
        "--negative-words", str(workspace / "negative.txt"),
        "--out", str(out),
    )
    assert rc == 0
    assert "domain entries" in capsys.readouterr().out
    assert out.exists()


def train_args(workspace, out):
    return [
        "train",
        "--corpus", str(workspace / "corpus.jsonl"),
        "--survey", str(workspace / "survey.csv"),
        "--positive-words", str(workspace / "positive.txt"),
        "--negative-words", str(workspace / "negative.txt"),
        "--out", str(out),
    ]


def test_train_score_serve_chain(workspace, capsys):
    bundle = workspace / "bundle"
    assert run(workspace, *train_args(workspace, bundle)) == 0
    assert "trained on 24 users" in capsys.readouterr().out
    assert (bundle / "meta.json").exists()

    snapshot = workspace / "snap.jsonl"
    rc = run(
        workspace,
        "score",
        "--bundle", str(bundle),
        "--corpus", str(workspace / "corpus.jsonl"),
        "--out", str(snapshot),
    )
    assert rc == 0
    assert "scored" in capsys.readouterr().out
    cohort = load_snapshot(str(snapshot))
    assert len(cohort) == 24
    assert all(u.brand == "delta" for u in cohort)


def test_evaluate_writes_report(workspace, capsys, tmp_path):
    report = tmp_path / "report.txt"
    rc = run(
        workspace,
        "evaluate",
        "--corpus", str(workspace / "corpus.jsonl"),
        "--survey", str(workspace / "survey.csv"),
        "--positive-words", str(workspace / "positive.txt"),
        "--negative-words", str(workspace / "negative.txt"),
        "--mode", "independent",
        "--report", str(report),
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert report.read_text() == out
    assert "dimension" in out


def test_evaluate_both_modes(workspace, capsys):
    rc = run(
        workspace,
        "evaluate",
        "--corpus", str(workspace / "corpus.jsonl"),
        "--survey", str(workspace / "survey.csv"),
        "--positive-words", str(workspace / "positive.txt"),
        "--negative-words", str(workspace / "negative.txt"),
        "--mode", "both",
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "independent" in out and "ica" in out


def test_seed_override_changes_folds(workspace, capsys):
    base = [
        "evaluate",
        "--corpus", str(workspace / "corpus.jsonl"),
        "--survey", str(workspace / "survey.csv"),
        "--positive-words", str(workspace / "positive.txt"),
        "--negative-words", str(workspace / "negative.txt"),
        "--mode", "independent",
    ]
    assert run(workspace, *base) == 0
    first = capsys.readouterr().out
    assert run(workspace, *base) == 0
    assert capsys.readouterr().out == first  # same seed, same bytes
    assert main(["--config", str(workspace / "config.json"), "--seed", "9", *base]) == 0
    assert capsys.readouterr().out != first


def test_missing_file_exits_2(workspace, capsys):
    out = str(workspace / "x.jsonl")
    rc = run(workspace, "ingest", "--corpus", str(workspace / "nope.jsonl"), "--out", out)
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_bad_config_exits_2(workspace, capsys):
    bad = workspace / "bad.json"
    bad.write_text(json.dumps({"epochs": -1}))
    out = str(workspace / "x.jsonl")
    rc = main(
        ["--config", str(bad), "ingest", "--corpus", str(workspace / "corpus.jsonl"), "--out", out]
    )
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_config_key_exits_2(workspace, capsys):
    bad = workspace / "bad.json"
    bad.write_text(json.dumps({"no_such_option": 1}))
    out = str(workspace / "x.jsonl")
    rc = main(
        ["--config", str(bad), "ingest", "--corpus", str(workspace / "corpus.jsonl"), "--out", out]
    )
    assert rc == 2


def test_score_with_missing_bundle_exits_2(workspace, capsys):
    rc = run(
        workspace,
        "score",
        "--bundle", str(workspace / "nobundle"),
        "--corpus", str(workspace / "corpus.jsonl"),
        "--out", str(workspace / "snap.jsonl"),
    )
    assert rc == 2


def test_mismatched_survey_exits_2(workspace, capsys):
    lonely = workspace / "lonely.csv"
    lonely.write_text(
        "user_id,brand,favorability,persistence,confidence,accessibility,"
        "resistance,buy,recommend,prohibit\n"
        "ghost,delta,4,4,4,4,4,4,4,4\n"
    )
    rc = run(
        workspace,
        "train",
        "--corpus", str(workspace / "corpus.jsonl"),
        "--survey", str(lonely),
        "--positive-words", str(workspace / "positive.txt"),
        "--negative-words", str(workspace / "negative.txt"),
        "--out", str(workspace / "bundle2"),
    )
    assert rc == 2
    assert "no users matched" in capsys.readouterr().err
