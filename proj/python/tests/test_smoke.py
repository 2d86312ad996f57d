"""Smoke tests for the pmkit Python module."""

import math

import pytest

import pmkit


def test_measures():
    assert abs(pmkit.entropy([1 / 52] * 52) - math.log(52)) < 1e-12
    assert pmkit.entropy([0.0, 1.0, 0.0]) == 0.0
    p, q = [0.7, 0.2, 0.1], [0.1, 0.3, 0.6]
    assert pmkit.symmetric_kl(p, q) == pmkit.symmetric_kl(q, p)
    assert pmkit.symmetric_kl(p, p) == 0.0
    assert 0.0 <= pmkit.e_score([[0.5, 0.5], [1.0, 0.0]], normalize=True) <= 1.0
    assert pmkit.mcd([p, q, p]) > 0.0


def test_errors_carry_a_category():
    with pytest.raises(pmkit.PmkitError) as info:
        pmkit.mcd([[1.0]])
    assert info.value.category == "too-short"
    with pytest.raises(pmkit.PmkitError, match="degenerate"):
        pmkit.fit_linear([1.0, 1.0], [0.0, 1.0])


def test_calibration():
    model = pmkit.fit_linear([1.0, 2.0, 3.0], [2.0, 4.0, 6.0], measure="x")
    assert model.a == pytest.approx(2.0)
    assert model.b == pytest.approx(0.0, abs=1e-12)
    assert model.n_dev == 3
    assert pmkit.predict(model, 0.5) == pytest.approx(1.0)
    assert pmkit.spearman([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)
    assert pmkit.mean_squared_error([0.1, 0.2], [0.1, 0.4]) == pytest.approx(0.02)


def test_corpus_pipeline(tmp_path):
    path = str(tmp_path / "c.jsonl.gz")
    gamma = pmkit.generate(path, n_utterances=40, seed=3)
    assert len(gamma) == 40
    records = pmkit.read_corpus(path)
    assert len(records) == 40
    assert records[0]["id"] == "synth-000000"
    assert pmkit.validate_corpus(path, tolerance=1e-6) == []

    scores = pmkit.score_corpus(path, "entropy-dec", jobs=2)
    assert [s["id"] for s in scores] == [r["id"] for r in records]
    dev = [s for s in scores if s["dataset"] == "synth-dev"]
    model = pmkit.fit_linear([s["score"] for s in dev], [s["cer"] for s in dev], "entropy-dec")
    assert math.isfinite(model.a) and math.isfinite(model.b)


def test_models(tmp_path):
    corpus = str(tmp_path / "c.jsonl")
    pmkit.generate(corpus, n_utterances=20, seed=4, alphabet_size=8)
    ae = str(tmp_path / "ae.ckpt")
    losses = pmkit.train_ae(corpus, ae, hidden=[8, 4, 8], epochs=3)
    assert losses[-1] <= losses[0]
    assert len(pmkit.ae_scores(ae, corpus)) == 20

    rnn = str(tmp_path / "rnn.ckpt")
    pmkit.train_rnn(corpus, rnn, hidden_units=4, linear_width=4, epochs=2)
    preds = pmkit.rnn_scores(rnn, corpus, datasets=["synth-test"])
    assert len(preds) == 4
    assert all(p["score"] >= 0.0 for p in preds)
