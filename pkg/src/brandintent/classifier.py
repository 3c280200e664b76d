"""Calibrated binary linear classifier over sparse feature vectors.

L2-regularized logistic regression trained by deterministic mini-batch
gradient descent (seeded shuffling, 1/sqrt(t) step decay, per-epoch backoff
so the recorded training loss never increases). Features are standardized
with train-fold statistics; zero-variance features are dropped. Class
imbalance is handled with inverse-class-frequency example weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .features import FeatureVector

FORMAT_TAG = "brandintent-model v1"


class SingleClassError(ValueError):
    """Training data contains only one class."""


@dataclass(frozen=True)
class Hyperparams:
    l2_lambda: float = 1e-3
    learning_rate: float = 0.1
    epochs: int = 50
    batch_size: int = 32
    seed: int = 0
    class_weighting: bool = True

    def __post_init__(self):
        if self.l2_lambda < 0:
            raise ValueError("l2_lambda must be >= 0")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")


@dataclass
class TrainingSet:
    rows: list[tuple[FeatureVector, bool]]
    dimension: object = ""  # Dimension or plain label, used in error messages


@dataclass
class ClassifierModel:
    weights: dict[str, float]
    bias: float
    scaler: dict[str, tuple[float, float]]  # feature id -> (mean, stddev)
    hyperparams: Hyperparams
    epoch_losses: list[float] = field(default_factory=list, repr=False)

    @property
    def feature_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.scaler))


def sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.clip(z, -30.0, 30.0)))


def logistic_loss_and_gradient(
    w: np.ndarray,
    b: float,
    X: np.ndarray,
    y: np.ndarray,
    sample_weights: np.ndarray,
    l2_lambda: float,
) -> tuple[float, np.ndarray, float]:
    """Weighted-mean logistic loss with L2 penalty on the weights (bias
    unpenalized) and its analytic gradient."""
    if len(y) == 0:
        raise ValueError("empty batch")
    p = sigmoid(X @ w + b)
    eps = 1e-12
    per_row = -(y * np.log(p + eps) + (1.0 - y) * np.log(1.0 - p + eps))
    wsum = float(sample_weights.sum())
    loss = float(np.dot(sample_weights, per_row) / wsum + 0.5 * l2_lambda * np.dot(w, w))
    resid = sample_weights * (p - y)
    grad_w = X.T @ resid / wsum + l2_lambda * w
    grad_b = float(resid.sum() / wsum)
    return loss, grad_w, grad_b


def _design_matrix(rows: Sequence[tuple[FeatureVector, bool]], feature_ids: Sequence[str]):
    index = {f: j for j, f in enumerate(feature_ids)}
    X = np.zeros((len(rows), len(feature_ids)))
    y = np.zeros(len(rows))
    for i, (fv, label) in enumerate(rows):
        for f, v in fv.values.items():
            j = index.get(f)
            if j is not None:
                X[i, j] = v
        y[i] = 1.0 if label else 0.0
    return X, y


def train(data: TrainingSet, hyperparams: Hyperparams = Hyperparams()) -> ClassifierModel:
    if not data.rows:
        raise ValueError("empty training set")
    labels = {bool(label) for _, label in data.rows}
    if len(labels) < 2:
        name = getattr(data.dimension, "value", data.dimension)
        raise SingleClassError(f"single-class training data for dimension {name!r}")

    all_ids = sorted({f for fv, _ in data.rows for f in fv.values})
    X_raw, y = _design_matrix(data.rows, all_ids)
    if not np.isfinite(X_raw).all():
        raise ValueError("non-finite feature value in training data")

    mean = X_raw.mean(axis=0)
    std = X_raw.std(axis=0)
    keep = std > 0.0
    feature_ids = [f for f, k in zip(all_ids, keep) if k]
    mean, std = mean[keep], std[keep]
    X = (X_raw[:, keep] - mean) / std if feature_ids else np.zeros((len(y), 0))

    n = len(y)
    if hyperparams.class_weighting:
        n_pos = float(y.sum())
        n_neg = float(n - n_pos)
        sw = np.where(y > 0.5, n / (2.0 * n_pos), n / (2.0 * n_neg))
    else:
        sw = np.ones(n)

    rng = np.random.default_rng(hyperparams.seed)
    w = np.zeros(X.shape[1])
    b = 0.0
    lam = hyperparams.l2_lambda
    step = 0
    scale = 1.0
    prev_loss, _, _ = logistic_loss_and_gradient(w, b, X, y, sw, lam)
    epoch_losses: list[float] = []
    for _ in range(hyperparams.epochs):
        order = rng.permutation(n)
        w_before, b_before = w.copy(), b
        for start in range(0, n, hyperparams.batch_size):
            batch = order[start : start + hyperparams.batch_size]
            step += 1
            lr = hyperparams.learning_rate * scale / math.sqrt(step)
            _, gw, gb = logistic_loss_and_gradient(w, b, X[batch], y[batch], sw[batch], lam)
            w -= lr * gw
            b -= lr * gb
        loss, _, _ = logistic_loss_and_gradient(w, b, X, y, sw, lam)
        if loss > prev_loss + 1e-12 * max(1.0, abs(prev_loss)):
            # overshoot: discard the epoch and shrink subsequent steps
            w, b = w_before, b_before
            scale *= 0.5
            loss = prev_loss
        prev_loss = loss
        epoch_losses.append(loss)

    return ClassifierModel(
        weights={f: float(wj) for f, wj in zip(feature_ids, w)},
        bias=float(b),
        scaler={f: (float(m), float(s)) for f, m, s in zip(feature_ids, mean, std)},
        hyperparams=hyperparams,
        epoch_losses=epoch_losses,
    )


def decision_value(model: ClassifierModel, x: FeatureVector) -> float:
    """The linear score w . x_scaled + b; feature ids unseen at train time are
    ignored, features absent from x are treated as raw zero."""
    z = model.bias
    for f, (m, s) in model.scaler.items():
        z += model.weights[f] * ((x.values.get(f, 0.0) - m) / s)
    return z


def predict_proba(model: ClassifierModel, x: FeatureVector) -> float:
    return float(sigmoid(decision_value(model, x)))


def training_accuracy(model: ClassifierModel, data: TrainingSet) -> float:
    hits = sum(
        1
        for fv, label in data.rows
        if (predict_proba(model, fv) >= 0.5) == bool(label)
    )
    return hits / len(data.rows)


def serialize_model(model: ClassifierModel) -> str:
    hp = model.hyperparams
    lines = [
        FORMAT_TAG,
        f"l2_lambda={hp.l2_lambda!r}",
        f"learning_rate={hp.learning_rate!r}",
        f"epochs={hp.epochs}",
        f"batch_size={hp.batch_size}",
        f"seed={hp.seed}",
        f"class_weighting={int(hp.class_weighting)}",
        f"bias={model.bias!r}",
        f"scaler={len(model.scaler)}",
    ]
    for f in sorted(model.scaler):
        m, s = model.scaler[f]
        lines.append(f"{f}\t{m!r}\t{s!r}")
    lines.append(f"weights={len(model.weights)}")
    for f in sorted(model.weights):
        lines.append(f"{f}\t{model.weights[f]!r}")
    return "\n".join(lines) + "\n"


def deserialize_model(text: str) -> ClassifierModel:
    lines = text.splitlines()
    if not lines or lines[0] != FORMAT_TAG:
        raise ValueError("not a serialized model (bad format tag)")

    def kv(line: str, key: str) -> str:
        prefix = key + "="
        if not line.startswith(prefix):
            raise ValueError(f"expected {key!r} line, got {line!r}")
        return line[len(prefix):]

    hp = Hyperparams(
        l2_lambda=float(kv(lines[1], "l2_lambda")),
        learning_rate=float(kv(lines[2], "learning_rate")),
        epochs=int(kv(lines[3], "epochs")),
        batch_size=int(kv(lines[4], "batch_size")),
        seed=int(kv(lines[5], "seed")),
        class_weighting=bool(int(kv(lines[6], "class_weighting"))),
    )
    bias = float(kv(lines[7], "bias"))
    n_scaler = int(kv(lines[8], "scaler"))
    pos = 9
    scaler = {}
    for line in lines[pos : pos + n_scaler]:
        f, m, s = line.split("\t")
        scaler[f] = (float(m), float(s))
    pos += n_scaler
    n_weights = int(kv(lines[pos], "weights"))
    pos += 1
    weights = {}
    for line in lines[pos : pos + n_weights]:
        f, wv = line.split("\t")
        weights[f] = float(wv)
    return ClassifierModel(weights=weights, bias=bias, scaler=scaler, hyperparams=hp)


def save_model(model: ClassifierModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_model(model))


def load_model(path: str) -> ClassifierModel:
    with open(path, encoding="utf-8") as fh:
        return deserialize_model(fh.read())
