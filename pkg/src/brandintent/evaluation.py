"""Cross-validated evaluation of independent vs collective scoring.

Metrics are computed from scratch here (no sklearn) so the test suite can
check them against brute-force oracles. AUC keeps exact integer pair counts
until one final division, which makes the complement identity hold at the
rational level.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence, TypeVar

from .collective import ica_infer, static_probabilities
from .config import PipelineConfig
from .corpus import ALL_DIMENSIONS, Dimension, LabeledUser
from .lexicon import Lexicon
from .pipeline import Pipeline, fit_pipeline

T = TypeVar("T")

MODES = ("independent", "ica")


def kfold_split(items: Sequence[T], k: int, seed: int = 0) -> list[list[T]]:
    """Seeded shuffle, then round-robin assignment; folds differ in size by at
    most one and every item lands in exactly one fold."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if len(items) < k:
        raise ValueError(f"cannot split {len(items)} items into {k} folds")
    indices = list(range(len(items)))
    random.Random(seed).shuffle(indices)
    folds: list[list[T]] = [[] for _ in range(k)]
    for pos, idx in enumerate(indices):
        folds[pos % k].append(items[idx])
    return folds


def precision_recall_f1(
    y_true: Sequence[bool], y_pred: Sequence[bool]
) -> tuple[float, float, float]:
    """P, R, F1 for the positive class; any zero denominator yields 0.0."""
    if len(y_true) != len(y_pred):
        raise ValueError("length mismatch")
    tp = sum(1 for t, p in zip(y_true, y_pred) if t and p)
    fp = sum(1 for t, p in zip(y_true, y_pred) if not t and p)
    fn = sum(1 for t, p in zip(y_true, y_pred) if t and not p)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def auc_pair_counts(y_true: Sequence[bool], scores: Sequence[float]) -> tuple[int, int]:
    """Mann-Whitney pair counts as exact integers.

    Returns (num2x, den2x) where num2x = 2*concordant + tied and
    den2x = 2 * n_pos * n_neg, so AUC = num2x / den2x.
    """
    if len(y_true) != len(scores):
        raise ValueError("length mismatch")
    n_pos = sum(1 for t in y_true if t)
    n_neg = len(y_true) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("roc_auc needs at least one positive and one negative")
    ranked = sorted(zip(scores, y_true))
    concordant = 0
    tied = 0
    neg_below = 0
    i = 0
    while i < len(ranked):
        j = i
        group_pos = 0
        group_neg = 0
        while j < len(ranked) and ranked[j][0] == ranked[i][0]:
            if ranked[j][1]:
                group_pos += 1
            else:
                group_neg += 1
            j += 1
        concordant += group_pos * neg_below
        tied += group_pos * group_neg
        neg_below += group_neg
        i = j
    return 2 * concordant + tied, 2 * n_pos * n_neg


def roc_auc(y_true: Sequence[bool], scores: Sequence[float]) -> float:
    num2x, den2x = auc_pair_counts(y_true, scores)
    return num2x / den2x


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    if len(xs) != len(ys):
        raise ValueError("length mismatch")
    n = len(xs)
    if n < 2:
        raise ValueError("pearson needs at least two points")
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    syy = math.fsum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        raise ValueError("pearson undefined for a constant sequence")
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)


@dataclass
class DimensionMetrics:
    dimension: Dimension
    n: int
    n_pos: int
    precision: float
    recall: float
    f1: float
    auc: float
    accuracy: float


@dataclass
class EvaluationResult:
    mode: str
    config: PipelineConfig
    metrics: dict[Dimension, DimensionMetrics]
    # pooled per-dimension rows: (user_id, true label, score)
    scores: dict[Dimension, list[tuple[str, bool, float]]]
    fold_pipelines: list[Pipeline]
    skipped_folds: dict[Dimension, list[int]] = field(default_factory=dict)

    @property
    def n_users(self) -> int:
        return len({uid for rows in self.scores.values() for uid, _, _ in rows})


def _metrics_from_rows(
    dim: Dimension, rows: Sequence[tuple[str, bool, float]]
) -> DimensionMetrics:
    y_true = [t for _, t, _ in rows]
    y_pred = [s >= 0.5 for _, _, s in rows]
    precision, recall, f1 = precision_recall_f1(y_true, y_pred)
    try:
        auc = roc_auc(y_true, [s for _, _, s in rows])
    except ValueError:
        auc = float("nan")
    accuracy = (
        sum(1 for t, p in zip(y_true, y_pred) if t == p) / len(rows) if rows else 0.0
    )
    return DimensionMetrics(
        dimension=dim,
        n=len(rows),
        n_pos=sum(y_true),
        precision=precision,
        recall=recall,
        f1=f1,
        auc=auc,
        accuracy=accuracy,
    )


def _run_folds(
    users: Sequence[LabeledUser],
    general: Lexicon,
    config: PipelineConfig,
    modes: Sequence[str],
) -> dict[str, EvaluationResult]:
    for mode in modes:
        if mode not in MODES:
            raise ValueError(f"unknown evaluation mode {mode!r}")
    train_full = "ica" in modes
    folds = kfold_split(list(users), config.k_folds, config.seed)
    pipelines: list[Pipeline] = []
    scores: dict[str, dict[Dimension, list[tuple[str, bool, float]]]] = {
        mode: {d: [] for d in ALL_DIMENSIONS} for mode in modes
    }
    skipped: dict[Dimension, list[int]] = {}
    for i, test_fold in enumerate(folds):
        train_users = [u for j, fold in enumerate(folds) if j != i for u in fold]
        pipeline = fit_pipeline(train_users, general, config, train_full=train_full)
        pipelines.append(pipeline)
        for dim in pipeline.skipped:
            skipped.setdefault(dim, []).append(i)
        for lu in test_fold:
            fv = pipeline.features_for(lu.record)
            by_mode: dict[str, Mapping[Dimension, float]] = {}
            if "independent" in modes:
                by_mode["independent"] = static_probabilities(fv, pipeline.models)
            if "ica" in modes:
                by_mode["ica"] = ica_infer(
                    fv,
                    pipeline.models,
                    pipeline.graph,
                    conf_hi=config.conf_hi,
                    conf_lo=config.conf_lo,
                    max_iters=config.max_iters,
                    bootstrap=config.bootstrap,
                ).probs
            for mode, probs in by_mode.items():
                for dim, p in probs.items():
                    scores[mode][dim].append((lu.record.user_id, lu.labels[dim], p))
    results = {}
    for mode in modes:
        pooled = {d: rows for d, rows in scores[mode].items() if rows}
        results[mode] = EvaluationResult(
            mode=mode,
            config=config,
            metrics={d: _metrics_from_rows(d, rows) for d, rows in pooled.items()},
            scores=pooled,
            fold_pipelines=pipelines,
            skipped_folds=dict(skipped),
        )
    return results


def evaluate(
    users: Sequence[LabeledUser],
    general: Lexicon,
    config: PipelineConfig,
    mode: str = "ica",
) -> EvaluationResult:
    """K-fold cross validation; every fitted artifact comes from the train
    folds only. Scores are pooled across test folds before computing metrics."""
    return _run_folds(users, general, config, (mode,))[mode]


@dataclass
class ModeComparison:
    independent: EvaluationResult
    ica: EvaluationResult

    def auc_delta(self) -> dict[Dimension, float]:
        out = {}
        for dim, m in self.ica.metrics.items():
            base = self.independent.metrics.get(dim)
            if base is not None:
                out[dim] = m.auc - base.auc
        return out


def compare_modes(
    users: Sequence[LabeledUser], general: Lexicon, config: PipelineConfig
) -> ModeComparison:
    """Both modes on identical folds and identical fitted pipelines."""
    results = _run_folds(users, general, config, MODES)
    return ModeComparison(independent=results["independent"], ica=results["ica"])


def _fmt(v: float) -> str:
    return f"{v:.4f}"


def render_report(result: EvaluationResult) -> str:
    """Deterministic plain-text report; identical inputs give identical bytes."""
    lines = [
        "evaluation report",
        f"brand: {result.config.brand}",
        f"mode: {result.mode}",
        f"folds: {result.config.k_folds}",
        f"users: {result.n_users}",
        "",
        "dimension          n  pos  precision  recall  f1      auc     accuracy",
    ]
    for dim in ALL_DIMENSIONS:
        m = result.metrics.get(dim)
        if m is None:
            lines.append(f"{dim.value:<13}     skipped (single-class training folds)")
            continue
        lines.append(
            f"{dim.value:<13} {m.n:>4} {m.n_pos:>4}  "
            f"{_fmt(m.precision):>9}  {_fmt(m.recall):>6}  {_fmt(m.f1):>6}  "
            f"{_fmt(m.auc):>6}  {_fmt(m.accuracy):>8}"
        )
    if result.skipped_folds:
        lines.append("")
        for dim in ALL_DIMENSIONS:
            folds = result.skipped_folds.get(dim)
            if folds:
                idx = ",".join(str(i) for i in folds)
                lines.append(f"note: {dim.value} skipped in folds {idx}")
    return "\n".join(lines) + "\n"


def render_comparison(comparison: ModeComparison) -> str:
    lines = [
        render_report(comparison.independent).rstrip("\n"),
        "",
        render_report(comparison.ica).rstrip("\n"),
        "",
        "auc deltas (ica - independent)",
    ]
    deltas = comparison.auc_delta()
    for dim in ALL_DIMENSIONS:
        if dim in deltas:
            lines.append(f"{dim.value:<13} {deltas[dim]:+.4f}")
    return "\n".join(lines) + "\n"
