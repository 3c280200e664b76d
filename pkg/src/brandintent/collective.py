"""Collective classification across the eight dimensions.

Each user is one small graphical model: a node per dimension, an edge where
the training-set labels of two dimensions correlate strongly enough. Node
predictions beyond favorability get dynamic features carrying the current
estimates of neighboring dimensions; iterative classification (ICA) sweeps
the nodes until the hard labels stop changing.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .classifier import ClassifierModel, Hyperparams, predict_proba, train, TrainingSet
from .corpus import ALL_DIMENSIONS, Dimension
from .features import FeatureVector

DYNAMIC_PREFIX = "dynamic:"


def dynamic_feature_id(dim: Dimension) -> str:
    return DYNAMIC_PREFIX + dim.value


@dataclass(frozen=True)
class DependencyGraph:
    """All pairwise label correlations, plus the threshold that decides which
    pairs count as edges. Keys are ordered by dimension declaration order."""

    correlations: Mapping[tuple[Dimension, Dimension], float]
    threshold: float = 0.3

    def correlation(self, a: Dimension, b: Dimension) -> float:
        if a == b:
            return 1.0
        key = _pair_key(a, b)
        if key not in self.correlations:
            return float("nan")
        return self.correlations[key]

    def neighbors(self, dim: Dimension) -> list[tuple[Dimension, float]]:
        out = []
        for other in ALL_DIMENSIONS:
            if other == dim:
                continue
            r = self.correlation(dim, other)
            if math.isfinite(r) and abs(r) >= self.threshold:
                out.append((other, r))
        return out

    def edges(self) -> list[tuple[Dimension, Dimension, float]]:
        out = []
        for (a, b), r in self.correlations.items():
            if math.isfinite(r) and abs(r) >= self.threshold:
                out.append((a, b, r))
        return out


def _pair_key(a: Dimension, b: Dimension) -> tuple[Dimension, Dimension]:
    ia, ib = ALL_DIMENSIONS.index(a), ALL_DIMENSIONS.index(b)
    return (a, b) if ia < ib else (b, a)


def _phi(xs: Sequence[bool], ys: Sequence[bool]) -> float:
    """Pearson correlation of two binary columns; nan when either is constant."""
    n = len(xs)
    sx = sum(xs)
    sy = sum(ys)
    if sx in (0, n) or sy in (0, n):
        return float("nan")
    sxy = sum(1 for x, y in zip(xs, ys) if x and y)
    num = n * sxy - sx * sy
    den = math.sqrt(sx * (n - sx)) * math.sqrt(sy * (n - sy))
    return num / den


def build_dependency_graph(
    labels: Sequence[Mapping[Dimension, bool]], threshold: float = 0.3
) -> DependencyGraph:
    """Correlate binarized training labels for every dimension pair."""
    if len(labels) < 3:
        raise ValueError("need at least 3 labeled rows to correlate")
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must be in (0, 1]")
    n = len(labels)
    for dim in ALL_DIMENSIONS:
        total = sum(1 for row in labels if row[dim])
        if total in (0, n):
            warnings.warn(f"{dim.value} labels have zero variance; it gets no edges")
    correlations = {}
    for i, a in enumerate(ALL_DIMENSIONS):
        for b in ALL_DIMENSIONS[i + 1 :]:
            xs = [row[a] for row in labels]
            ys = [row[b] for row in labels]
            correlations[(a, b)] = _phi(xs, ys)
    return DependencyGraph(correlations=correlations, threshold=threshold)


def augment_features(
    fv: FeatureVector,
    dim: Dimension,
    neighbor_values: Mapping[Dimension, float],
    graph: DependencyGraph,
) -> FeatureVector:
    """Static features plus one dynamic entry per graph neighbor whose current
    value is known and nonzero (sparse vectors carry no explicit zeros)."""
    values = dict(fv.values)
    for other, _ in graph.neighbors(dim):
        v = neighbor_values.get(other)
        if v:
            values[dynamic_feature_id(other)] = float(v)
    return FeatureVector(values)


@dataclass
class NodeModel:
    dimension: Dimension
    static: ClassifierModel
    full: ClassifierModel | None  # None when trained static-only
    neighbor_order: tuple[Dimension, ...] = ()


def train_node_model(
    dim: Dimension,
    rows: Sequence[tuple[FeatureVector, Mapping[Dimension, bool]]],
    graph: DependencyGraph,
    hyperparams: Hyperparams = Hyperparams(),
    with_full: bool = True,
) -> NodeModel:
    """Train f_static on the observed features alone and, unless disabled,
    f_full with the neighbors' ground-truth labels as dynamic features."""
    static_rows = [(fv, labels[dim]) for fv, labels in rows]
    static = train(TrainingSet(static_rows, dim), hyperparams)
    neighbor_order = tuple(d for d, _ in graph.neighbors(dim))
    full = None
    if with_full:
        full_rows = [
            (
                augment_features(fv, dim, {d: 1.0 if v else 0.0 for d, v in labels.items()}, graph),
                labels[dim],
            )
            for fv, labels in rows
        ]
        full = train(TrainingSet(full_rows, dim), hyperparams)
    return NodeModel(dimension=dim, static=static, full=full, neighbor_order=neighbor_order)


def train_node_models(
    rows: Sequence[tuple[FeatureVector, Mapping[Dimension, bool]]],
    graph: DependencyGraph,
    hyperparams: Hyperparams = Hyperparams(),
    dimensions: Iterable[Dimension] = ALL_DIMENSIONS,
    with_full: bool = True,
) -> dict[Dimension, NodeModel]:
    return {
        dim: train_node_model(dim, rows, graph, hyperparams, with_full=with_full)
        for dim in dimensions
    }


@dataclass
class Assignment:
    probs: dict[Dimension, float]
    sweeps: int
    stabilized: bool


def static_probabilities(
    fv: FeatureVector, models: Mapping[Dimension, NodeModel]
) -> dict[Dimension, float]:
    return {dim: predict_proba(nm.static, fv) for dim, nm in models.items()}


def bootstrap_init(
    static_probs: Mapping[Dimension, float],
    graph: DependencyGraph,
    conf_hi: float = 0.8,
    conf_lo: float = 0.2,
) -> dict[Dimension, float]:
    """Initial assignment: trust confident static predictions, otherwise lean
    on favorability, flipped when the historical correlation is negative."""
    if not 0.0 <= conf_lo < conf_hi <= 1.0:
        raise ValueError("need 0 <= conf_lo < conf_hi <= 1")
    fav = static_probs.get(Dimension.FAVORABILITY)
    out: dict[Dimension, float] = {}
    for dim, p in static_probs.items():
        if dim == Dimension.FAVORABILITY or p >= conf_hi or p <= conf_lo or fav is None:
            out[dim] = p
            continue
        r = graph.correlation(Dimension.FAVORABILITY, dim)
        if math.isfinite(r) and r < 0:
            out[dim] = 1.0 - fav
        else:
            out[dim] = fav
    return out


def _hard_labels(probs: Mapping[Dimension, float]) -> dict[Dimension, bool]:
    return {dim: p >= 0.5 for dim, p in probs.items()}


def ica_sweep(
    fv: FeatureVector,
    probs: Mapping[Dimension, float],
    models: Mapping[Dimension, NodeModel],
    graph: DependencyGraph,
) -> dict[Dimension, float]:
    """One asynchronous pass: dimensions updated in declaration order, each
    update visible to the ones after it."""
    current = dict(probs)
    for dim in ALL_DIMENSIONS:
        nm = models.get(dim)
        if nm is None:
            continue
        if nm.full is None:
            raise ValueError(
                f"no collective model for {dim.value}; pipeline was trained static-only"
            )
        current[dim] = predict_proba(nm.full, augment_features(fv, dim, current, graph))
    return current


def ica_infer(
    fv: FeatureVector,
    models: Mapping[Dimension, NodeModel],
    graph: DependencyGraph,
    conf_hi: float = 0.8,
    conf_lo: float = 0.2,
    max_iters: int = 10,
    bootstrap: str = "heuristic",
) -> Assignment:
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    static = static_probabilities(fv, models)
    if bootstrap == "heuristic":
        probs = bootstrap_init(static, graph, conf_hi, conf_lo)
    elif bootstrap == "static":  # ablation: plain f_static initialization
        probs = dict(static)
    else:
        raise ValueError(f"unknown bootstrap mode {bootstrap!r}")
    labels = _hard_labels(probs)
    sweeps = 0
    stabilized = False
    # Stabilization must be a true fixed point of the hard labels: sweeps
    # consume the continuous probabilities, so matching labels between two
    # consecutive sweeps does not by itself mean a further sweep would leave
    # them alone.  We therefore only declare an assignment stable after
    # verifying that one more sweep from it changes no hard label, and return
    # that verified assignment.
    for step in range(max_iters):
        nxt = ica_sweep(fv, probs, models, graph)
        new_labels = _hard_labels(nxt)
        if step > 0 and new_labels == labels:
            stabilized = True
            break
        probs = nxt
        labels = new_labels
        sweeps = step + 1
    return Assignment(probs=probs, sweeps=sweeps, stabilized=stabilized)
