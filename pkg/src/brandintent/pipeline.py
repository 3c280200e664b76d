"""Fitting, bundling and applying the full scoring pipeline.

A fitted pipeline owns everything derived from a training fold: the unigram
vocabulary, the induced domain lexicon, the dimension dependency graph and
one node model pair per dimension. Bundles round-trip through a directory so
a service can score without retraining.
"""

from __future__ import annotations

import json
import os
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .classifier import Hyperparams, load_model, save_model
from .collective import (
    Assignment,
    DependencyGraph,
    NodeModel,
    build_dependency_graph,
    ica_infer,
    static_probabilities,
    train_node_model,
)
from .config import PipelineConfig
from .corpus import ALL_DIMENSIONS, Dimension, LabeledUser, UserRecord, dimension_from_name
from .classifier import SingleClassError
from .features import FeatureConfig, FeatureVector, build_feature_vector, build_vocabulary
from .lexicon import (
    DomainLexicon,
    Lexicon,
    induce_domain_lexicon,
    load_domain_lexicon,
    load_lexicon_tsv,
    save_domain_lexicon,
    save_lexicon_tsv,
)

BUNDLE_TAG = "brandintent-bundle v1"


@dataclass
class Pipeline:
    config: PipelineConfig
    vocabulary: tuple[str, ...]
    general: Lexicon
    domain: DomainLexicon
    graph: DependencyGraph
    models: dict[Dimension, NodeModel]
    skipped: dict[Dimension, str] = field(default_factory=dict)

    def feature_config(self) -> FeatureConfig:
        return FeatureConfig(
            brand_keywords=tuple(self.config.brand_keywords),
            window=self.config.window,
            min_doc_freq=self.config.min_doc_freq,
            vocabulary=self.vocabulary,
            occurrence_level_frequency=self.config.occurrence_level_frequency,
        )

    def features_for(self, user: UserRecord) -> FeatureVector:
        return build_feature_vector(user, self.feature_config(), self.general, self.domain)

    def score_static(self, user: UserRecord) -> dict[Dimension, float]:
        return static_probabilities(self.features_for(user), self.models)

    def score_user(self, user: UserRecord) -> tuple[dict[Dimension, float], Assignment]:
        """Static probabilities plus the collective assignment for one user."""
        fv = self.features_for(user)
        static = static_probabilities(fv, self.models)
        assignment = ica_infer(
            fv,
            self.models,
            self.graph,
            conf_hi=self.config.conf_hi,
            conf_lo=self.config.conf_lo,
            max_iters=self.config.max_iters,
            bootstrap=self.config.bootstrap,
        )
        return static, assignment


def hyperparams_from_config(config: PipelineConfig) -> Hyperparams:
    return Hyperparams(
        l2_lambda=config.l2_lambda,
        learning_rate=config.learning_rate,
        epochs=config.epochs,
        batch_size=config.batch_size,
        seed=config.seed,
        class_weighting=config.class_weighting,
    )


def fit_pipeline(
    train_users: Sequence[LabeledUser],
    general: Lexicon,
    config: PipelineConfig,
    train_full: bool = True,
) -> Pipeline:
    """Fit everything from the given training users and nothing else."""
    if not train_users:
        raise ValueError("cannot fit a pipeline on zero users")
    config.validate()
    records = [lu.record for lu in train_users]
    vocabulary = build_vocabulary(records, config.min_doc_freq)
    domain = induce_domain_lexicon(
        records,
        config.brand_keywords,
        general,
        window=config.domain_window,
        threshold=config.domain_threshold,
        brand=config.brand,
    )
    graph = build_dependency_graph([lu.labels for lu in train_users], config.corr_threshold)

    pipeline = Pipeline(
        config=config,
        vocabulary=vocabulary,
        general=general,
        domain=domain,
        graph=graph,
        models={},
    )
    rows = [(pipeline.features_for(lu.record), lu.labels) for lu in train_users]
    hp = hyperparams_from_config(config)
    for dim in ALL_DIMENSIONS:
        try:
            pipeline.models[dim] = train_node_model(dim, rows, graph, hp, with_full=train_full)
        except SingleClassError as exc:
            pipeline.skipped[dim] = str(exc)
            warnings.warn(f"skipping {dim.value}: {exc}")
    return pipeline


def save_graph(graph: DependencyGraph, path: str) -> None:
    lines = [f"# threshold {graph.threshold!r}"]
    for i, a in enumerate(ALL_DIMENSIONS):
        for b in ALL_DIMENSIONS[i + 1 :]:
            lines.append(f"{a.value}\t{b.value}\t{graph.correlation(a, b)!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_graph(path: str) -> DependencyGraph:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("# threshold "):
        raise ValueError("graph file missing threshold header")
    threshold = float(lines[0][len("# threshold "):])
    correlations = {}
    for line in lines[1:]:
        a, b, r = line.split("\t")
        correlations[(dimension_from_name(a), dimension_from_name(b))] = float(r)
    return DependencyGraph(correlations=correlations, threshold=threshold)


def save_pipeline(pipeline: Pipeline, dirpath: str) -> None:
    os.makedirs(dirpath, exist_ok=True)
    models_dir = os.path.join(dirpath, "models")
    os.makedirs(models_dir, exist_ok=True)
    meta = {
        "format": BUNDLE_TAG,
        "config": pipeline.config.to_dict(),
        "skipped": {d.value: reason for d, reason in pipeline.skipped.items()},
    }
    with open(os.path.join(dirpath, "meta.json"), "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(os.path.join(dirpath, "vocabulary.txt"), "w", encoding="utf-8") as fh:
        for word in pipeline.vocabulary:
            fh.write(word + "\n")
    save_lexicon_tsv(pipeline.general, os.path.join(dirpath, "general_lexicon.tsv"))
    save_domain_lexicon(pipeline.domain, os.path.join(dirpath, "domain_lexicon.tsv"))
    save_graph(pipeline.graph, os.path.join(dirpath, "graph.tsv"))
    for dim, nm in pipeline.models.items():
        save_model(nm.static, os.path.join(models_dir, f"{dim.value}.static.model"))
        if nm.full is not None:
            save_model(nm.full, os.path.join(models_dir, f"{dim.value}.full.model"))


def load_pipeline(dirpath: str) -> Pipeline:
    with open(os.path.join(dirpath, "meta.json"), encoding="utf-8") as fh:
        meta = json.load(fh)
    if meta.get("format") != BUNDLE_TAG:
        raise ValueError(f"not a pipeline bundle: {meta.get('format')!r}")
    config = PipelineConfig.from_dict(meta["config"])
    skipped = {dimension_from_name(n): r for n, r in meta.get("skipped", {}).items()}
    with open(os.path.join(dirpath, "vocabulary.txt"), encoding="utf-8") as fh:
        vocabulary = tuple(ln.rstrip("\n") for ln in fh if ln.rstrip("\n"))
    general = load_lexicon_tsv(os.path.join(dirpath, "general_lexicon.tsv"))
    domain = load_domain_lexicon(os.path.join(dirpath, "domain_lexicon.tsv"))
    graph = load_graph(os.path.join(dirpath, "graph.tsv"))
    models_dir = os.path.join(dirpath, "models")
    models: dict[Dimension, NodeModel] = {}
    for dim in ALL_DIMENSIONS:
        static_path = os.path.join(models_dir, f"{dim.value}.static.model")
        if not os.path.exists(static_path):
            continue
        full_path = os.path.join(models_dir, f"{dim.value}.full.model")
        models[dim] = NodeModel(
            dimension=dim,
            static=load_model(static_path),
            full=load_model(full_path) if os.path.exists(full_path) else None,
            neighbor_order=tuple(d for d, _ in graph.neighbors(dim)),
        )
    return Pipeline(
        config=config,
        vocabulary=vocabulary,
        general=general,
        domain=domain,
        graph=graph,
        models=models,
        skipped=skipped,
    )
