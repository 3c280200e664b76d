"""Pipeline configuration: one flat dataclass, overridable from a JSON file."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field


@dataclass
class PipelineConfig:
    # corpus / labeling
    brand: str = "delta"
    brand_keywords: list[str] = field(default_factory=lambda: ["@delta"])
    likert_midpoint: float = 3.0
    binarize_mode: str = "midpoint"  # "midpoint" | "sample_mean"

    # features
    window: int = 3
    min_doc_freq: int = 2
    occurrence_level_frequency: bool = False

    # domain lexicon induction
    domain_window: int = 3
    domain_threshold: float = 3.0

    # classifier
    l2_lambda: float = 1e-3
    learning_rate: float = 0.1
    epochs: int = 50
    batch_size: int = 32
    class_weighting: bool = True

    # collective inference
    corr_threshold: float = 0.3
    conf_hi: float = 0.8
    conf_lo: float = 0.2
    max_iters: int = 10
    bootstrap: str = "heuristic"  # "heuristic" | "static"

    # evaluation / service
    k_folds: int = 5
    histogram_bins: int = 5
    seed: int = 0

    def validate(self) -> None:
        if not self.brand_keywords:
            raise ValueError("brand_keywords must be non-empty")
        if self.window < 1 or self.domain_window < 1:
            raise ValueError("window must be >= 1")
        if self.min_doc_freq < 1:
            raise ValueError("min_doc_freq must be >= 1")
        if self.domain_threshold <= 0:
            raise ValueError("domain_threshold must be > 0")
        if not (0.0 <= self.conf_lo < self.conf_hi <= 1.0):
            raise ValueError("need 0 <= conf_lo < conf_hi <= 1")
        if not (0.0 < self.corr_threshold <= 1.0):
            raise ValueError("corr_threshold must be in (0, 1]")
        if self.binarize_mode not in ("midpoint", "sample_mean"):
            raise ValueError(f"unknown binarize_mode {self.binarize_mode!r}")
        if self.bootstrap not in ("heuristic", "static"):
            raise ValueError(f"unknown bootstrap mode {self.bootstrap!r}")
        if not 1.0 <= self.likert_midpoint <= 5.0:
            raise ValueError("likert_midpoint must be within the 1..5 scale")
        if self.l2_lambda < 0:
            raise ValueError("l2_lambda must be >= 0")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.k_folds < 2:
            raise ValueError("k_folds must be >= 2")
        if self.histogram_bins < 1:
            raise ValueError("histogram_bins must be >= 1")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        cfg = cls(**data)
        cfg.validate()
        return cfg


def load_config(path: str) -> PipelineConfig:
    with open(path, encoding="utf-8") as fh:
        return PipelineConfig.from_dict(json.load(fh))
