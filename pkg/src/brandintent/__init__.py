"""Attitude and action-intention scoring for brand-mention tweet corpora.

Eight dimensions per user: five attitude components (favorability,
persistence, confidence, accessibility, resistance) and three action
intentions (buy, recommend, prohibit), each scored as a calibrated
probability. Predictions are refined collectively across dimensions via
iterative classification over a label-correlation graph.
"""

from .config import PipelineConfig, load_config
from .corpus import (
    ACTION_DIMENSIONS,
    ALL_DIMENSIONS,
    ATTITUDE_DIMENSIONS,
    CorpusError,
    Dimension,
    LabeledUser,
    SurveyResponse,
    Tweet,
    UserRecord,
    label_users,
    load_survey,
    load_users,
)
from .engine import ScoredUser, score_cohort
from .evaluation import compare_modes, evaluate
from .lexicon import DomainLexicon, Lexicon, induce_domain_lexicon, load_lexicon
from .pipeline import Pipeline, fit_pipeline, load_pipeline, save_pipeline

__version__ = "0.1.0"

__all__ = [
    "ACTION_DIMENSIONS",
    "ALL_DIMENSIONS",
    "ATTITUDE_DIMENSIONS",
    "CorpusError",
    "Dimension",
    "DomainLexicon",
    "LabeledUser",
    "Lexicon",
    "Pipeline",
    "PipelineConfig",
    "ScoredUser",
    "SurveyResponse",
    "Tweet",
    "UserRecord",
    "compare_modes",
    "evaluate",
    "fit_pipeline",
    "induce_domain_lexicon",
    "label_users",
    "load_config",
    "load_lexicon",
    "load_pipeline",
    "load_survey",
    "load_users",
    "save_pipeline",
    "score_cohort",
    "__version__",
]
