"""Token-level etymology classification and conditional transliteration
for Maltese, producing mixed-script text.

Public surface: domain types (core), file formats (ingest), the
transliterator (translit), translation lexicons (lexicon), CRF features
(features), the four classifiers (classify), the nine processing
pipelines (pipeline), and the cross-validation harness (evalkit).
"""

from .core import (
    Action,
    ActionKind,
    AnnotatedSentence,
    EtymologyLabel,
    FULL_LABELS,
    MERGED_LABELS,
    PipelineSpec,
    Token,
    merge_label,
)
from .features import FeatureConfig, extract_features, levenshtein
from .lexicon import LexiconSet, TranslationLexicon, translate_token
from .translit import (
    TransliterationTable,
    default_table,
    transliterate,
    transliterate_sentence,
)
from .classify import (
    EnsembleModel,
    HeuristicClassifier,
    MleModel,
    crf_predict,
    crf_train,
    ensemble_train,
    heuristic_classify,
    load_model,
    mle_train,
    save_model,
)
from .pipeline import PIPELINE_IDS, builtin_pipeline, process, process_dataset
from .evalkit import EvalReport, FoldPlan, ablation, evaluate, make_folds

__version__ = "0.1.0"
MODEL_FORMAT_VERSION = 1

__all__ = [
    "Action",
    "ActionKind",
    "AnnotatedSentence",
    "EtymologyLabel",
    "EnsembleModel",
    "EvalReport",
    "FULL_LABELS",
    "FeatureConfig",
    "FoldPlan",
    "HeuristicClassifier",
    "LexiconSet",
    "MERGED_LABELS",
    "MleModel",
    "PIPELINE_IDS",
    "PipelineSpec",
    "Token",
    "TranslationLexicon",
    "TransliterationTable",
    "ablation",
    "builtin_pipeline",
    "crf_predict",
    "crf_train",
    "default_table",
    "ensemble_train",
    "evaluate",
    "extract_features",
    "heuristic_classify",
    "levenshtein",
    "load_model",
    "make_folds",
    "merge_label",
    "mle_train",
    "process",
    "process_dataset",
    "save_model",
    "translate_token",
    "transliterate",
    "transliterate_sentence",
]
