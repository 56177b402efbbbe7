"""Cross-validation harness: folds, accuracy splits, confusion matrices,
and the feature-group ablation sequence.

"Seen" means the evaluation token's exact surface occurs somewhere in the
corresponding training split; this matches the MLE model's keying, so the
MLE model is 100% accurate by construction on seen tokens whose surface is
unambiguous in training.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Optional

from .classify import (
    HeuristicClassifier,
    crf_train,
    ensemble_train,
    mle_train,
    predict,
)
from .core import labels_for_scheme, merge_label
from .errors import TooFewSentences
from .features import FeatureConfig

MODEL_KINDS = ("heuristic", "mle", "crf", "ensemble")


@dataclass(frozen=True)
class FoldPlan:
    k: int
    assignment: tuple  # sentence index -> fold id
    seed: int

    def train_indices(self, fold):
        return [i for i, f in enumerate(self.assignment) if f != fold]

    def test_indices(self, fold):
        return [i for i, f in enumerate(self.assignment) if f == fold]


def make_folds(dataset, k, seed=0) -> FoldPlan:
    """Sentence-level assignment: seeded shuffle, then round-robin."""
    n = len(list(dataset))
    if k < 2:
        raise ValueError("k must be >= 2")
    if n < k:
        raise TooFewSentences(f"{n} sentences for {k} folds")
    order = list(range(n))
    random.Random(seed).shuffle(order)
    assignment = [0] * n
    for position, sentence_idx in enumerate(order):
        assignment[sentence_idx] = position % k
    return FoldPlan(k, tuple(assignment), seed)


@dataclass
class EvalReport:
    scheme: str
    model_kind: str
    accuracy_all: float
    accuracy_seen: float
    accuracy_unseen: float
    n_all: int
    n_seen: int
    n_unseen: int
    confusion: dict  # gold label value -> {predicted label value: percent}
    confusion_counts: dict  # gold label value -> {predicted: raw count}
    per_fold: list  # per fold: {"fold", "accuracy", "n"}
    feature_groups: Optional[list] = None

    def to_dict(self):
        return {
            "scheme": self.scheme,
            "model_kind": self.model_kind,
            "feature_groups": self.feature_groups,
            "accuracy": {
                "all": self.accuracy_all,
                "seen": self.accuracy_seen,
                "unseen": self.accuracy_unseen,
            },
            "counts": {
                "all": self.n_all,
                "seen": self.n_seen,
                "unseen": self.n_unseen,
            },
            "confusion_percent": self.confusion,
            "confusion_counts": self.confusion_counts,
            "per_fold": self.per_fold,
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True, indent=indent)


def _percent(numerator, denominator):
    if denominator == 0:
        return 0.0
    return round(100.0 * numerator / denominator, 2)


def _train_model(kind, train_data, cfg, scheme, hyper):
    if kind == "heuristic":
        return HeuristicClassifier(cfg)
    if kind == "mle":
        return mle_train(train_data, scheme)
    if kind == "crf":
        return crf_train(train_data, cfg, scheme, hyper)
    if kind == "ensemble":
        return ensemble_train(train_data, cfg, scheme, hyper)
    raise ValueError(f"unknown model kind {kind!r}")


def evaluate(
    dataset,
    model_kind,
    cfg: FeatureConfig,
    folds: FoldPlan,
    scheme="full",
    hyper=None,
) -> EvalReport:
    """Train/predict over every fold and aggregate token-level accuracy.

    The heuristic emits merged labels regardless of scheme, so gold labels
    are merged before scoring it.
    """
    sentences = list(dataset)
    label_order = labels_for_scheme(scheme)
    heuristic = model_kind == "heuristic"
    score_order = labels_for_scheme("merged") if heuristic else label_order

    confusion = {g.value: {p.value: 0 for p in score_order} for g in score_order}
    correct = {"seen": 0, "unseen": 0}
    totals = {"seen": 0, "unseen": 0}
    per_fold = []

    for fold in range(folds.k):
        train = [sentences[i] for i in folds.train_indices(fold)]
        test = [sentences[i] for i in folds.test_indices(fold)]
        model = _train_model(model_kind, train, cfg, scheme, hyper)
        train_surfaces = {
            t.surface for sentence in train for t in sentence.tokens
        }
        fold_correct = fold_total = 0
        for sentence in test:
            gold = sentence.labels if scheme == "full" else sentence.merged_labels()
            if heuristic:
                gold = tuple(merge_label(l) for l in sentence.labels)
            predicted = predict(model, sentence, cfg)
            for token, g, p in zip(sentence.tokens, gold, predicted):
                bucket = "seen" if token.surface in train_surfaces else "unseen"
                totals[bucket] += 1
                hit = g == p
                correct[bucket] += hit
                fold_correct += hit
                fold_total += 1
                confusion[g.value][p.value] += 1
        per_fold.append(
            {"fold": fold, "accuracy": _percent(fold_correct, fold_total), "n": fold_total}
        )

    n_all = totals["seen"] + totals["unseen"]
    confusion_percent = {
        g: {
            p: _percent(count, sum(row.values()))
            for p, count in row.items()
        }
        for g, row in confusion.items()
    }
    return EvalReport(
        scheme="merged" if heuristic else scheme,
        model_kind=model_kind,
        accuracy_all=_percent(correct["seen"] + correct["unseen"], n_all),
        accuracy_seen=_percent(correct["seen"], totals["seen"]),
        accuracy_unseen=_percent(correct["unseen"], totals["unseen"]),
        n_all=n_all,
        n_seen=totals["seen"],
        n_unseen=totals["unseen"],
        confusion=confusion_percent,
        confusion_counts=confusion,
        per_fold=per_fold,
        feature_groups=sorted(cfg.groups_enabled) if model_kind in ("crf", "ensemble") else None,
    )


ABLATION_SEQUENCE = (
    (),
    ("orthography",),
    ("orthography", "ngrams"),
    ("orthography", "closed_class"),
    ("orthography", "trans2"),
    ("orthography", "distances"),
    ("orthography", "ngrams", "closed_class", "trans2", "distances"),
)


def ablation(
    dataset,
    folds: FoldPlan,
    cfg: FeatureConfig,
    group_sequence=ABLATION_SEQUENCE,
    scheme="full",
    hyper=None,
):
    """One CRF report per feature-group combination in the sequence."""
    from dataclasses import replace

    reports = []
    for groups in group_sequence:
        run_cfg = replace(cfg, groups_enabled=frozenset(groups))
        reports.append(
            evaluate(dataset, "crf", run_cfg, folds, scheme=scheme, hyper=hyper)
        )
    return reports


def confusion_csv(report: EvalReport) -> str:
    """Render the row-normalized confusion matrix as CSV."""
    labels = sorted(report.confusion)
    lines = ["gold\\predicted," + ",".join(labels)]
    for gold in labels:
        row = report.confusion[gold]
        lines.append(gold + "," + ",".join(f"{row[p]:.2f}" for p in labels))
    return "\n".join(lines) + "\n"
