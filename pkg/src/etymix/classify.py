"""The four etymology classifiers and model persistence.

Heuristic: untrained rules over translation distances.
MLE: per-surface most-frequent label with a global-majority fallback.
CRF: see the crf module.
Ensemble: MLE for surfaces seen with exactly one training label, CRF
otherwise.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import crf as _crf
from .core import (
    EtymologyLabel,
    MERGED_LABELS,
    labels_for_scheme,
    merge_label,
)
from .errors import ConfigMismatch, CorruptFile, EmptyData, UnlabeledData, VersionMismatch
from .features import FeatureConfig, has_digit, has_punctuation, token_distances

MODEL_MAGIC = b"ETYM"
MODEL_VERSION = 1


@dataclass(frozen=True)
class HeuristicClassifier:
    """Stateless distance-based rules; emits merged-scheme labels only."""

    cfg: FeatureConfig  # must carry the three lexicons and the translit table

    def __post_init__(self):
        missing = [t for t in ("ara", "ita", "eng") if t not in self.cfg.lexicons]
        if missing or self.cfg.translit_table is None:
            raise ValueError(
                f"heuristic needs ara/ita/eng lexicons and a transliteration "
                f"table (missing lexicons: {missing})"
            )

    def classify_token(self, surface: str) -> EtymologyLabel:
        d_ara, d_ita, d_eng = token_distances(surface, self.cfg)
        if d_ita == 0 and d_eng == 0:
            if has_digit(surface) or has_punctuation(surface):
                return EtymologyLabel.SYMBOL
            return EtymologyLabel.NAME
        if d_ita == 0 or d_eng == 0:
            return EtymologyLabel.CODE_SWITCHING
        if d_ara <= min(d_ita, d_eng):
            return EtymologyLabel.ARABIC
        return EtymologyLabel.NON_ARABIC

    def predict(self, sentence):
        return [self.classify_token(t.surface) for t in sentence.tokens]


def heuristic_classify(sentence, cfg: FeatureConfig):
    return HeuristicClassifier(cfg).predict(sentence)


@dataclass
class MleModel:
    scheme: str
    surface_counts: dict  # surface -> Counter of labels
    global_counts: Counter

    def _argmax(self, counter: Counter) -> EtymologyLabel:
        order = labels_for_scheme(self.scheme)
        return max(
            counter,
            key=lambda label: (counter[label], -order.index(label)),
        )

    def predict_token(self, surface: str) -> EtymologyLabel:
        counts = self.surface_counts.get(surface)
        if counts:
            return self._argmax(counts)
        return self._argmax(self.global_counts)

    def predict(self, sentence):
        return [self.predict_token(t.surface) for t in sentence.tokens]

    def unambiguous_surfaces(self):
        """Surfaces observed with exactly one label during training."""
        return {s for s, c in self.surface_counts.items() if len(c) == 1}


def mle_train(data, scheme="full") -> MleModel:
    data = list(data)
    if not data:
        raise EmptyData("no training sentences")
    surface_counts = {}
    global_counts = Counter()
    for sentence in data:
        if sentence.labels is None:
            raise UnlabeledData("MLE training requires labeled sentences")
        labels = sentence.labels if scheme == "full" else sentence.merged_labels()
        for token, label in zip(sentence.tokens, labels):
            surface_counts.setdefault(token.surface, Counter())[label] += 1
            global_counts[label] += 1
    if not global_counts:
        raise EmptyData("training data contains no tokens")
    return MleModel(scheme, surface_counts, global_counts)


def crf_train(data, cfg: FeatureConfig, scheme="full", hyper=None):
    data = list(data)
    label_order = labels_for_scheme(scheme)
    if scheme == "merged":
        data = [
            s.__class__(s.tokens, s.merged_labels())
            for s in data
        ]
    return _crf.crf_train(data, cfg, scheme, label_order, hyper)


crf_predict = _crf.crf_predict
crf_marginals = _crf.crf_marginals
CrfModel = _crf.CrfModel


@dataclass
class EnsembleModel:
    mle: MleModel
    crf: CrfModel
    unambiguous: frozenset = field(default=None)

    def __post_init__(self):
        if self.unambiguous is None:
            self.unambiguous = frozenset(self.mle.unambiguous_surfaces())
        if self.mle.scheme != self.crf.scheme:
            raise ValueError("MLE and CRF were trained with different schemes")

    @property
    def scheme(self):
        return self.mle.scheme

    def predict(self, sentence, cfg=None):
        crf_labels = crf_predict(self.crf, sentence, cfg)
        out = []
        for token, crf_label in zip(sentence.tokens, crf_labels):
            if token.surface in self.unambiguous:
                out.append(self.mle.predict_token(token.surface))
            else:
                out.append(crf_label)
        return out


def ensemble_train(data, cfg: FeatureConfig, scheme="full", hyper=None) -> EnsembleModel:
    data = list(data)
    return EnsembleModel(
        mle=mle_train(data, scheme),
        crf=crf_train(data, cfg, scheme, hyper),
    )


def ensemble_predict(model: EnsembleModel, sentence, cfg=None):
    return model.predict(sentence, cfg)


def predict(model, sentence, cfg=None):
    """Uniform prediction entry point across model kinds."""
    if isinstance(model, HeuristicClassifier):
        return model.predict(sentence)
    if isinstance(model, MleModel):
        return model.predict(sentence)
    if isinstance(model, CrfModel):
        return crf_predict(model, sentence, cfg)
    if isinstance(model, EnsembleModel):
        return model.predict(sentence, cfg)
    raise TypeError(f"unknown model type {type(model)!r}")


# --- persistence ------------------------------------------------------------
#
# Model files are the 4-byte magic "ETYM", a version byte line, then a UTF-8
# JSON payload: {"kind": ..., "scheme": ..., ...kind-specific fields}.


def _mle_payload(model: MleModel):
    return {
        "surface_counts": {
            s: {l.value: n for l, n in c.items()}
            for s, c in sorted(model.surface_counts.items())
        },
        "global_counts": {l.value: n for l, n in sorted(model.global_counts.items(), key=lambda kv: kv[0].value)},
    }


def _mle_from_payload(payload, scheme):
    surface_counts = {
        s: Counter({EtymologyLabel(l): n for l, n in c.items()})
        for s, c in payload["surface_counts"].items()
    }
    global_counts = Counter(
        {EtymologyLabel(l): n for l, n in payload["global_counts"].items()}
    )
    return MleModel(scheme, surface_counts, global_counts)


def _crf_payload(model: CrfModel):
    return {
        "labels": [l.value for l in model.labels],
        "feature_index": model.feature_index,
        "weights": model.weights.tolist(),
        "trans": model.trans.tolist(),
        "begin": model.begin.tolist(),
        "end": model.end.tolist(),
        "fingerprint": model.fingerprint,
        "hyper": model.hyper,
        "final_objective": model.final_objective,
    }


def _crf_from_payload(payload, scheme):
    return CrfModel(
        labels=tuple(EtymologyLabel(l) for l in payload["labels"]),
        scheme=scheme,
        feature_index=dict(payload["feature_index"]),
        weights=np.asarray(payload["weights"]),
        trans=np.asarray(payload["trans"]),
        begin=np.asarray(payload["begin"]),
        end=np.asarray(payload["end"]),
        fingerprint=payload["fingerprint"],
        hyper=dict(payload["hyper"]),
        final_objective=payload["final_objective"],
    )


def save_model(model, path):
    if isinstance(model, MleModel):
        kind, payload = "mle", _mle_payload(model)
    elif isinstance(model, CrfModel):
        kind, payload = "crf", _crf_payload(model)
    elif isinstance(model, EnsembleModel):
        kind = "ensemble"
        payload = {
            "mle": _mle_payload(model.mle),
            "crf": _crf_payload(model.crf),
            "unambiguous": sorted(model.unambiguous),
        }
    else:
        raise TypeError(f"cannot persist {type(model)!r}")
    body = json.dumps(
        {"kind": kind, "scheme": model.scheme, **payload},
        ensure_ascii=False,
        sort_keys=True,
    )
    with open(path, "wb") as fh:
        fh.write(MODEL_MAGIC)
        fh.write(f"{MODEL_VERSION}\n".encode())
        fh.write(body.encode("utf-8"))


def load_model(path, cfg: Optional[FeatureConfig] = None):
    """Load a model; CRF-bearing models need their FeatureConfig re-attached
    (raises ConfigMismatch on fingerprint disagreement)."""
    raw = Path(path).read_bytes()
    if raw[:4] != MODEL_MAGIC:
        raise CorruptFile(f"{path}: bad magic bytes")
    newline = raw.find(b"\n", 4)
    if newline < 0:
        raise CorruptFile(f"{path}: missing version line")
    try:
        version = int(raw[4:newline])
    except ValueError:
        raise CorruptFile(f"{path}: unreadable version")
    if version != MODEL_VERSION:
        raise VersionMismatch(f"{path}: format version {version}, expected {MODEL_VERSION}")
    try:
        doc = json.loads(raw[newline + 1 :].decode("utf-8"))
        kind = doc["kind"]
        scheme = doc["scheme"]
    except (ValueError, KeyError) as exc:
        raise CorruptFile(f"{path}: {exc}")
    if kind == "mle":
        return _mle_from_payload(doc, scheme)
    if kind == "crf":
        model = _crf_from_payload(doc, scheme)
        if cfg is not None:
            model.attach_config(cfg)
        return model
    if kind == "ensemble":
        crf_model = _crf_from_payload(doc["crf"], scheme)
        if cfg is not None:
            crf_model.attach_config(cfg)
        return EnsembleModel(
            mle=_mle_from_payload(doc["mle"], scheme),
            crf=crf_model,
            unambiguous=frozenset(doc["unambiguous"]),
        )
    raise CorruptFile(f"{path}: unknown model kind {kind!r}")
