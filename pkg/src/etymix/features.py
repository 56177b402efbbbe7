"""Levenshtein distance and the CRF feature groups.

Five optional groups on top of the always-on base features: orthography,
ngrams, closed_class, trans2 (translations + transliteration) and distances.
Disabling a group removes exactly that group's features, which is what makes
the ablation runs meaningful.
"""

from __future__ import annotations

import hashlib
import json
import unicodedata
from dataclasses import dataclass, field
from typing import Optional

from .errors import IndexOutOfRange
from .translit import TransliterationTable, transliterate

FEATURE_GROUPS = ("orthography", "ngrams", "closed_class", "trans2", "distances")

MALTESE_SPECIALS = set("ċġħżĊĠĦŻ")


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance over code points."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (ca != cb),
                )
            )
        previous = current
    return previous[-1]


def _has_category(surface, predicate):
    return any(predicate(unicodedata.category(ch)) for ch in surface)


def has_digit(surface):
    return _has_category(surface, lambda c: c == "Nd")


def has_punctuation(surface):
    return _has_category(surface, lambda c: c[0] in "PS")


@dataclass(frozen=True)
class FeatureConfig:
    groups_enabled: frozenset = frozenset(FEATURE_GROUPS)
    ngram_list: tuple = ()
    closed_class_set: frozenset = frozenset()
    lexicons: dict = field(default_factory=dict)  # tgt code -> TranslationLexicon
    translit_table: Optional[TransliterationTable] = None
    context_window: int = 1

    def __post_init__(self):
        object.__setattr__(self, "groups_enabled", frozenset(self.groups_enabled))
        object.__setattr__(self, "ngram_list", tuple(self.ngram_list))
        object.__setattr__(self, "closed_class_set", frozenset(self.closed_class_set))
        unknown = self.groups_enabled - set(FEATURE_GROUPS)
        if unknown:
            raise ValueError(f"unknown feature groups {sorted(unknown)}")
        if "ngrams" in self.groups_enabled and not self.ngram_list:
            raise ValueError("ngrams group enabled without an n-gram list")
        needs_resources = {"trans2", "distances"} & self.groups_enabled
        if needs_resources:
            missing = [t for t in ("ara", "ita", "eng") if t not in self.lexicons]
            if missing or self.translit_table is None:
                raise ValueError(
                    f"{sorted(needs_resources)} require ara/ita/eng lexicons and a "
                    f"transliteration table (missing lexicons: {missing})"
                )

    def fingerprint(self) -> str:
        """Stable digest of everything that affects extracted features."""
        digest = hashlib.sha256()
        payload = {
            "groups": sorted(self.groups_enabled),
            "window": self.context_window,
            "ngrams": list(self.ngram_list),
            "closed_class": sorted(self.closed_class_set),
            "lexicons": {
                tgt: sorted(lex.entries.items())
                for tgt, lex in sorted(self.lexicons.items())
            },
        }
        digest.update(json.dumps(payload, ensure_ascii=False, sort_keys=True).encode())
        if self.translit_table is not None:
            table = self.translit_table
            digest.update(
                json.dumps(
                    {
                        "graphemes": {
                            g: list(c) for g, c in sorted(table.grapheme_map.items())
                        },
                        "closed": sorted(table.closed_class.items()),
                        "symbols": sorted(table.symbol_map.items()),
                    },
                    ensure_ascii=False,
                    sort_keys=True,
                ).encode()
            )
        return digest.hexdigest()


def token_translations(surface, cfg: FeatureConfig):
    """(t_ara, t_ita, t_eng, x_ara) for one surface."""
    t_ara, _ = cfg.lexicons["ara"].lookup(surface)
    t_ita, _ = cfg.lexicons["ita"].lookup(surface)
    t_eng, _ = cfg.lexicons["eng"].lookup(surface)
    x_ara = transliterate(surface, cfg.translit_table)
    return t_ara, t_ita, t_eng, x_ara


def token_distances(surface, cfg: FeatureConfig):
    """(d_ara, d_ita, d_eng); the Arabic distance compares the
    transliteration against the Arabic translation, not the raw surface."""
    t_ara, t_ita, t_eng, x_ara = token_translations(surface, cfg)
    d_ara = levenshtein(x_ara, t_ara)
    d_ita = levenshtein(surface.lower(), t_ita.lower())
    d_eng = levenshtein(surface.lower(), t_eng.lower())
    return d_ara, d_ita, d_eng


def extract_features(sentence, i, cfg: FeatureConfig) -> dict:
    """Feature name -> value (string, bool or int) for position i."""
    if not 0 <= i < len(sentence):
        raise IndexOutOfRange(f"position {i} in sentence of length {len(sentence)}")
    surface = sentence.tokens[i].surface
    lowered = surface.lower()
    features = {
        "surface": surface,
        "lower": lowered,
        "BOS": i == 0,
        "EOS": i == len(sentence) - 1,
    }
    for offset in range(-cfg.context_window, cfg.context_window + 1):
        if offset == 0:
            continue
        j = i + offset
        if 0 <= j < len(sentence):
            features[f"lower[{offset:+d}]"] = sentence.tokens[j].surface.lower()

    if "orthography" in cfg.groups_enabled:
        features["has_uppercase"] = any(ch.isupper() for ch in surface)
        features["has_digit"] = has_digit(surface)
        features["has_punctuation"] = has_punctuation(surface)
        features["has_maltese_special"] = any(ch in MALTESE_SPECIALS for ch in surface)

    if "ngrams" in cfg.groups_enabled:
        present = [g for g in cfg.ngram_list if g in lowered]
        features["has_any_frequent_ngram"] = bool(present)
        for gram in present:
            features[f"ngram[{gram}]"] = True

    if "closed_class" in cfg.groups_enabled:
        features["is_closed_class"] = lowered in cfg.closed_class_set

    if "trans2" in cfg.groups_enabled or "distances" in cfg.groups_enabled:
        t_ara, t_ita, t_eng, x_ara = token_translations(surface, cfg)
        if "trans2" in cfg.groups_enabled:
            features["t_ara"] = t_ara
            features["t_ita"] = t_ita
            features["t_eng"] = t_eng
            features["x_ara"] = x_ara
        if "distances" in cfg.groups_enabled:
            features["d_ara"] = levenshtein(x_ara, t_ara)
            features["d_ita"] = levenshtein(lowered, t_ita.lower())
            features["d_eng"] = levenshtein(lowered, t_eng.lower())

    return features


def extract_sentence_features(sentence, cfg: FeatureConfig):
    return [extract_features(sentence, i, cfg) for i in range(len(sentence))]
