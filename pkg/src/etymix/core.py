"""Core domain types: labels, tokens, sentences, actions and pipeline specs.

Everything here is immutable after construction and holds no I/O logic.
"""

from __future__ import annotations

import enum
import unicodedata
from dataclasses import dataclass, field
from typing import Optional

LANG_CODES = ("mlt", "ara", "ita", "eng")


class EtymologyLabel(enum.Enum):
    """Token-origin classes.

    The full scheme has 7 classes; `merge()` collapses them to the 5-class
    scheme (Mixed folds into NonArabic, the two Name variants into Name).
    """

    ARABIC = "arabic"
    NON_ARABIC = "non-arabic"
    MIXED = "mixed"
    CODE_SWITCHING = "code-switching"
    NAME_ARABIC = "name-arabic"
    NAME_NON_ARABIC = "name-non-arabic"
    SYMBOL = "symbol"
    # Merged-scheme-only class (never appears in full-scheme data).
    NAME = "name"

    def merge(self) -> "EtymologyLabel":
        return merge_label(self)

    @classmethod
    def parse(cls, text: str) -> "EtymologyLabel":
        try:
            return cls(text)
        except ValueError:
            raise KeyError(text)


FULL_LABELS = (
    EtymologyLabel.ARABIC,
    EtymologyLabel.NON_ARABIC,
    EtymologyLabel.MIXED,
    EtymologyLabel.CODE_SWITCHING,
    EtymologyLabel.NAME_ARABIC,
    EtymologyLabel.NAME_NON_ARABIC,
    EtymologyLabel.SYMBOL,
)

# Fixed enumeration order used for every tie-break (MLE argmax, heuristic
# minimum distance, equal Viterbi scores).
MERGED_LABELS = (
    EtymologyLabel.ARABIC,
    EtymologyLabel.NON_ARABIC,
    EtymologyLabel.CODE_SWITCHING,
    EtymologyLabel.NAME,
    EtymologyLabel.SYMBOL,
)

_MERGE_MAP = {
    EtymologyLabel.MIXED: EtymologyLabel.NON_ARABIC,
    EtymologyLabel.NAME_ARABIC: EtymologyLabel.NAME,
    EtymologyLabel.NAME_NON_ARABIC: EtymologyLabel.NAME,
}


def merge_label(label: EtymologyLabel) -> EtymologyLabel:
    """Collapse a full-scheme label into the 5-class merged scheme."""
    return _MERGE_MAP.get(label, label)


def labels_for_scheme(scheme: str):
    """Return the label tuple for a scheme name ("full" or "merged")."""
    if scheme == "full":
        return FULL_LABELS
    if scheme == "merged":
        return MERGED_LABELS
    raise ValueError(f"unknown scheme {scheme!r}")


@dataclass(frozen=True)
class Token:
    """A single pre-tokenized surface form; NFC-normalized on construction."""

    surface: str
    index: int = 0

    def __post_init__(self):
        surface = unicodedata.normalize("NFC", self.surface)
        object.__setattr__(self, "surface", surface)
        if not surface:
            raise ValueError("token surface must be non-empty")
        if any(ch.isspace() for ch in surface):
            raise ValueError(f"token surface contains whitespace: {surface!r}")


@dataclass(frozen=True)
class AnnotatedSentence:
    tokens: tuple
    labels: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(self.tokens):
                raise ValueError(
                    f"{len(labels)} labels for {len(self.tokens)} tokens"
                )
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_surfaces(cls, surfaces, labels=None):
        tokens = tuple(Token(s, i) for i, s in enumerate(surfaces))
        return cls(tokens, tuple(labels) if labels is not None else None)

    def surfaces(self):
        return [t.surface for t in self.tokens]

    def merged_labels(self):
        if self.labels is None:
            return None
        return tuple(merge_label(l) for l in self.labels)

    def __len__(self):
        return len(self.tokens)


class ActionKind(enum.Enum):
    PASS = "pass"
    TRANSLITERATE = "transliterate"
    TRANSLATE = "translate"


@dataclass(frozen=True)
class Action:
    """What to do with a token: keep it, transliterate it, or translate it."""

    kind: ActionKind
    src: Optional[str] = None
    tgt: Optional[str] = None

    def __post_init__(self):
        if self.kind is ActionKind.TRANSLATE:
            if self.src not in LANG_CODES or self.tgt not in LANG_CODES:
                raise ValueError(f"bad language pair {self.src}->{self.tgt}")
            if self.src == self.tgt:
                raise ValueError("translation source and target must differ")
        elif self.src is not None or self.tgt is not None:
            raise ValueError(f"{self.kind.value} takes no language pair")

    @classmethod
    def pass_(cls):
        return cls(ActionKind.PASS)

    @classmethod
    def transliterate(cls):
        return cls(ActionKind.TRANSLITERATE)

    @classmethod
    def translate(cls, src, tgt):
        return cls(ActionKind.TRANSLATE, src, tgt)


@dataclass(frozen=True)
class PipelineSpec:
    """A per-label action table; total over the 5 merged labels."""

    id: str
    actions: dict = field(compare=False)

    def __post_init__(self):
        missing = [l for l in MERGED_LABELS if l not in self.actions]
        if missing:
            raise ValueError(f"pipeline {self.id!r} missing actions for {missing}")
        extra = [l for l in self.actions if l not in MERGED_LABELS]
        if extra:
            raise ValueError(f"pipeline {self.id!r} has non-merged labels {extra}")
