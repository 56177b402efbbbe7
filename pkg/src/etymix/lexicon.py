"""Static word-level translation lexicons with pass-through fallback."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

from .errors import MissingLexicon


@dataclass(frozen=True)
class TranslationLexicon:
    src: str
    tgt: str
    entries: dict  # exact surface -> translation

    def __post_init__(self):
        if self.src == self.tgt:
            raise ValueError("lexicon source and target must differ")
        # Case-folded view for fallback lookups; exact entries take precedence.
        folded = {}
        for key, value in self.entries.items():
            folded.setdefault(key.casefold(), value)
        object.__setattr__(self, "_folded", folded)

    def lookup(self, surface: str):
        """Exact match, then case-folded match, then pass-through.

        Returns (translation, hit).
        """
        surface = unicodedata.normalize("NFC", surface)
        if surface in self.entries:
            return self.entries[surface], True
        folded = surface.casefold()
        if folded in self._folded:
            return self._folded[folded], True
        return surface, False

    def __len__(self):
        return len(self.entries)


def translate_token(surface: str, lex: TranslationLexicon):
    return lex.lookup(surface)


class LexiconSet:
    """The lexicon slots the pipelines can reference, keyed by (src, tgt)."""

    def __init__(self, lexicons=()):
        self._by_pair = {}
        for lex in lexicons:
            self.add(lex)

    def add(self, lex: TranslationLexicon):
        self._by_pair[(lex.src, lex.tgt)] = lex

    def get(self, src, tgt) -> TranslationLexicon:
        try:
            return self._by_pair[(src, tgt)]
        except KeyError:
            raise MissingLexicon(src, tgt)

    def has(self, src, tgt):
        return (src, tgt) in self._by_pair

    def pairs(self):
        return sorted(self._by_pair)
