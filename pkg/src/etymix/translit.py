"""Maltese (Latin script) to Arabic script transliteration.

Closed-class tokens map as whole words; everything else is scanned left to
right with longest-match grapheme lookup. Graphemes may have several Arabic
candidates ordered by priority; a pluggable ranker may override the default
highest-priority choice. Digits and mapped symbols go through the symbol
map; anything unmapped passes through unchanged.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable, Optional

# A ranker picks one candidate string from a non-singleton candidate list,
# given the grapheme and its context (surface, position).
CandidateRanker = Callable[[str, tuple, str, int], str]


@dataclass(frozen=True)
class TransliterationTable:
    grapheme_map: dict  # grapheme -> tuple of (arabic, priority), priority desc
    closed_class: dict  # lower-cased token -> arabic string (may contain spaces)
    symbol_map: dict  # single code point -> string

    _max_len: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        for grapheme, candidates in self.grapheme_map.items():
            if not grapheme:
                raise ValueError("empty grapheme key")
            priorities = [p for _, p in candidates]
            if priorities != sorted(priorities, reverse=True):
                raise ValueError(f"candidates for {grapheme!r} not priority-sorted")
        max_len = max((len(g) for g in self.grapheme_map), default=0)
        object.__setattr__(self, "_max_len", max_len)

    def with_closed_class(self, closed_class):
        return TransliterationTable(self.grapheme_map, dict(closed_class), self.symbol_map)

    @property
    def max_grapheme_len(self):
        return self._max_len


def transliterate(
    surface: str,
    table: TransliterationTable,
    ranker: Optional[CandidateRanker] = None,
) -> str:
    """Transliterate one token; total (unmapped input passes through)."""
    surface = unicodedata.normalize("NFC", surface)
    lowered = surface.lower()
    if lowered in table.closed_class:
        return table.closed_class[lowered]
    out = []
    i = 0
    n = len(lowered)
    while i < n:
        match = None
        for length in range(min(table.max_grapheme_len, n - i), 0, -1):
            candidate = lowered[i : i + length]
            if candidate in table.grapheme_map:
                match = candidate
                break
        if match is not None:
            candidates = table.grapheme_map[match]
            if ranker is not None and len(candidates) > 1:
                out.append(ranker(match, candidates, lowered, i))
            else:
                out.append(candidates[0][0])
            i += len(match)
            continue
        ch = lowered[i]
        out.append(table.symbol_map.get(ch, surface[i]))
        i += 1
    return "".join(out)


def transliterate_sentence(sentence, table, ranker=None):
    """One output string per token; multi-word mappings stay in one slot."""
    return [transliterate(t.surface, table, ranker) for t in sentence.tokens]


@lru_cache(maxsize=1)
def default_table() -> TransliterationTable:
    """The shipped character map and closed-class list."""
    from . import ingest

    data = resources.files("etymix.data")
    with resources.as_file(data / "charmap.tsv") as p:
        table = ingest.read_charmap(p)
    with resources.as_file(data / "closed_class.tsv") as p:
        closed = ingest.read_closed_class(p)
    return table.with_closed_class(closed)
