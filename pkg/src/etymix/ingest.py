"""File formats: token/label datasets, lexicons, character maps, n-gram lists.

All readers accept UTF-8 with LF or CRLF line endings and return immutable
structures. Dataset files are TSV with one `token<TAB>label` pair per line,
blank lines separating sentences, and `#`-prefixed comment lines ignored.
"""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .core import AnnotatedSentence, EtymologyLabel, Token
from .errors import (
    DuplicateGrapheme,
    EmptyCorpus,
    MalformedLine,
    MixedLabeling,
    UnknownLabel,
)
from .lexicon import TranslationLexicon
from .translit import TransliterationTable


@dataclass(frozen=True)
class DatasetFile:
    sentences: tuple

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)


def _read_lines(path):
    text = Path(path).read_text(encoding="utf-8")
    return text.split("\n")


def read_dataset(path) -> DatasetFile:
    """Parse a token/label TSV into sentences.

    A file may be entirely labeled or entirely unlabeled; mixing the two
    raises MixedLabeling.
    """
    sentences = []
    cur_tokens, cur_labels = [], []
    labeled = None  # unknown until the first token line

    def flush():
        nonlocal cur_tokens, cur_labels
        if cur_tokens:
            labels = tuple(cur_labels) if labeled else None
            sentences.append(
                AnnotatedSentence.from_surfaces(cur_tokens, labels)
            )
        cur_tokens, cur_labels = [], []

    for line_no, raw in enumerate(_read_lines(path), start=1):
        line = raw.rstrip("\r")
        if line.startswith("#"):
            continue
        if not line.strip():
            flush()
            continue
        cols = line.split("\t")
        if len(cols) == 1:
            if labeled is True:
                raise MixedLabeling(line_no)
            labeled = False
            cur_tokens.append(unicodedata.normalize("NFC", cols[0]))
        elif len(cols) == 2:
            if labeled is False:
                raise MixedLabeling(line_no)
            labeled = True
            try:
                label = EtymologyLabel.parse(cols[1])
            except KeyError:
                raise UnknownLabel(line_no, cols[1])
            cur_tokens.append(unicodedata.normalize("NFC", cols[0]))
            cur_labels.append(label)
        else:
            raise MalformedLine(line_no, f"expected 1 or 2 columns, got {len(cols)}")
    flush()
    return DatasetFile(tuple(sentences))


def write_dataset(dataset: DatasetFile, path) -> None:
    """Inverse of read_dataset; write(read(f)) is byte-identical for
    comment-free LF input."""
    out = []
    for sentence in dataset.sentences:
        for i, token in enumerate(sentence.tokens):
            if sentence.labels is not None:
                out.append(f"{token.surface}\t{sentence.labels[i].value}\n")
            else:
                out.append(f"{token.surface}\n")
        out.append("\n")
    Path(path).write_text("".join(out), encoding="utf-8")


def read_lexicon(path, src, tgt):
    """Load a two-column translation TSV. Duplicate keys: last entry wins.

    Returns (lexicon, duplicate_count).
    """
    entries = {}
    duplicates = 0
    for line_no, raw in enumerate(_read_lines(path), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise MalformedLine(line_no, f"expected 2 columns, got {len(cols)}")
        key = unicodedata.normalize("NFC", cols[0])
        if key in entries:
            duplicates += 1
        entries[key] = unicodedata.normalize("NFC", cols[1])
    return TranslationLexicon(src, tgt, entries), duplicates


def _is_symbol_grapheme(grapheme):
    if len(grapheme) != 1:
        return False
    cat = unicodedata.category(grapheme)
    return cat == "Nd" or cat.startswith("P") or cat.startswith("S")


def read_charmap(path) -> TransliterationTable:
    """Load grapheme mappings: `grapheme<TAB>arabic_string[<TAB>priority]`.

    Single-codepoint digit/punctuation/symbol graphemes go into the symbol
    map; everything else into the (possibly multi-candidate) grapheme map.
    """
    grapheme_entries = {}  # grapheme -> {priority: arabic}
    symbol_map = {}
    for line_no, raw in enumerate(_read_lines(path), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) not in (2, 3):
            raise MalformedLine(line_no, f"expected 2 or 3 columns, got {len(cols)}")
        grapheme = unicodedata.normalize("NFC", cols[0])
        if not grapheme:
            raise MalformedLine(line_no, "empty grapheme")
        arabic = unicodedata.normalize("NFC", cols[1])
        if len(cols) == 3:
            try:
                priority = int(cols[2])
            except ValueError:
                raise MalformedLine(line_no, f"bad priority {cols[2]!r}")
        else:
            priority = 0
        if _is_symbol_grapheme(grapheme):
            if grapheme in symbol_map:
                raise DuplicateGrapheme(grapheme, priority)
            symbol_map[grapheme] = arabic
            continue
        by_priority = grapheme_entries.setdefault(grapheme, {})
        if priority in by_priority:
            raise DuplicateGrapheme(grapheme, priority)
        by_priority[priority] = arabic
    grapheme_map = {
        g: tuple(
            (arabic, priority)
            for priority, arabic in sorted(by_p.items(), reverse=True)
        )
        for g, by_p in grapheme_entries.items()
    }
    return TransliterationTable(grapheme_map, {}, symbol_map)


def read_closed_class(path) -> dict:
    """Load `maltese_token<TAB>arabic_string` whole-token mappings."""
    mapping = {}
    for line_no, raw in enumerate(_read_lines(path), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2:
            raise MalformedLine(line_no, f"expected 2 columns, got {len(cols)}")
        key = unicodedata.normalize("NFC", cols[0]).lower()
        if key in mapping:
            raise DuplicateGrapheme(key, 0)
        mapping[key] = unicodedata.normalize("NFC", cols[1])
    return mapping


def build_ngram_list(corpus_path, k=197, n_sizes=(2, 3)):
    """Most frequent character n-grams over the corpus's unique word types.

    Each lower-cased type contributes each of its distinct n-grams once.
    Ties are broken lexicographically for determinism.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    text = Path(corpus_path).read_text(encoding="utf-8")
    types = {word.lower() for word in text.split()}
    if not types:
        raise EmptyCorpus(str(corpus_path))
    counts = Counter()
    for word in types:
        grams = set()
        for n in n_sizes:
            grams.update(word[i : i + n] for i in range(len(word) - n + 1))
        counts.update(grams)
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [gram for gram, _ in ranked[:k]]


def read_ngram_list(path):
    """One n-gram per line."""
    grams = []
    for raw in _read_lines(path):
        line = raw.rstrip("\r")
        if line.strip() and not line.startswith("#"):
            grams.append(unicodedata.normalize("NFC", line.strip()))
    return grams


def write_ngram_list(grams, path):
    Path(path).write_text("".join(g + "\n" for g in grams), encoding="utf-8")


def label_tallies(dataset: DatasetFile):
    """Token and type counts per full-scheme label (the annotation summary)."""
    token_counts = Counter()
    type_labels = {}
    for sentence in dataset.sentences:
        if sentence.labels is None:
            continue
        for token, label in zip(sentence.tokens, sentence.labels):
            token_counts[label] += 1
            type_labels.setdefault(token.surface, Counter())[label] += 1
    type_counts = Counter()
    for surface, counter in type_labels.items():
        # A type counts under its most frequent label.
        label = max(counter, key=lambda l: (counter[l], -_label_rank(l)))
        type_counts[label] += 1
    return token_counts, type_counts, len(type_labels)


def _label_rank(label):
    from .core import FULL_LABELS

    return FULL_LABELS.index(label)
