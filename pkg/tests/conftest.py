import re

import pytest

from etymix import (
    AnnotatedSentence,
    EtymologyLabel,
    FeatureConfig,
    LexiconSet,
    TranslationLexicon,
    default_table,
)

L = EtymologyLabel

EXAMPLE_TOKENS = [
    "Il-", "karozza", "Porsche", "tal-", "2022",
    "għandha", "speed", "fenomenali", "!",
]

EXAMPLE_LABELS = [
    L.ARABIC, L.NON_ARABIC, L.NAME, L.ARABIC, L.SYMBOL,
    L.ARABIC, L.CODE_SWITCHING, L.NON_ARABIC, L.SYMBOL,
]

# Word-level translation fixtures for the example sentence, one entry per
# token and language pair. Keys are lower-cased; the case-folded fallback
# covers the cased surfaces.
MLT_ARA = {
    "il-": "ال", "karozza": "ترام", "porsche": "بورشه", "tal-": "ل",
    "2022": "2022", "għandha": "هو", "speed": "سرعة", "fenomenali": "هائل",
    "!": "!",
}
MLT_ITA = {
    "il-": "IL", "karozza": "tram", "porsche": "Porsche", "tal-": "Di",
    "2022": "2022", "għandha": "Esso", "speed": "velocità",
    "fenomenali": "fenomenale", "!": "!",
}
MLT_ENG = {
    "il-": "The", "karozza": "streetcar", "porsche": "Porsche", "tal-": "of",
    "2022": "2022", "għandha": "it", "speed": "speed",
    "fenomenali": "phenomenal", "!": "!",
}
ENG_ARA = {"speed": "سرعة", "2022": "2022", "!": "!"}

EXAMPLE_ROWS = {
    "p": EXAMPLE_TOKENS,
    "xara": ["ال", "كردزة", "برسكهي", "تاع ال", "٢٠٢٢", "عندها", "صباد", "فنمنلي", "!"],
    "t-ara": ["ال", "ترام", "بورشه", "ل", "2022", "هو", "سرعة", "هائل", "!"],
    "t-ita": ["IL", "tram", "Porsche", "Di", "2022", "Esso", "velocità", "fenomenale", "!"],
    "t-eng": ["The", "streetcar", "Porsche", "of", "2022", "it", "speed", "phenomenal", "!"],
    "xara-p": ["ال", "karozza", "Porsche", "تاع ال", "2022", "عندها", "speed", "fenomenali", "!"],
    "xara-t-ara": ["ال", "ترام", "بورشه", "تاع ال", "٢٠٢٢", "عندها", "سرعة", "هائل", "!"],
    "xara-t-ita": ["ال", "tram", "Porsche", "تاع ال", "2022", "عندها", "speed", "fenomenale", "!"],
    "xara-t-eng": ["ال", "streetcar", "Porsche", "تاع ال", "2022", "عندها", "speed", "phenomenal", "!"],
}


@pytest.fixture(scope="session")
def table():
    return default_table()


@pytest.fixture(scope="session")
def example_sentence():
    return AnnotatedSentence.from_surfaces(EXAMPLE_TOKENS, EXAMPLE_LABELS)


@pytest.fixture(scope="session")
def example_lexicons():
    return LexiconSet(
        [
            TranslationLexicon("mlt", "ara", MLT_ARA),
            TranslationLexicon("mlt", "ita", MLT_ITA),
            TranslationLexicon("mlt", "eng", MLT_ENG),
            TranslationLexicon("eng", "ara", ENG_ARA),
        ]
    )


@pytest.fixture(scope="session")
def example_cfg(table, example_lexicons):
    return FeatureConfig(
        groups_enabled=frozenset({"orthography", "closed_class", "trans2", "distances"}),
        closed_class_set=frozenset(table.closed_class),
        lexicons={
            "ara": example_lexicons.get("mlt", "ara"),
            "ita": example_lexicons.get("mlt", "ita"),
            "eng": example_lexicons.get("mlt", "eng"),
        },
        translit_table=table,
    )


CRITERIA = {
    1: "dispatch fidelity across all pipelines and labels",
    2: "example sentence end-to-end, all nine pipeline rows",
    3: "edit distance matches the brute-force oracle",
    4: "Viterbi matches exhaustive argmax",
    5: "forward-backward marginals normalize",
    6: "CRF trains to >= 99% on separable data, objective monotone",
    7: "ensemble gating and unseen-accuracy equality with the CRF",
    8: "MLE is exact on seen unambiguous tokens",
    9: "heuristic rule table, all twelve branches",
    10: "byte-identical evaluation reports under a fixed seed",
    11: "annotation tallies over the full corpus",
    12: "merged-scheme cross-validation accuracies within tolerance",
    13: "feature ablation ordering on the full scheme",
    14: "heuristic well below MLE with a small seen/unseen gap",
}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = {}
    for outcome in ("passed", "failed", "error", "skipped"):
        for report in terminalreporter.stats.get(outcome, []):
            match = re.search(r"test_criterion_(\d+)", getattr(report, "nodeid", ""))
            if match:
                results[int(match.group(1))] = outcome.upper()
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        line = f"criterion {number:2d} [{results[number]:>7s}] {CRITERIA[number]}"
        terminalreporter.write_line(line)
