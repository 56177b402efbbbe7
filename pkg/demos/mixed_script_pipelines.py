"""Run one sentence through all nine processing pipelines.

Each token carries an etymology label; each pipeline decides per label
whether to pass the token through, transliterate it into Arabic script,
or translate it with a word-level lexicon. The result is mixed-script
text whose composition depends on the pipeline.

Run with: python demos/mixed_script_pipelines.py
"""

from etymix import (
    AnnotatedSentence,
    EtymologyLabel,
    LexiconSet,
    TranslationLexicon,
    builtin_pipeline,
    default_table,
    process,
)
from etymix.pipeline import PIPELINE_IDS

L = EtymologyLabel

tokens = ["Il-", "karozza", "Porsche", "tal-", "2022",
          "għandha", "speed", "fenomenali", "!"]
labels = [L.ARABIC, L.NON_ARABIC, L.NAME, L.ARABIC, L.SYMBOL,
          L.ARABIC, L.CODE_SWITCHING, L.NON_ARABIC, L.SYMBOL]
sentence = AnnotatedSentence.from_surfaces(tokens, labels)

# Tiny word-level lexicons, just enough to cover this sentence. Real use
# would load full lexicons from TSV files via etymix.ingest.read_lexicon.
lexicons = LexiconSet([
    TranslationLexicon("mlt", "ara", {
        "il-": "ال", "karozza": "ترام", "porsche": "بورشه", "tal-": "ل",
        "2022": "2022", "għandha": "هو", "speed": "سرعة",
        "fenomenali": "هائل", "!": "!",
    }),
    TranslationLexicon("mlt", "ita", {
        "il-": "IL", "karozza": "tram", "porsche": "Porsche", "tal-": "Di",
        "2022": "2022", "għandha": "Esso", "speed": "velocità",
        "fenomenali": "fenomenale", "!": "!",
    }),
    TranslationLexicon("mlt", "eng", {
        "il-": "The", "karozza": "streetcar", "porsche": "Porsche",
        "tal-": "of", "2022": "2022", "għandha": "it", "speed": "speed",
        "fenomenali": "phenomenal", "!": "!",
    }),
    # Code-switched English inside a translate-to-Arabic pipeline is
    # translated directly from English.
    TranslationLexicon("eng", "ara", {"speed": "سرعة", "2022": "2022", "!": "!"}),
])

table = default_table()
print(" ".join(tokens))
print()
for pipeline_id in PIPELINE_IDS:
    result = process(sentence, labels, builtin_pipeline(pipeline_id), table, lexicons)
    print(f"{pipeline_id:12s} {' '.join(result.outputs)}")
