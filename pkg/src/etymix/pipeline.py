"""Label-conditioned processing pipelines over classified sentences.

Nine built-in pipelines dispatch one of pass / transliterate / translate
per merged etymology label. Outputs stay aligned 1:1 with input tokens;
multi-word transliterations occupy a single slot.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Action, EtymologyLabel, MERGED_LABELS, PipelineSpec, merge_label
from .core import ActionKind
from .errors import UnknownPipeline
from .lexicon import LexiconSet
from .translit import transliterate

_AR = EtymologyLabel.ARABIC
_NA = EtymologyLabel.NON_ARABIC
_CS = EtymologyLabel.CODE_SWITCHING
_NM = EtymologyLabel.NAME
_SY = EtymologyLabel.SYMBOL

_P = Action.pass_()
_X = Action.transliterate()


def _uniform(pipeline_id, action):
    return PipelineSpec(pipeline_id, {label: action for label in MERGED_LABELS})


_BUILTIN = {
    "p": _uniform("p", _P),
    "xara": _uniform("xara", _X),
    "t-ara": _uniform("t-ara", Action.translate("mlt", "ara")),
    "t-ita": _uniform("t-ita", Action.translate("mlt", "ita")),
    "t-eng": _uniform("t-eng", Action.translate("mlt", "eng")),
    "xara-p": PipelineSpec(
        "xara-p", {_AR: _X, _NA: _P, _CS: _P, _NM: _P, _SY: _P}
    ),
    "xara-t-ara": PipelineSpec(
        "xara-t-ara",
        {
            _AR: _X,
            _NA: Action.translate("mlt", "ara"),
            _CS: Action.translate("eng", "ara"),
            _NM: Action.translate("mlt", "ara"),
            _SY: _X,
        },
    ),
    "xara-t-ita": PipelineSpec(
        "xara-t-ita",
        {
            _AR: _X,
            _NA: Action.translate("mlt", "ita"),
            _CS: _P,
            _NM: Action.translate("mlt", "ita"),
            _SY: _P,
        },
    ),
    "xara-t-eng": PipelineSpec(
        "xara-t-eng",
        {
            _AR: _X,
            _NA: Action.translate("mlt", "eng"),
            _CS: _P,
            _NM: Action.translate("mlt", "eng"),
            _SY: _P,
        },
    ),
}

PIPELINE_IDS = tuple(_BUILTIN)


def builtin_pipeline(pipeline_id: str) -> PipelineSpec:
    try:
        return _BUILTIN[pipeline_id]
    except KeyError:
        raise UnknownPipeline(pipeline_id)


@dataclass(frozen=True)
class ProcessedSentence:
    outputs: tuple
    actions_taken: tuple
    lexicon_misses: int

    def __post_init__(self):
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "actions_taken", tuple(self.actions_taken))
        if len(self.outputs) != len(self.actions_taken):
            raise ValueError("outputs and actions are not parallel")


def required_lexicons(spec: PipelineSpec):
    return sorted(
        {
            (a.src, a.tgt)
            for a in spec.actions.values()
            if a.kind is ActionKind.TRANSLATE
        }
    )


def process(
    sentence,
    labels,
    spec: PipelineSpec,
    table=None,
    lexicons: LexiconSet = None,
    ranker=None,
) -> ProcessedSentence:
    """Apply the pipeline action for each token's merged label."""
    labels = [merge_label(l) for l in labels]
    if len(labels) != len(sentence):
        raise ValueError("labels are not parallel to tokens")
    lexicons = lexicons or LexiconSet()
    # Fail up front if any pipeline action needs an unloaded lexicon.
    for src, tgt in required_lexicons(spec):
        lexicons.get(src, tgt)
    outputs = []
    actions = []
    misses = 0
    for token, label in zip(sentence.tokens, labels):
        action = spec.actions[label]
        actions.append(action)
        if action.kind is ActionKind.PASS:
            outputs.append(token.surface)
        elif action.kind is ActionKind.TRANSLITERATE:
            outputs.append(transliterate(token.surface, table, ranker))
        else:
            translated, hit = lexicons.get(action.src, action.tgt).lookup(token.surface)
            if not hit:
                misses += 1
            outputs.append(translated)
    return ProcessedSentence(tuple(outputs), tuple(actions), misses)


@dataclass(frozen=True)
class ProcessReport:
    action_counts: dict  # "pass" / "transliterate" / "translate" -> count
    lexicon_misses: int
    sentences: int
    tokens: int

    def to_dict(self):
        return {
            "action_counts": dict(self.action_counts),
            "lexicon_misses": self.lexicon_misses,
            "sentences": self.sentences,
            "tokens": self.tokens,
        }


def process_dataset(
    dataset,
    spec: PipelineSpec,
    table=None,
    lexicons: LexiconSet = None,
    classifier=None,
    cfg=None,
    use_gold=False,
    ranker=None,
):
    """Classify (or take gold labels) and process every sentence.

    Returns (list of ProcessedSentence, ProcessReport). Predicted labels are
    merged before dispatch; task annotation columns are untouched because
    outputs stay parallel to the input tokens.
    """
    from . import classify as _classify

    processed = []
    action_counts = {kind.value: 0 for kind in ActionKind}
    misses = 0
    tokens = 0
    for sentence in dataset:
        if use_gold:
            if sentence.labels is None:
                raise ValueError("use_gold requested but sentence has no labels")
            labels = sentence.labels
        else:
            if classifier is None:
                raise ValueError("either a classifier or use_gold is required")
            labels = _classify.predict(classifier, sentence, cfg)
        result = process(sentence, labels, spec, table, lexicons, ranker)
        processed.append(result)
        for action in result.actions_taken:
            action_counts[action.kind.value] += 1
        misses += result.lexicon_misses
        tokens += len(result.outputs)
    report = ProcessReport(action_counts, misses, len(processed), tokens)
    return processed, report
