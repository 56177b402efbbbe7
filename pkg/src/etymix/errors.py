"""Exception types raised across the package."""


class EtymixError(Exception):
    """Base class for all errors raised by this package."""


class MalformedLine(EtymixError):
    def __init__(self, line_no, message="malformed line"):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UnknownLabel(EtymixError):
    def __init__(self, line_no, text):
        super().__init__(f"line {line_no}: unknown label {text!r}")
        self.line_no = line_no
        self.text = text


class MixedLabeling(EtymixError):
    """A dataset file mixes labeled and unlabeled lines."""

    def __init__(self, line_no):
        super().__init__(f"line {line_no}: mixing labeled and unlabeled lines")
        self.line_no = line_no


class DuplicateGrapheme(EtymixError):
    def __init__(self, grapheme, priority):
        super().__init__(f"duplicate grapheme {grapheme!r} at priority {priority}")
        self.grapheme = grapheme
        self.priority = priority


class EmptyCorpus(EtymixError):
    pass


class UnlabeledData(EtymixError):
    pass


class EmptyData(EtymixError):
    pass


class NonFiniteObjective(EtymixError):
    """CRF training objective became NaN or infinite."""


class ConfigMismatch(EtymixError):
    """Feature configuration does not match the one a model was trained with."""


class VersionMismatch(EtymixError):
    pass


class CorruptFile(EtymixError):
    pass


class UnknownPipeline(EtymixError):
    def __init__(self, pipeline_id):
        super().__init__(f"unknown pipeline {pipeline_id!r}")
        self.pipeline_id = pipeline_id


class MissingLexicon(EtymixError):
    def __init__(self, src, tgt):
        super().__init__(f"no lexicon loaded for {src}->{tgt}")
        self.src = src
        self.tgt = tgt


class TooFewSentences(EtymixError):
    pass


class IndexOutOfRange(EtymixError, IndexError):
    pass
