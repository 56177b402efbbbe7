"""Command-line entry point.

Subcommands: train, classify, evaluate, process, build-ngrams, translit.
A TOML config file may supply any option; explicit command-line values
override the file, which overrides built-in defaults.
Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path

from . import __version__, MODEL_FORMAT_VERSION
from . import classify as _classify
from . import evalkit, ingest, pipeline as _pipeline
from .errors import EtymixError
from .features import FEATURE_GROUPS, FeatureConfig
from .lexicon import LexiconSet
from .translit import default_table, transliterate

DEFAULT_SEED = 42

LEXICON_PAIRS = ("mlt-ara", "mlt-ita", "mlt-eng", "eng-ara")

# Built-in defaults; anything here may also come from the config file.
DEFAULTS = {
    "scheme": "full",
    "folds": 10,
    "seed": DEFAULT_SEED,
    "features": "all",
    "context_window": 1,
    "l2": 0.1,
    "max_iter": 200,
    "k": 197,
    "sizes": "2,3",
    "threads": 1,
    "lexicon": [],
}


class UsageError(Exception):
    pass


def _add_resource_args(parser):
    parser.add_argument("--charmap", help="grapheme map TSV (default: shipped map)")
    parser.add_argument(
        "--closed-class", help="closed-class token TSV (default: shipped list)"
    )
    parser.add_argument(
        "--lexicon",
        action="append",
        metavar="PAIR=FILE",
        help=f"translation lexicon, pair one of {', '.join(LEXICON_PAIRS)}",
    )
    parser.add_argument("--ngram-list", help="frequent n-gram list, one per line")


def _add_feature_args(parser):
    parser.add_argument(
        "--features",
        help=f"comma-separated feature groups out of {', '.join(FEATURE_GROUPS)}, "
        "'all', or 'none'",
    )
    parser.add_argument("--context-window", type=int)
    parser.add_argument("--l2", type=float)
    parser.add_argument("--max-iter", type=int)
    parser.add_argument("--seed", type=int)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="etymix",
        description="Etymology-conditioned processing of Maltese text.",
        argument_default=None,
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"etymix {__version__} (model format v{MODEL_FORMAT_VERSION})",
    )
    parser.add_argument("--config", help="TOML file supplying defaults for any option")
    parser.add_argument("--threads", type=int, help="reserved; default 1")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translit", help="transliterate one token per line")
    _add_resource_args(p)
    p.add_argument("--in", dest="infile", help="input file (default: stdin)")
    p.add_argument("--out", dest="outfile", help="output file (default: stdout)")

    p = sub.add_parser("build-ngrams", help="extract frequent character n-grams")
    p.add_argument("--corpus")
    p.add_argument("--k", type=int)
    p.add_argument("--sizes")
    p.add_argument("--out", dest="outfile")

    p = sub.add_parser("train", help="train a classifier")
    p.add_argument("--model", choices=("mle", "crf", "ensemble"))
    p.add_argument("--data", help="labeled dataset TSV")
    p.add_argument("--scheme", choices=("full", "merged"))
    p.add_argument("--out", dest="outfile")
    _add_resource_args(p)
    _add_feature_args(p)

    p = sub.add_parser("classify", help="label a dataset with a trained model")
    p.add_argument("--model-file")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out", dest="outfile")
    _add_resource_args(p)
    _add_feature_args(p)

    p = sub.add_parser("evaluate", help="k-fold cross-validation")
    p.add_argument("--model", choices=("heuristic", "mle", "crf", "ensemble"))
    p.add_argument("--data")
    p.add_argument("--scheme", choices=("full", "merged"))
    p.add_argument("--folds", type=int)
    p.add_argument("--report", help="output JSON report")
    p.add_argument("--confusion-csv", help="optional confusion matrix CSV")
    p.add_argument(
        "--ablation", action="store_true", help="run the CRF feature ablation sequence"
    )
    _add_resource_args(p)
    _add_feature_args(p)

    p = sub.add_parser("process", help="run a processing pipeline over a dataset")
    p.add_argument("--pipeline", choices=_pipeline.PIPELINE_IDS)
    p.add_argument("--model", dest="model_file", help="trained model file")
    p.add_argument("--use-gold", action="store_true", help="use gold labels")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out", dest="outfile")
    p.add_argument("--report", help="optional JSON report")
    _add_resource_args(p)
    _add_feature_args(p)

    return parser


def _resolve(args):
    """Merge: explicit CLI value > config file > built-in default."""
    config = {}
    if args.config:
        with open(args.config, "rb") as fh:
            for key, value in tomllib.load(fh).items():
                config[key.replace("-", "_")] = value
    for key, value in config.items():
        if not hasattr(args, key):
            raise UsageError(f"config key {key!r} does not apply to {args.command!r}")
        current = getattr(args, key)
        if current is None or current is False or current == []:
            setattr(args, key, value)
    for key, value in DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    if getattr(args, "lexicon", None) is None:
        args.lexicon = []
    return args


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            flag = {"infile": "--in", "outfile": "--out", "model_file": "--model"}.get(
                name, "--" + name.replace("_", "-")
            )
            raise UsageError(f"missing required option {flag}")


def _load_table(args):
    if args.charmap or args.closed_class:
        if not (args.charmap and args.closed_class):
            raise UsageError("--charmap and --closed-class must be given together")
        table = ingest.read_charmap(args.charmap)
        return table.with_closed_class(ingest.read_closed_class(args.closed_class))
    return default_table()


def _load_lexicons(args) -> LexiconSet:
    lexicons = LexiconSet()
    for item in args.lexicon:
        if "=" not in item:
            raise UsageError(f"--lexicon expects PAIR=FILE, got {item!r}")
        pair, path = item.split("=", 1)
        if pair not in LEXICON_PAIRS:
            raise UsageError(f"unknown lexicon pair {pair!r}")
        src, tgt = pair.split("-")
        lex, _ = ingest.read_lexicon(path, src, tgt)
        lexicons.add(lex)
    return lexicons


def _feature_config(args, table, lexicons: LexiconSet):
    if args.features == "all":
        groups = frozenset(FEATURE_GROUPS)
    elif args.features == "none":
        groups = frozenset()
    else:
        groups = frozenset(g.strip() for g in args.features.split(",") if g.strip())
    ngram_list = ingest.read_ngram_list(args.ngram_list) if args.ngram_list else ()
    if "ngrams" in groups and not ngram_list:
        raise UsageError("feature group 'ngrams' requires --ngram-list")
    cfg_lex = {}
    for tgt in ("ara", "ita", "eng"):
        if lexicons.has("mlt", tgt):
            cfg_lex[tgt] = lexicons.get("mlt", tgt)
    if ({"trans2", "distances"} & groups) and len(cfg_lex) < 3:
        raise UsageError(
            "feature groups trans2/distances require --lexicon mlt-ara/mlt-ita/mlt-eng"
        )
    return FeatureConfig(
        groups_enabled=groups,
        ngram_list=tuple(ngram_list),
        closed_class_set=frozenset(table.closed_class),
        lexicons=cfg_lex,
        translit_table=table,
        context_window=args.context_window,
    )


def _log_config(args):
    resolved = {k: v for k, v in sorted(vars(args).items()) if k != "config"}
    print(f"etymix: resolved config: {resolved}", file=sys.stderr)


def _cmd_translit(args):
    table = _load_table(args)
    lines = (
        Path(args.infile).read_text(encoding="utf-8").splitlines()
        if args.infile
        else sys.stdin.read().splitlines()
    )
    out = [transliterate(line.strip(), table) for line in lines if line.strip()]
    text = "".join(s + "\n" for s in out)
    if args.outfile:
        Path(args.outfile).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_build_ngrams(args):
    _require(args, "corpus", "outfile")
    sizes = tuple(int(s) for s in args.sizes.split(","))
    grams = ingest.build_ngram_list(args.corpus, args.k, sizes)
    ingest.write_ngram_list(grams, args.outfile)
    print(f"etymix: wrote {len(grams)} n-grams to {args.outfile}", file=sys.stderr)


def _hyper(args):
    return {"l2": args.l2, "max_iter": args.max_iter, "seed": args.seed}


def _cmd_train(args):
    _require(args, "model", "data", "outfile")
    data = ingest.read_dataset(args.data)
    table = _load_table(args)
    cfg = _feature_config(args, table, _load_lexicons(args))
    if args.model == "mle":
        model = _classify.mle_train(data, args.scheme)
    elif args.model == "crf":
        model = _classify.crf_train(data, cfg, args.scheme, _hyper(args))
    else:
        model = _classify.ensemble_train(data, cfg, args.scheme, _hyper(args))
    _classify.save_model(model, args.outfile)
    print(f"etymix: saved {args.model} model to {args.outfile}", file=sys.stderr)


def _cmd_classify(args):
    _require(args, "model_file", "infile", "outfile")
    table = _load_table(args)
    cfg = _feature_config(args, table, _load_lexicons(args))
    model = _classify.load_model(args.model_file, cfg)
    data = ingest.read_dataset(args.infile)
    sentences = [
        sentence.__class__(
            sentence.tokens, tuple(_classify.predict(model, sentence, cfg))
        )
        for sentence in data
    ]
    ingest.write_dataset(ingest.DatasetFile(tuple(sentences)), args.outfile)


def _cmd_evaluate(args):
    _require(args, "model", "data", "report")
    data = ingest.read_dataset(args.data)
    table = _load_table(args)
    cfg = _feature_config(args, table, _load_lexicons(args))
    folds = evalkit.make_folds(data, args.folds, args.seed)
    if args.ablation:
        reports = evalkit.ablation(
            data, folds, cfg, scheme=args.scheme, hyper=_hyper(args)
        )
        payload = json.dumps(
            [r.to_dict() for r in reports], ensure_ascii=False, sort_keys=True, indent=2
        )
        Path(args.report).write_text(payload + "\n", encoding="utf-8")
        return
    report = evalkit.evaluate(
        data, args.model, cfg, folds, scheme=args.scheme, hyper=_hyper(args)
    )
    Path(args.report).write_text(report.to_json() + "\n", encoding="utf-8")
    if args.confusion_csv:
        Path(args.confusion_csv).write_text(
            evalkit.confusion_csv(report), encoding="utf-8"
        )
    print(
        f"etymix: {args.model}/{args.scheme} accuracy all={report.accuracy_all} "
        f"seen={report.accuracy_seen} unseen={report.accuracy_unseen}",
        file=sys.stderr,
    )


def _cmd_process(args):
    _require(args, "pipeline", "infile", "outfile")
    if bool(args.model_file) == bool(args.use_gold):
        raise UsageError("exactly one of --model or --use-gold is required")
    data = ingest.read_dataset(args.infile)
    table = _load_table(args)
    lexicons = _load_lexicons(args)
    spec = _pipeline.builtin_pipeline(args.pipeline)
    classifier = cfg = None
    if args.model_file:
        cfg = _feature_config(args, table, lexicons)
        classifier = _classify.load_model(args.model_file, cfg)
    processed, report = _pipeline.process_dataset(
        data,
        spec,
        table=table,
        lexicons=lexicons,
        classifier=classifier,
        cfg=cfg,
        use_gold=args.use_gold,
    )
    out = []
    for sentence, result in zip(data, processed):
        for i, output in enumerate(result.outputs):
            if sentence.labels is not None:
                out.append(f"{output}\t{sentence.labels[i].value}\n")
            else:
                out.append(f"{output}\n")
        out.append("\n")
    Path(args.outfile).write_text("".join(out), encoding="utf-8")
    if args.report:
        Path(args.report).write_text(
            json.dumps(report.to_dict(), ensure_ascii=False, sort_keys=True, indent=2)
            + "\n",
            encoding="utf-8",
        )


_COMMANDS = {
    "translit": _cmd_translit,
    "build-ngrams": _cmd_build_ngrams,
    "train": _cmd_train,
    "classify": _cmd_classify,
    "evaluate": _cmd_evaluate,
    "process": _cmd_process,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the contract here is 1.
        return 0 if exc.code == 0 else 1
    try:
        args = _resolve(args)
        _log_config(args)
        _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"etymix: {exc}", file=sys.stderr)
        return 1
    except (EtymixError, OSError, ValueError) as exc:
        print(f"etymix: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
