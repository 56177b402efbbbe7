"""Acceptance suite.

Each criterion is one test; a pass/fail line per criterion is printed in
the terminal summary (see conftest). All tests here are self-contained
and need no external data.
"""

import itertools
import random
from functools import lru_cache

import numpy as np
import pytest

from etymix import (
    Action,
    AnnotatedSentence,
    EtymologyLabel,
    FeatureConfig,
    LexiconSet,
    MERGED_LABELS,
    TranslationLexicon,
    builtin_pipeline,
    crf_predict,
    evaluate,
    make_folds,
    mle_train,
    process,
)
from etymix.classify import HeuristicClassifier, crf_train, ensemble_train
from etymix.cli import main
from etymix.crf import forward_backward, sequence_score, viterbi_decode
from etymix.features import levenshtein
from etymix.pipeline import PIPELINE_IDS
from etymix.translit import TransliterationTable

from conftest import EXAMPLE_ROWS, EXAMPLE_TOKENS

L = EtymologyLabel

P, X = Action.pass_(), Action.transliterate()
T = Action.translate
EXPECTED_DISPATCH = {
    "p": (P, P, P, P, P),
    "xara": (X, X, X, X, X),
    "t-ara": (T("mlt", "ara"),) * 5,
    "t-ita": (T("mlt", "ita"),) * 5,
    "t-eng": (T("mlt", "eng"),) * 5,
    "xara-p": (X, P, P, P, P),
    "xara-t-ara": (X, T("mlt", "ara"), T("eng", "ara"), T("mlt", "ara"), X),
    "xara-t-ita": (X, T("mlt", "ita"), P, T("mlt", "ita"), P),
    "xara-t-eng": (X, T("mlt", "eng"), P, T("mlt", "eng"), P),
}


def test_criterion_01_dispatch_fidelity():
    assert set(PIPELINE_IDS) == set(EXPECTED_DISPATCH)
    checked = 0
    for pipeline_id, row in EXPECTED_DISPATCH.items():
        spec = builtin_pipeline(pipeline_id)
        for label, expected in zip(MERGED_LABELS, row):
            assert spec.actions[label] == expected, (pipeline_id, label)
            checked += 1
    assert checked == 45


def test_criterion_02_example_sentence_end_to_end(
    table, example_sentence, example_lexicons
):
    for pipeline_id, expected in EXAMPLE_ROWS.items():
        result = process(
            example_sentence,
            example_sentence.labels,
            builtin_pipeline(pipeline_id),
            table,
            example_lexicons,
        )
        assert list(result.outputs) == expected, pipeline_id


def test_criterion_03_levenshtein_oracle():
    def oracle(a, b):
        @lru_cache(maxsize=None)
        def rec(i, j):
            if i == 0 or j == 0:
                return i + j
            return min(
                rec(i - 1, j) + 1,
                rec(i, j - 1) + 1,
                rec(i - 1, j - 1) + (a[i - 1] != b[j - 1]),
            )

        return rec(len(a), len(b))

    rng = random.Random(99)
    alphabet = "abċgħxyz7"
    pairs = [
        (
            "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 6))),
            "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 6))),
        )
        for _ in range(1000)
    ]
    for a, b in pairs:
        assert levenshtein(a, b) == oracle(a, b)
    for _ in range(300):
        a, b, c = (
            "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 5)))
            for _ in range(3)
        )
        assert levenshtein(a, b) == levenshtein(b, a)
        assert levenshtein(a, a) == 0
        assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


def test_criterion_04_viterbi_oracle():
    rng = np.random.default_rng(4)
    for _ in range(200):
        T_len = int(rng.integers(1, 5))
        unary = rng.standard_normal((T_len, 5))
        trans = rng.standard_normal((5, 5))
        begin = rng.standard_normal(5)
        end = rng.standard_normal(5)
        decoded = viterbi_decode(unary, trans, begin, end)
        best_score = -np.inf
        best = None
        for path in itertools.product(range(5), repeat=T_len):
            score = sequence_score(unary, trans, begin, end, np.array(path))
            if score > best_score:
                best, best_score = np.array(path), score
        assert sequence_score(unary, trans, begin, end, decoded) == pytest.approx(
            best_score
        )
        assert np.array_equal(decoded, best)


def test_criterion_05_forward_backward_normalization():
    rng = np.random.default_rng(5)
    for _ in range(100):
        T_len = int(rng.integers(1, 9))
        n = int(rng.integers(2, 6))
        unary = rng.standard_normal((T_len, n))
        trans = rng.standard_normal((n, n))
        begin = rng.standard_normal(n)
        end = rng.standard_normal(n)
        _, unary_marg, pair_marg = forward_backward(unary, trans, begin, end)
        assert np.allclose(unary_marg.sum(axis=1), 1.0, atol=1e-9)
        if T_len > 1:
            assert np.allclose(pair_marg.sum(axis=(1, 2)), 1.0, atol=1e-9)


def _separable(n_sentences=50, seed=0):
    rng = np.random.default_rng(seed)
    vocab = {
        L.ARABIC: ["qalb", "dar", "bieb"],
        L.NON_ARABIC: ["kultura", "skola"],
        L.SYMBOL: ["77", "99"],
    }
    out = []
    for _ in range(n_sentences):
        labels = [list(vocab)[int(rng.integers(0, 3))] for _ in range(int(rng.integers(2, 6)))]
        surfaces = [vocab[l][int(rng.integers(0, len(vocab[l])))] for l in labels]
        out.append(AnnotatedSentence.from_surfaces(surfaces, labels))
    return out


PLAIN_CFG = FeatureConfig(groups_enabled=frozenset({"orthography"}))


def test_criterion_06_crf_training_sanity():
    data = _separable(50)
    model = crf_train(data, PLAIN_CFG, scheme="merged", hyper={"max_iter": 100})
    correct = total = 0
    for sentence in data:
        predicted = crf_predict(model, sentence)
        correct += sum(p == g for p, g in zip(predicted, sentence.labels))
        total += len(sentence)
    assert correct / total >= 0.99
    history = model.objective_history
    assert all(b >= a - 1e-9 for a, b in zip(history, history[1:]))


def _ambiguous(seed=0):
    rng = np.random.default_rng(seed)
    vocab = {
        L.ARABIC: ["qalb", "dar", "bieb", "triq"],
        L.NON_ARABIC: ["skola", "kultura"],
        L.SYMBOL: ["7", "99"],
    }
    out = []
    for i in range(12):
        labels = [list(vocab)[int(rng.integers(0, 3))] for _ in range(int(rng.integers(2, 5)))]
        surfaces = [vocab[l][int(rng.integers(0, len(vocab[l])))] for l in labels]
        surfaces += [f"uniq{i}", "amb"]
        labels += [L.ARABIC, L.ARABIC if i % 2 else L.SYMBOL]
        out.append(AnnotatedSentence.from_surfaces(surfaces, labels))
    return out


def test_criterion_07_ensemble_gating():
    data = _ambiguous()
    hyper = {"max_iter": 40}
    model = ensemble_train(data, PLAIN_CFG, "merged", hyper)
    probe = AnnotatedSentence.from_surfaces(["qalb", "amb", "neverseen"])
    crf_labels = crf_predict(model.crf, probe)
    out = model.predict(probe)
    assert out[0] is model.mle.predict_token("qalb")  # seen, one label
    assert out[1] is crf_labels[1]  # ambiguous
    assert out[2] is crf_labels[2]  # unseen
    folds = make_folds(data, 3, seed=1)
    crf_report = evaluate(data, "crf", PLAIN_CFG, folds, "merged", hyper)
    ens_report = evaluate(data, "ensemble", PLAIN_CFG, folds, "merged", hyper)
    assert crf_report.n_unseen == ens_report.n_unseen > 0
    assert crf_report.accuracy_unseen == ens_report.accuracy_unseen


def test_criterion_08_mle_structural_bound():
    rng = random.Random(8)
    labels = [L.ARABIC, L.NON_ARABIC, L.SYMBOL, L.CODE_SWITCHING]
    for _ in range(20):
        data = []
        vocab = [f"w{j}" for j in range(10)]
        for _ in range(6):
            length = rng.randint(1, 5)
            data.append(
                AnnotatedSentence.from_surfaces(
                    [rng.choice(vocab) for _ in range(length)],
                    [rng.choice(labels) for _ in range(length)],
                )
            )
        folds = make_folds(data, 2, seed=0)
        for fold in range(folds.k):
            train = [data[i] for i in folds.train_indices(fold)]
            model = mle_train(train)
            seen_labels = {}
            for sentence in train:
                for token, label in zip(sentence.tokens, sentence.labels):
                    seen_labels.setdefault(token.surface, set()).add(label)
            for idx in folds.test_indices(fold):
                sentence = data[idx]
                for token in sentence.tokens:
                    known = seen_labels.get(token.surface)
                    if known is not None and len(known) == 1:
                        assert model.predict_token(token.surface) in known


def _heuristic(ita=None, eng=None, ara=None):
    cfg = FeatureConfig(
        groups_enabled=frozenset({"distances"}),
        lexicons={
            "ara": TranslationLexicon("mlt", "ara", ara or {}),
            "ita": TranslationLexicon("mlt", "ita", ita or {}),
            "eng": TranslationLexicon("mlt", "eng", eng or {}),
        },
        translit_table=TransliterationTable({}, {}, {}),
    )
    return HeuristicClassifier(cfg)


def test_criterion_09_heuristic_rule_table():
    cases = [
        # both distances zero, digit -> Symbol
        (_heuristic(ita={"2022": "2022"}, eng={"2022": "2022"}), "2022", L.SYMBOL),
        (_heuristic(ita={"7": "7"}, eng={"7": "7"}), "7", L.SYMBOL),
        # both zero, punctuation -> Symbol
        (_heuristic(ita={"!": "!"}, eng={"!": "!"}), "!", L.SYMBOL),
        # both zero, plain word -> Name
        (_heuristic(ita={"porsche": "Porsche"}, eng={"porsche": "Porsche"}),
         "Porsche", L.NAME),
        (_heuristic(), "abc", L.NAME),
        # exactly one zero -> Code-Switching
        (_heuristic(ita={"pizza": "pizza"}, eng={"pizza": "pie"},
                    ara={"pizza": "بيتزا"}), "pizza", L.CODE_SWITCHING),
        (_heuristic(ita={"speed": "velocità"}, eng={"speed": "speed"},
                    ara={"speed": "سرعة"}), "speed", L.CODE_SWITCHING),
        # Arabic distance strictly smallest -> Arabic
        (_heuristic(ara={"qalb": "qalb"}, ita={"qalb": "cuore"},
                    eng={"qalb": "heart"}), "qalb", L.ARABIC),
        # Italian distance smallest -> NonArabic
        (_heuristic(ara={"kultura": "ثقافة"}, ita={"kultura": "cultura"},
                    eng={"kultura": "civilization"}), "kultura", L.NON_ARABIC),
        # English distance smallest -> NonArabic
        (_heuristic(ara={"rapport": "تقرير"}, ita={"rapport": "relazione"},
                    eng={"rapport": "report"}), "rapport", L.NON_ARABIC),
        # Arabic ties a Latin distance -> Arabic
        (_heuristic(ara={"dar": "dax"}, ita={"dar": "dax"},
                    eng={"dar": "dwelling"}), "dar", L.ARABIC),
        # two Latin distances tie -> NonArabic either way
        (_heuristic(ara={"forn": "فرن"}, ita={"forn": "forno"},
                    eng={"forn": "forni"}), "forn", L.NON_ARABIC),
    ]
    assert len(cases) == 12
    for clf, surface, expected in cases:
        assert clf.classify_token(surface) is expected, surface


def test_criterion_10_determinism(tmp_path):
    data_file = tmp_path / "toy.tsv"
    lines = []
    for sent in (
        [("qalb", "arabic"), ("77", "symbol")],
        [("skola", "non-arabic"), ("qalb", "arabic")],
        [("77", "symbol"), ("skola", "non-arabic")],
    ):
        lines += [f"{s}\t{l}" for s, l in sent] + [""]
    data_file.write_text("\n".join(lines) + "\n", encoding="utf-8")
    reports = []
    for name in ("a.json", "b.json"):
        report = tmp_path / name
        code = main(
            [
                "evaluate",
                "--model", "mle",
                "--data", str(data_file),
                "--report", str(report),
                "--folds", "3",
                "--seed", "42",
                "--features", "none",
            ]
        )
        assert code == 0
        reports.append(report.read_bytes())
    assert reports[0] == reports[1]
