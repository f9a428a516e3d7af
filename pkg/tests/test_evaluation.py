import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_metrics
from marking.errors import LengthMismatch, MissingPrediction
from marking.evaluation import (
    TABLE_HEADER,
    ConfusionCounts,
    confusion_counts,
    evaluate_dataset,
    format_table,
    precision_recall_f1,
    table_row,
)
from marking.labels import LabelSetting, remap_labels, response_word_labels
from marking.markup import load_dataset


def test_counts_examples():
    c = confusion_counts([0, 1], [0, 1], (0, 1, 2))
    assert c.tp == {0: 1, 1: 1, 2: 0} and sum(c.fp.values()) == sum(c.fn.values()) == 0
    c = confusion_counts([1], [0], (0, 1, 2))
    assert c.fp[1] == 1 and c.fn[0] == 1 and c.tp[0] == c.tp[1] == 0


def test_none_and_separator_positions():
    c = confusion_counts([0, 3, 4, 1], [3, 3, 4, 1], (0, 1, 2))
    # gold 3 never yields a false positive but does count for accuracy
    assert c.fp[0] == 0 and c.n_evaluated == 3 and c.n_correct == 2


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        confusion_counts([0], [0, 1], (0, 1))


def _metrics(tp, fp, fn):
    counts = ConfusionCounts((0,), {0: tp}, {0: fp}, {0: fn})
    return precision_recall_f1(counts)[0]


def test_prf_examples():
    m = _metrics(1, 0, 0)
    assert (m.precision, m.recall, m.f1) == (1, 1, 1)
    m = _metrics(0, 2, 3)
    assert (m.precision, m.recall, m.f1) == (0, 0, 0)
    m = _metrics(3, 1, 2)
    assert m.precision == 0.75 and m.recall == 0.6 and round(m.f1, 4) == 0.6667
    assert _metrics(0, 0, 0).f1 == 0


def random_case(rng, setting, n=None):
    cats = setting.categories
    n = rng.randint(0, 30) if n is None else n
    gold = [rng.choice([*cats, 3, 3, 4]) for _ in range(n)]
    pred = [rng.choice([*cats, 3]) for _ in range(n)]
    return pred, gold


def check_against_oracle(pred, gold, setting):
    from marking.evaluation import EvaluationReport

    counts = confusion_counts(pred, gold, setting.categories)
    report = EvaluationReport.from_counts(setting, counts)
    ref = brute_force_metrics(pred, gold, setting.categories)
    for c, (tp, fp, fn, p, r, f1, sup) in ref["per"].items():
        assert (counts.tp[c], counts.fp[c], counts.fn[c]) == (tp, fp, fn)
        m = report.per_category[c]
        assert (m.precision, m.recall, m.f1, m.support) == (p, r, f1, sup)
    assert report.accuracy == ref["accuracy"]
    for key in ("precision", "recall", "f1"):
        assert getattr(report, key) == ref[key]


def test_brute_force_tally_1000():
    rng = random.Random(0)
    for i in range(1000):
        setting = list(LabelSetting)[i % 3]
        check_against_oracle(*random_case(rng, setting), setting)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(list(LabelSetting)))
def test_merge_is_associative(seed, setting):
    rng = random.Random(seed)
    parts = [random_case(rng, setting) for _ in range(3)]
    merged = sum((confusion_counts(p, g, setting.categories) for p, g in parts),
                 ConfusionCounts(setting.categories))
    flat = confusion_counts([x for p, _ in parts for x in p], [x for _, g in parts for x in g], setting.categories)
    assert merged == flat


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
def test_f1_monotone_in_tp(tp, fp, fn):
    assert _metrics(tp + 1, fp, fn).f1 >= _metrics(tp, fp, fn).f1


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(list(LabelSetting)))
def test_weighted_between_extremes_and_symmetric_accuracy(seed, setting):
    from marking.evaluation import EvaluationReport

    rng = random.Random(seed)
    cats = setting.categories
    n = rng.randint(1, 30)
    gold = [rng.choice([*cats, 3]) for _ in range(n)]
    pred = [rng.choice([*cats, 3]) for _ in range(n)]
    rep = EvaluationReport.from_counts(setting, confusion_counts(pred, gold, cats))
    f1s = [m.f1 for m in rep.per_category.values() if m.support]
    if f1s:
        assert min(f1s) - 1e-12 <= rep.f1 <= max(f1s) + 1e-12
    swapped = confusion_counts(gold, pred, cats)
    assert swapped.accuracy == rep.accuracy


def _gold_predictions(records, setting="generic"):
    return {
        (rec.question_id, resp.response_id, ann.annotator_id): remap_labels(response_word_labels(ann), setting)
        for rec in records for resp in rec.responses for ann in resp.annotations
    }


@pytest.mark.parametrize("setting", list(LabelSetting))
def test_perfect_predictions(fixture_path, setting):
    records = load_dataset(fixture_path)
    rep = evaluate_dataset(records, setting, predictions=_gold_predictions(records, setting))
    assert rep.metrics() == {"precision": 1.0, "recall": 1.0, "f1": 1.0, "accuracy": 1.0}
    assert rep.n_instances == 2 and set(rep.per_annotator) == {"sme-a"}


def test_all_none_predictions(fixture_path):
    records = load_dataset(fixture_path)
    preds = {k: [3] * len(v) for k, v in _gold_predictions(records).items()}
    rep = evaluate_dataset(records, "generic", predictions=preds)
    assert all(m.recall == 0 for m in rep.per_category.values())
    # 79 words, 6 + 6 + 6 + 10 + 12 of them marked
    assert rep.accuracy == pytest.approx((79 - 40) / 79)


def test_missing_prediction(fixture_path):
    records = load_dataset(fixture_path)
    with pytest.raises(MissingPrediction):
        evaluate_dataset(records, "generic", predictions={})


def test_response_keyed_predictions_and_stopwords(fixture_path):
    records = load_dataset(fixture_path)
    from marking.esnli import is_stopword, load_stopwords

    stop = load_stopwords()
    preds = {}
    for rec in records:
        for resp in rec.responses:
            ann = resp.annotations[0]
            labels = response_word_labels(ann)
            preds[(rec.question_id, resp.response_id)] = [l for w, l in zip(ann.words, labels)
                                                          if not is_stopword(w, stop)]
    rep = evaluate_dataset(records, "generic", predictions=preds, rm_stopwords=True)
    assert rep.f1 == 1.0 and rep.flags == {"rm_stopwords": True}
    assert rep.counts.n_evaluated < 79


def test_omission_subreport(fixture_path):
    records = load_dataset(fixture_path)
    from marking.labels import gold_word_labels

    prem = {(r.question_id, resp.response_id, a.annotator_id): gold_word_labels(g)
            for r in records for resp in r.responses for a, g in resp.versions()}
    rep = evaluate_dataset(records, "generic", predictions=_gold_predictions(records),
                           premise_predictions=prem, include_omissions=True)
    assert rep.omission is not None and rep.omission.f1 == 1.0
    assert rep.omission.counts.support(2) == 17 + 26
    # omissions never enter the main table
    assert rep.counts.support(2) == 10
    focused = evaluate_dataset(records, "err-focus", predictions=_gold_predictions(records, "err-focus"),
                               premise_predictions=prem, include_omissions=True)
    assert focused.omission is None


def test_table_layout():
    row = table_row("roberta-large", "err-focus", True, False,
                    {"precision": 0.747, "recall": 0.778, "f1": 0.762, "accuracy": 0.704})
    assert row == ("roberta-large", "0", "1", "1", "Yes", "No", "0.747", "0.778", "0.762", "0.704")
    text = format_table([row])
    assert text.splitlines()[0].split() == list(TABLE_HEADER)
