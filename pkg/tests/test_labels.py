import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from marking.errors import InvalidLabel
from marking.labels import (
    NUM_LABELS,
    LabelId,
    LabelSetting,
    category_set,
    decode_word_labels,
    label_of_span_kind,
    parse_setting,
    remap_labels,
    remap_probs,
)
from marking.markup import SpanKind


def test_label_space():
    assert NUM_LABELS == 5
    assert [int(l) for l in LabelId] == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("setting,expected", [
    ("generic", [0, 1, 2, 3, 4]),
    ("con-focus", [0, 1, 0, 3, 4]),
    ("err-focus", [0, 1, 1, 3, 4]),
])
def test_remap_examples(setting, expected):
    assert remap_labels([0, 1, 2, 3, 4], setting) == expected


@pytest.mark.parametrize("alias,setting", [
    ("0-1-2", LabelSetting.GENERIC),
    ("0-1-0", LabelSetting.CONTRADICTION_FOCUSED),
    ("contradiction_focused", LabelSetting.CONTRADICTION_FOCUSED),
    ("0-1-1", LabelSetting.ERROR_FOCUSED),
    ("Error_Focused", LabelSetting.ERROR_FOCUSED),
])
def test_aliases(alias, setting):
    assert parse_setting(alias) is setting


def test_unknown_setting():
    with pytest.raises(ValueError):
        parse_setting("binary")


@pytest.mark.parametrize("bad", [[5], [-1], [1.5], [True], ["0"]])
def test_invalid_labels(bad):
    with pytest.raises(InvalidLabel):
        remap_labels(bad, "generic")


def test_span_kinds():
    assert label_of_span_kind(SpanKind.CORRECT) == 0
    assert label_of_span_kind("incorrect") == 1
    assert label_of_span_kind(SpanKind.IRRELEVANT) == 2
    assert label_of_span_kind(SpanKind.OMISSION) == 2
    with pytest.raises(InvalidLabel):
        label_of_span_kind("partially-correct")


labels_st = st.lists(st.integers(0, 4), max_size=50)


@settings(max_examples=1000, deadline=None)
@given(labels_st, st.sampled_from(list(LabelSetting)))
def test_remap_idempotent_and_categories(labels, setting):
    once = remap_labels(labels, setting)
    assert remap_labels(once, setting) == once
    assert category_set(once) <= set(setting.categories)
    if setting is not LabelSetting.GENERIC:
        assert 2 not in once
    assert [l for l in once if l in (3, 4)] == [l for l in labels if l in (3, 4)]


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 6), st.sampled_from(list(LabelSetting)), st.integers(0, 2**31))
def test_remap_probs_matches_label_remap(n, setting, seed):
    rng = np.random.default_rng(seed)
    rows = rng.dirichlet(np.ones(5), size=n)
    merged = remap_probs(rows, setting)
    np.testing.assert_allclose(merged.sum(axis=1), 1.0)
    # probability of each remapped outcome is the summed mass of its sources
    table = setting.remap_table
    for j in range(5):
        expect = rows[:, [k for k in range(5) if table[k] == j]].sum(axis=1)
        np.testing.assert_allclose(merged[:, j], expect)
    decoded = decode_word_labels(rows, setting)
    assert set(decoded) <= set(setting.categories) | {3}


def test_decode_ties_go_low():
    rows = np.array([[0.3, 0.3, 0.1, 0.3, 0.0]])
    assert decode_word_labels(rows, "generic") == [0]
    # separator mass never decodes
    assert decode_word_labels(np.array([[0.1, 0, 0, 0, 0.9]]), "generic") == [0]
