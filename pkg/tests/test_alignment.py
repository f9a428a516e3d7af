import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CharTokenizer, ChunkTokenizer, IdentityTokenizer
from marking.alignment import (
    train_wordpiece,
    IGNORE_INDEX,
    HFWordTokenizer,
    backproject_to_words,
    project_to_tokens,
    token_labels_to_words,
)
from marking.errors import AlignmentMismatch, TooLong
from marking.esnli import WordLabeledPair


def make_pair(prem, hyp, plabels=None, hlabels=None):
    return WordLabeledPair(tuple(prem), tuple(hyp), tuple(plabels or [3] * len(prem)),
                           tuple(hlabels or [3] * len(hyp)))


def test_undigested_first_subword():
    tok = ChunkTokenizer(4)
    assert len(tok.encode_words(["undigested"])[0]) == 3
    ex = project_to_tokens(make_pair(["fiber"], ["undigested"], [3], [1]), tok)
    # fiber -> 2 pieces, sep, undigested -> 3 pieces
    assert ex.labels == [3, IGNORE_INDEX, 4, 1, IGNORE_INDEX, IGNORE_INDEX]
    assert ex.word_of_token == [0, 0, 1, 2, 2, 2]


def test_identity_tokenizer_labels_equal_words(identity_tokenizer):
    pair = make_pair(["a", "b"], ["c", "d", "e"], [3, 2], [0, 1, 3])
    ex = project_to_tokens(pair, identity_tokenizer)
    inner = [l for l in ex.labels if l != IGNORE_INDEX]
    assert inner == pair.labels
    assert ex.labels[0] == IGNORE_INDEX and ex.labels[-1] == IGNORE_INDEX


def test_multi_token_separator():
    ex = project_to_tokens(make_pair(["ab"], ["c"], [3], [0]), CharTokenizer())
    # <s> a b </s> </s> c </s>
    assert ex.labels == [IGNORE_INDEX, 3, IGNORE_INDEX, 4, IGNORE_INDEX, 0, IGNORE_INDEX]


def test_too_long():
    pair = make_pair(["abcdefgh"] * 5, ["xy"])
    tok = CharTokenizer()
    with pytest.raises(TooLong):
        project_to_tokens(pair, tok, max_length=20)
    ex = project_to_tokens(pair, tok, max_length=20, truncate_premise=True)
    assert len(ex.input_ids) == 14 and ex.n_premise_dropped == 4
    rows = backproject_to_words(np.full((len(ex.input_ids), 5), 0.2), ex)
    assert rows.shape == (7, 5)
    np.testing.assert_array_equal(rows[1:5], np.eye(5)[[3, 3, 3, 3]])


def test_backproject_mismatch(identity_tokenizer):
    ex = project_to_tokens(make_pair(["a"], ["b"]), identity_tokenizer)
    with pytest.raises(AlignmentMismatch):
        backproject_to_words(np.zeros((2, 5)), ex)


def test_backproject_first_subword_row():
    tok = ChunkTokenizer(2)
    ex = project_to_tokens(make_pair(["abcd"], ["ef"]), tok)
    probs = np.arange(len(ex.input_ids) * 5, dtype=float).reshape(-1, 5)
    rows = backproject_to_words(probs, ex)
    np.testing.assert_array_equal(rows, probs[[0, 2, 3]])


TOKENIZERS = {
    "identity": IdentityTokenizer,
    "char": CharTokenizer,
    "chunk3": lambda: ChunkTokenizer(3),
}

_words = st.lists(st.text(alphabet="abcdefghijklmnopqrstuvwxyzé'-.", min_size=1, max_size=12), min_size=0, max_size=8)


@st.composite
def labeled_pairs(draw):
    prem = draw(_words)
    hyp = draw(_words.filter(len))
    return make_pair(prem, hyp,
                     draw(st.lists(st.integers(0, 3), min_size=len(prem), max_size=len(prem))),
                     draw(st.lists(st.integers(0, 3), min_size=len(hyp), max_size=len(hyp))))


def _check_round_trip(pair, tok):
    ex = project_to_tokens(pair, tok, max_length=None)
    labeled = [l for l in ex.labels if l != IGNORE_INDEX]
    assert labeled == pair.labels
    assert all(m == (l == IGNORE_INDEX) for m, l in zip(ex.loss_mask, ex.labels))
    assert token_labels_to_words(ex.labels, ex) == pair.labels
    onehot = np.eye(5)[[l if l != IGNORE_INDEX else 3 for l in ex.labels]]
    back = backproject_to_words(onehot, ex)
    assert back.argmax(axis=1).tolist() == pair.labels


@pytest.mark.parametrize("name", sorted(TOKENIZERS))
@settings(max_examples=1000, deadline=None)
@given(pair=labeled_pairs())
def test_round_trip(name, pair):
    _check_round_trip(pair, TOKENIZERS[name]())


@settings(max_examples=1000, deadline=None)
@given(pair=labeled_pairs())
def test_round_trip_wordpiece(wordpiece, pair):
    _check_round_trip(pair, HFWordTokenizer(wordpiece))


def test_wordpiece_layout(wordpiece):
    tok = HFWordTokenizer(wordpiece)
    assert len(tok.prefix_ids) == 1 and len(tok.middle_ids) == 1 and len(tok.suffix_ids) == 1
    ex = project_to_tokens(make_pair(["the", "dog"], ["a", "dog"]), tok)
    assert ex.token_type_ids[ex.first_token[3]] == 1 and ex.token_type_ids[ex.first_token[0]] == 0


def test_wordpiece_is_deterministic_and_splits():
    texts = ["the cell wall", "cells divide", "the wall of the cell"] * 3
    a, b = train_wordpiece(texts, vocab_size=40), train_wordpiece(texts, vocab_size=40)
    assert a.get_vocab() == b.get_vocab()
    pieces = HFWordTokenizer(a).encode_words(["walls", "cell"])
    assert len(pieces[0]) > 1 and len(pieces[1]) == 1
