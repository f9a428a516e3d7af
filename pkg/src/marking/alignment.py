"""Word labels onto subword tokens and token probabilities back onto words.

The first subword of every word carries the word's label; continuation
pieces and special tokens are masked with ``IGNORE_INDEX``.  The first token
of the separator block carries label 4.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import AlignmentMismatch, TooLong
from .labels import NUM_LABELS, LabelId

logger = logging.getLogger(__name__)

IGNORE_INDEX = -100
SPECIAL = -1


class WordTokenizer:
    """Minimal interface the projector needs from a subword tokenizer.

    ``prefix_ids``/``middle_ids``/``suffix_ids`` are the special tokens placed
    before the premise, between the two sides and after the hypothesis.
    """

    prefix_ids: list[int] = []
    middle_ids: list[int] = []
    suffix_ids: list[int] = []
    pad_id: int = 0
    unk_id: int = 0
    vocab_size: int = 0

    def encode_words(self, words: Sequence[str]) -> list[list[int]]:
        raise NotImplementedError


class HFWordTokenizer(WordTokenizer):
    """Adapter over a ``transformers`` fast tokenizer."""

    def __init__(self, tokenizer):
        self.hf = tokenizer
        enc = tokenizer("a", "b")
        seq_ids = enc.sequence_ids()
        ids = enc["input_ids"]
        first = seq_ids.index(0)
        p_end = max(i for i, s in enumerate(seq_ids) if s == 0) + 1
        h_start = seq_ids.index(1)
        h_end = max(i for i, s in enumerate(seq_ids) if s == 1) + 1
        self.prefix_ids = list(ids[:first])
        self.middle_ids = list(ids[p_end:h_start])
        self.suffix_ids = list(ids[h_end:])
        if not self.middle_ids:
            raise ValueError("tokenizer has no separator token between sequence pairs")
        self.pad_id = tokenizer.pad_token_id if tokenizer.pad_token_id is not None else 0
        self.unk_id = tokenizer.unk_token_id if tokenizer.unk_token_id is not None else self.pad_id
        self.vocab_size = len(tokenizer)

    def encode_words(self, words):
        if not words:
            return []
        enc = self.hf(list(words), is_split_into_words=True, add_special_tokens=False)
        pieces: list[list[int]] = [[] for _ in words]
        for tok_id, w in zip(enc["input_ids"], enc.word_ids()):
            if w is not None:
                pieces[w].append(tok_id)
        return [p or [self.unk_id] for p in pieces]


@dataclass
class AlignedExample:
    input_ids: list[int]
    token_type_ids: list[int]
    labels: list[int]
    word_of_token: list[int]
    first_token: list[int]
    n_positions: int
    n_premise: int
    n_premise_dropped: int = 0

    @property
    def loss_mask(self) -> list[bool]:
        """True where a position is excluded from loss and metrics."""
        return [l == IGNORE_INDEX for l in self.labels]

    def __len__(self):
        return len(self.input_ids)


def _total_length(tokenizer, prem_pieces, hyp_pieces):
    return (
        len(tokenizer.prefix_ids)
        + sum(map(len, prem_pieces))
        + len(tokenizer.middle_ids)
        + sum(map(len, hyp_pieces))
        + len(tokenizer.suffix_ids)
    )


def project_to_tokens(
    pair,
    tokenizer: WordTokenizer,
    max_length: int | None = 512,
    *,
    truncate_premise: bool = False,
) -> AlignedExample:
    """Project a :class:`~marking.esnli.WordLabeledPair` onto subword tokens.

    Positions follow the word sequence ``premise ++ [sep] ++ hypothesis``.
    With ``truncate_premise`` an overlong input loses premise words from the
    tail (with a warning) instead of raising.

    Raises:
        TooLong: the tokenized pair exceeds ``max_length``.
    """
    prem_pieces = tokenizer.encode_words(pair.premise)
    hyp_pieces = tokenizer.encode_words(pair.hypothesis)
    dropped = 0
    if max_length is not None:
        total = _total_length(tokenizer, prem_pieces, hyp_pieces)
        while total > max_length and truncate_premise and prem_pieces:
            total -= len(prem_pieces.pop())
            dropped += 1
        if total > max_length:
            raise TooLong(f"{total} tokens exceed the model limit of {max_length}")
        if dropped:
            logger.warning("truncated %d premise words to fit %d tokens", dropped, max_length)

    n_prem = len(pair.premise)
    word_labels = pair.labels
    ids, types, labels, word_of, first = [], [], [], [], [SPECIAL] * len(word_labels)

    def emit(tok, seg, label, word):
        ids.append(tok)
        types.append(seg)
        labels.append(label)
        word_of.append(word)

    for tok in tokenizer.prefix_ids:
        emit(tok, 0, IGNORE_INDEX, SPECIAL)
    for w, pieces in enumerate(prem_pieces):
        first[w] = len(ids)
        for k, tok in enumerate(pieces):
            emit(tok, 0, word_labels[w] if k == 0 else IGNORE_INDEX, w)
    for k, tok in enumerate(tokenizer.middle_ids):
        if k == 0:
            first[n_prem] = len(ids)
            emit(tok, 0, int(LabelId.SEPARATOR), n_prem)
        else:
            emit(tok, 0, IGNORE_INDEX, SPECIAL)
    for j, pieces in enumerate(hyp_pieces):
        w = n_prem + 1 + j
        first[w] = len(ids)
        for k, tok in enumerate(pieces):
            emit(tok, 1, word_labels[w] if k == 0 else IGNORE_INDEX, w)
    for tok in tokenizer.suffix_ids:
        emit(tok, 1, IGNORE_INDEX, SPECIAL)
    return AlignedExample(ids, types, labels, word_of, first, len(word_labels), n_prem, dropped)


def backproject_to_words(token_probs, aligned: AlignedExample) -> np.ndarray:
    """One row per word position, read from the word's first subword.

    Premise words removed by truncation get a one-hot row on label 3.

    Raises:
        AlignmentMismatch: ``token_probs`` does not match the alignment.
    """
    token_probs = np.asarray(token_probs, dtype=np.float64)
    if token_probs.ndim != 2 or token_probs.shape[0] != len(aligned.input_ids):
        raise AlignmentMismatch(
            f"got {token_probs.shape[0] if token_probs.ndim else 0} token rows "
            f"for {len(aligned.input_ids)} tokens"
        )
    rows = np.zeros((aligned.n_positions, token_probs.shape[1]))
    for w, t in enumerate(aligned.first_token):
        if t == SPECIAL:
            if not aligned.n_premise - aligned.n_premise_dropped <= w < aligned.n_premise:
                raise AlignmentMismatch(f"word position {w} has no token")
            rows[w, LabelId.NONE] = 1.0
        else:
            rows[w] = token_probs[t]
    return rows


def token_labels_to_words(token_labels: Sequence[int], aligned: AlignedExample) -> list[int]:
    """Read word labels off token labels (first-subword convention)."""
    return [int(token_labels[t]) if t != SPECIAL else int(LabelId.NONE) for t in aligned.first_token]


def train_wordpiece(texts: Iterable[str], vocab_size: int = 4000, lowercase: bool = True):
    """Build a BERT-style WordPiece tokenizer from a corpus.

    Used with the randomly initialized encoders when no pretrained
    vocabulary is available.  The vocabulary is the character alphabet (word
    initial and ``##`` continuation forms) plus the most frequent words, ties
    broken alphabetically, so the same corpus always yields the same ids.
    """
    from collections import Counter

    from tokenizers import Tokenizer, decoders, models, normalizers, pre_tokenizers, processors
    from transformers import PreTrainedTokenizerFast

    specials = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
    normalizer = normalizers.BertNormalizer(lowercase=lowercase)
    pre = pre_tokenizers.BertPreTokenizer()
    counts: Counter = Counter()
    for text in texts:
        counts.update(w for w, _ in pre.pre_tokenize_str(normalizer.normalize_str(text)))
    alphabet = set()
    for w in counts:
        alphabet.add(w[0])
        alphabet.update("##" + c for c in w[1:])
    vocab = {t: i for i, t in enumerate(specials + sorted(alphabet))}
    for w, _ in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])):
        if len(vocab) >= vocab_size:
            break
        vocab.setdefault(w, len(vocab))
    tok = Tokenizer(models.WordPiece(vocab, unk_token="[UNK]"))
    tok.normalizer = normalizer
    tok.pre_tokenizer = pre
    tok.decoder = decoders.WordPiece()
    cls_id, sep_id = vocab["[CLS]"], vocab["[SEP]"]
    tok.post_processor = processors.TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B:1 [SEP]:1",
        special_tokens=[("[CLS]", cls_id), ("[SEP]", sep_id)],
    )
    return PreTrainedTokenizerFast(
        tokenizer_object=tok,
        unk_token="[UNK]",
        pad_token="[PAD]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
    )


__all__ = [
    "IGNORE_INDEX",
    "NUM_LABELS",
    "AlignedExample",
    "HFWordTokenizer",
    "WordTokenizer",
    "backproject_to_words",
    "project_to_tokens",
    "token_labels_to_words",
    "train_wordpiece",
]
