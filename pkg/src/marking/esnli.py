"""e-SNLI ingestion and the word-labeled training pairs built from it."""

from __future__ import annotations

import csv
import json
import logging
import random
import string
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EmptyHypothesis, InvalidLabel, MalformedRow
from .labels import VALID_LABELS, LabelId, remap_labels

logger = logging.getLogger(__name__)

SEP_TOKEN = "[sep]"
NLI_LABELS = {
    "entailment": LabelId.ENTAILMENT,
    "contradiction": LabelId.CONTRADICTION,
    "neutral": LabelId.NEUTRAL,
}
_REQUIRED = ("gold_label", "Sentence1", "Sentence2")


@dataclass(frozen=True)
class NliInstance:
    pair_id: str
    premise: tuple[str, ...]
    hypothesis: tuple[str, ...]
    label: str
    premise_highlights: frozenset[int] = frozenset()
    hypothesis_highlights: frozenset[int] = frozenset()


@dataclass(frozen=True)
class WordLabeledPair:
    """Premise and hypothesis words with one label per word.

    The separator is implicit: :attr:`tokens` and :attr:`labels` insert it
    between the two sides, so every pair has exactly one.
    """

    premise: tuple[str, ...]
    hypothesis: tuple[str, ...]
    premise_labels: tuple[int, ...]
    hypothesis_labels: tuple[int, ...]
    instance_labels: tuple[str, ...] = ()
    sources: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if len(self.premise) != len(self.premise_labels):
            raise InvalidLabel("premise labels do not match premise length")
        if len(self.hypothesis) != len(self.hypothesis_labels):
            raise InvalidLabel("hypothesis labels do not match hypothesis length")
        for label in self.premise_labels + self.hypothesis_labels:
            if label not in VALID_LABELS or label == LabelId.SEPARATOR:
                raise InvalidLabel(f"invalid word label {label!r}")

    @property
    def sep_index(self) -> int:
        return len(self.premise)

    @property
    def tokens(self) -> list[str]:
        return [*self.premise, SEP_TOKEN, *self.hypothesis]

    @property
    def labels(self) -> list[int]:
        return [*self.premise_labels, int(LabelId.SEPARATOR), *self.hypothesis_labels]

    def to_dict(self) -> dict:
        return {
            "premise": list(self.premise),
            "hypothesis": list(self.hypothesis),
            "premise_labels": list(self.premise_labels),
            "hypothesis_labels": list(self.hypothesis_labels),
            "instance_labels": list(self.instance_labels),
            "sources": list(self.sources),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "WordLabeledPair":
        return cls(
            tuple(obj["premise"]),
            tuple(obj["hypothesis"]),
            tuple(int(x) for x in obj["premise_labels"]),
            tuple(int(x) for x in obj["hypothesis_labels"]),
            tuple(obj.get("instance_labels", ())),
            tuple(obj.get("sources", ())),
        )


def _parse_highlights(value, n_words: int, row: int, column: str) -> frozenset[int]:
    value = (value or "").strip()
    if value in ("", "{}"):
        return frozenset()
    out = set()
    for part in value.strip("{}").split(","):
        part = part.strip()
        if not part:
            continue
        try:
            idx = int(part)
        except ValueError:
            raise MalformedRow(f"non-integer highlight {part!r} in {column}", row) from None
        if not 0 <= idx < n_words:
            raise MalformedRow(
                f"highlight index {idx} out of range for {n_words} words in {column}", row
            )
        out.add(idx)
    return frozenset(out)


def _highlight_columns(fieldnames: Sequence[str], side: int) -> list[str]:
    cols = [c for c in fieldnames if c.startswith(f"Sentence{side}_Highlighted_")]
    return sorted(cols, key=lambda c: int(c.rsplit("_", 1)[1]))


def ingest_esnli(
    sources: str | Path | Iterable[str | Path],
    highlights: str = "first",
    limit: int | None = None,
) -> tuple[list[NliInstance], int]:
    """Read e-SNLI CSV files in their published column layout.

    Words are the whitespace tokens of ``Sentence1``/``Sentence2`` and the
    ``Sentence*_Highlighted_k`` columns index into them.  With
    ``highlights="first"`` only annotator 1 is used; ``"union"`` merges all
    annotators present in the file.

    Returns:
        The instances and the number of rows dropped for lacking a gold label.

    Raises:
        MalformedRow: missing columns, bad or out-of-range highlight indices.
    """
    if highlights not in ("first", "union"):
        raise ValueError(f"highlights must be 'first' or 'union', not {highlights!r}")
    if isinstance(sources, (str, Path)):
        sources = [sources]
    instances: list[NliInstance] = []
    dropped = 0
    for path in sources:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            names = reader.fieldnames or []
            missing = [c for c in _REQUIRED if c not in names]
            if missing:
                raise MalformedRow(f"{path}: missing columns {missing}", 1)
            cols = {side: _highlight_columns(names, side) for side in (1, 2)}
            if highlights == "first":
                cols = {side: c[:1] for side, c in cols.items()}
            for rowno, row in enumerate(reader, 2):
                label = (row.get("gold_label") or "").strip().lower()
                if label not in NLI_LABELS:
                    if label in ("", "-"):
                        dropped += 1
                        continue
                    raise MalformedRow(f"unknown gold_label {label!r}", rowno)
                premise = tuple((row["Sentence1"] or "").split())
                hypothesis = tuple((row["Sentence2"] or "").split())
                if not premise or not hypothesis:
                    raise MalformedRow("empty sentence", rowno)
                marks = {}
                for side, words in ((1, premise), (2, hypothesis)):
                    acc: set[int] = set()
                    for col in cols[side]:
                        acc |= _parse_highlights(row.get(col), len(words), rowno, col)
                    marks[side] = frozenset(acc)
                pair_id = row.get("pairID") or f"{Path(path).name}:{rowno}"
                instances.append(NliInstance(pair_id, premise, hypothesis, label, marks[1], marks[2]))
                if limit is not None and len(instances) >= limit:
                    break
        if limit is not None and len(instances) >= limit:
            break
    if dropped:
        logger.info("dropped %d rows without a gold label", dropped)
    return instances, dropped


def word_labels_from_highlights(
    inst: NliInstance, include_premise_highlights: bool = False
) -> WordLabeledPair:
    """Highlighted words take the instance's label id; everything else is none (3)."""
    value = int(NLI_LABELS[inst.label])
    none = int(LabelId.NONE)
    hyp = tuple(value if i in inst.hypothesis_highlights else none for i in range(len(inst.hypothesis)))
    if include_premise_highlights:
        prem = tuple(value if i in inst.premise_highlights else none for i in range(len(inst.premise)))
    else:
        prem = (none,) * len(inst.premise)
    return WordLabeledPair(inst.premise, inst.hypothesis, prem, hyp, (inst.label,), (inst.pair_id,))


@lru_cache(maxsize=1)
def load_stopwords() -> frozenset[str]:
    """The bundled 179-word English stoplist."""
    text = resources.files("marking").joinpath("data/stopwords_en.txt").read_text("utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


_EDGE_PUNCT = string.punctuation.replace("'", "")


def is_stopword(word: str, stoplist) -> bool:
    # "it," and "it" are the same word for stoplist purposes
    return word.lower().strip(_EDGE_PUNCT) in stoplist


def _filter(words, labels, stoplist):
    keep = [i for i, w in enumerate(words) if not is_stopword(w, stoplist)]
    return tuple(words[i] for i in keep), tuple(labels[i] for i in keep)


def remove_stopwords(pair: WordLabeledPair, stoplist=None) -> WordLabeledPair:
    """Drop stopwords from both sides, labels travelling with their words.

    Raises:
        EmptyHypothesis: every hypothesis word was a stopword.
    """
    stoplist = load_stopwords() if stoplist is None else stoplist
    prem, prem_labels = _filter(pair.premise, pair.premise_labels, stoplist)
    hyp, hyp_labels = _filter(pair.hypothesis, pair.hypothesis_labels, stoplist)
    if not hyp:
        raise EmptyHypothesis(f"hypothesis of {pair.sources} is all stopwords")
    return WordLabeledPair(prem, hyp, prem_labels, hyp_labels, pair.instance_labels, pair.sources)


def combine_pairs(first: WordLabeledPair, second: WordLabeledPair) -> WordLabeledPair:
    """``P1 P2 [sep] H1 H2`` with each side's labels concatenated in order."""
    return WordLabeledPair(
        first.premise + second.premise,
        first.hypothesis + second.hypothesis,
        first.premise_labels + second.premise_labels,
        first.hypothesis_labels + second.hypothesis_labels,
        first.instance_labels + second.instance_labels,
        first.sources + second.sources,
    )


def dip_pair(instances: Sequence[WordLabeledPair], seed: int = 0) -> list[WordLabeledPair]:
    """Dual Instance Pairing.

    Shuffle with ``seed``, then walk the sequence keeping a queue of
    unmatched instances.  The queue only ever holds one instance label, so an
    arriving instance with a different label pairs with its head.  Leftovers
    therefore share a single label and no further pair can be formed.  Pairs come
    first in formation order, then unpaired leftovers in shuffled order.
    Inputs that already combine several instances pass through untouched.
    """
    items = list(instances)
    random.Random(seed).shuffle(items)
    pending: list[WordLabeledPair] = []
    paired, passthrough = [], []
    for item in items:
        if len(item.instance_labels) != 1:
            passthrough.append(item)
            continue
        if pending and pending[0].instance_labels != item.instance_labels:
            paired.append(combine_pairs(pending.pop(0), item))
        else:
            pending.append(item)
    return paired + pending + passthrough


def remap_pair(pair: WordLabeledPair, setting) -> WordLabeledPair:
    return WordLabeledPair(
        pair.premise,
        pair.hypothesis,
        tuple(remap_labels(pair.premise_labels, setting)),
        tuple(remap_labels(pair.hypothesis_labels, setting)),
        pair.instance_labels,
        pair.sources,
    )


def build_training_pairs(
    instances: Sequence[NliInstance],
    *,
    setting="generic",
    rm_stopwords: bool = False,
    dip: bool = False,
    seed: int = 0,
    premise_highlights: bool = False,
    stoplist=None,
) -> list[WordLabeledPair]:
    """Labels from highlights, then stopword removal, DIP and label remapping."""
    pairs = [word_labels_from_highlights(i, premise_highlights) for i in instances]
    if rm_stopwords:
        kept = []
        for pair in pairs:
            try:
                kept.append(remove_stopwords(pair, stoplist))
            except EmptyHypothesis as exc:
                logger.warning("skipping instance: %s", exc)
        pairs = kept
    if dip:
        pairs = dip_pair(pairs, seed)
    return [remap_pair(p, setting) for p in pairs]


def save_pairs(pairs: Iterable[WordLabeledPair], path) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for pair in pairs:
            fh.write(json.dumps(pair.to_dict(), ensure_ascii=False) + "\n")
            n += 1
    return n


def load_pairs(path) -> list[WordLabeledPair]:
    with open(path, encoding="utf-8") as fh:
        return [WordLabeledPair.from_dict(json.loads(line)) for line in fh if line.strip()]
