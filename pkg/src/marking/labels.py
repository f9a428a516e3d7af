"""Integer label space and the three label settings."""

from __future__ import annotations

import enum
import hashlib
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidLabel
from .markup import GoldAnnotation, ResponseAnnotation, SpanKind


class LabelId(enum.IntEnum):
    ENTAILMENT = 0
    CONTRADICTION = 1
    NEUTRAL = 2
    NONE = 3
    SEPARATOR = 4


NUM_LABELS = len(LabelId)
VALID_LABELS = frozenset(int(l) for l in LabelId)


class LabelSetting(str, enum.Enum):
    GENERIC = "generic"
    CONTRADICTION_FOCUSED = "con-focus"
    ERROR_FOCUSED = "err-focus"

    @property
    def categories(self) -> tuple[int, ...]:
        return CATEGORIES[self]

    @property
    def remap_table(self) -> tuple[int, ...]:
        return _REMAP[self]


_REMAP = {
    LabelSetting.GENERIC: (0, 1, 2, 3, 4),
    LabelSetting.CONTRADICTION_FOCUSED: (0, 1, 0, 3, 4),
    LabelSetting.ERROR_FOCUSED: (0, 1, 1, 3, 4),
}

CATEGORIES = {
    LabelSetting.GENERIC: (0, 1, 2),
    LabelSetting.CONTRADICTION_FOCUSED: (0, 1),
    LabelSetting.ERROR_FOCUSED: (0, 1),
}

_ALIASES = {
    "generic": LabelSetting.GENERIC,
    "0-1-2": LabelSetting.GENERIC,
    "con-focus": LabelSetting.CONTRADICTION_FOCUSED,
    "contradiction_focused": LabelSetting.CONTRADICTION_FOCUSED,
    "contradiction-focused": LabelSetting.CONTRADICTION_FOCUSED,
    "0-1-0": LabelSetting.CONTRADICTION_FOCUSED,
    "err-focus": LabelSetting.ERROR_FOCUSED,
    "error_focused": LabelSetting.ERROR_FOCUSED,
    "error-focused": LabelSetting.ERROR_FOCUSED,
    "0-1-1": LabelSetting.ERROR_FOCUSED,
}


def parse_setting(name) -> LabelSetting:
    """Resolve a setting name or any of its aliases (``"0-1-1"`` etc.)."""
    if isinstance(name, LabelSetting):
        return name
    try:
        return _ALIASES[str(name).strip().lower()]
    except KeyError:
        raise ValueError(
            f"unknown label setting {name!r}; expected one of {sorted(_ALIASES)}"
        ) from None


def remap_labels(labels: Iterable[int], setting) -> list[int]:
    table = parse_setting(setting).remap_table
    out = []
    for label in labels:
        if isinstance(label, bool) or int(label) != label or label not in VALID_LABELS:
            raise InvalidLabel(f"invalid label {label!r}")
        out.append(table[int(label)])
    return out


def remap_probs(rows, setting) -> np.ndarray:
    """Merge probability mass of the neutral column into its target label.

    Equivalent to remapping the label of every outcome, so argmax over the
    result agrees with :func:`remap_labels` applied to the outcome space.
    """
    setting = parse_setting(setting)
    rows = np.asarray(rows, dtype=np.float64)
    target = setting.remap_table[LabelId.NEUTRAL]
    if target == LabelId.NEUTRAL:
        return rows.copy()
    out = rows.copy()
    out[..., target] += out[..., LabelId.NEUTRAL]
    out[..., LabelId.NEUTRAL] = 0.0
    return out


def decode_word_labels(rows, setting) -> list[int]:
    """Argmax over remapped word rows.

    The separator column is never a legal word label and is excluded.  Ties go
    to the lowest label id (``np.argmax`` returns the first maximum).
    """
    probs = remap_probs(rows, setting)
    if probs.size == 0:
        return []
    return [int(i) for i in np.argmax(probs[:, : LabelId.SEPARATOR], axis=1)]


_KIND_LABEL = {
    SpanKind.CORRECT: LabelId.ENTAILMENT,
    SpanKind.INCORRECT: LabelId.CONTRADICTION,
    SpanKind.IRRELEVANT: LabelId.NEUTRAL,
    # omissions live on the premise side and reuse neutral
    SpanKind.OMISSION: LabelId.NEUTRAL,
}


def label_of_span_kind(kind) -> LabelId:
    try:
        return _KIND_LABEL[SpanKind(kind)]
    except (KeyError, ValueError):
        raise InvalidLabel(f"unknown span kind {kind!r}") from None


def _word_labels(n_words: int, spans) -> list[int]:
    labels = [int(LabelId.NONE)] * n_words
    for span in spans:
        value = int(label_of_span_kind(span.kind))
        for i in range(span.start_word, span.end_word):
            labels[i] = value
    return labels


def response_word_labels(annotation: ResponseAnnotation) -> list[int]:
    """Per-word labels of a student response (hypothesis side)."""
    return _word_labels(len(annotation.words), annotation.spans)


def gold_word_labels(gold: GoldAnnotation) -> list[int]:
    """Per-word labels of a gold answer: omitted words are neutral, the rest none."""
    return _word_labels(len(gold.words), gold.spans)


def label_fingerprint() -> str:
    """Stable digest of the label space, stored in checkpoints."""
    desc = ";".join(f"{l.name}={int(l)}" for l in LabelId)
    desc += "|" + ";".join(f"{s.value}:{_REMAP[s]}" for s in LabelSetting)
    return hashlib.sha256(desc.encode()).hexdigest()[:16]


def category_set(labels: Sequence[int]) -> set[int]:
    return {int(l) for l in labels if l not in (LabelId.NONE, LabelId.SEPARATOR)}
