"""Word-level precision / recall / F1 and accuracy against SME markings.

Counts are pooled over every word of every (response, annotator) version
before any ratio is taken.  Words whose gold label is 3 never enter the
category counts but do enter the accuracy denominator; separator positions
are never counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InvalidLabel, LengthMismatch, MissingPrediction
from .esnli import is_stopword, load_stopwords
from .labels import (
    VALID_LABELS,
    LabelId,
    LabelSetting,
    decode_word_labels,
    gold_word_labels,
    parse_setting,
    remap_labels,
    response_word_labels,
)

NONE = int(LabelId.NONE)
SEP = int(LabelId.SEPARATOR)


@dataclass
class ConfusionCounts:
    categories: tuple[int, ...]
    tp: dict = field(default_factory=dict)
    fp: dict = field(default_factory=dict)
    fn: dict = field(default_factory=dict)
    tn: dict = field(default_factory=dict)
    n_evaluated: int = 0
    n_correct: int = 0

    def __post_init__(self):
        for table in (self.tp, self.fp, self.fn, self.tn):
            for c in self.categories:
                table.setdefault(c, 0)

    def support(self, c: int) -> int:
        return self.tp[c] + self.fn[c]

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        if self.categories != other.categories:
            raise ValueError("cannot merge counts over different categories")
        return ConfusionCounts(
            self.categories,
            {c: self.tp[c] + other.tp[c] for c in self.categories},
            {c: self.fp[c] + other.fp[c] for c in self.categories},
            {c: self.fn[c] + other.fn[c] for c in self.categories},
            {c: self.tn[c] + other.tn[c] for c in self.categories},
            self.n_evaluated + other.n_evaluated,
            self.n_correct + other.n_correct,
        )

    @property
    def accuracy(self) -> float:
        return self.n_correct / self.n_evaluated if self.n_evaluated else 0.0

    def to_dict(self) -> dict:
        return {
            "categories": list(self.categories),
            "tp": {str(c): v for c, v in self.tp.items()},
            "fp": {str(c): v for c, v in self.fp.items()},
            "fn": {str(c): v for c, v in self.fn.items()},
            "tn": {str(c): v for c, v in self.tn.items()},
            "n_evaluated": self.n_evaluated,
            "n_correct": self.n_correct,
        }


def confusion_counts(pred_labels: Sequence[int], gold_labels: Sequence[int],
                     categories: Sequence[int]) -> ConfusionCounts:
    """Per-category TP/FP/FN/TN over positions whose gold label is a category.

    Raises:
        LengthMismatch: sequences differ in length.
        InvalidLabel: a gold label outside ``categories`` and {3, 4}.
    """
    if len(pred_labels) != len(gold_labels):
        raise LengthMismatch(f"{len(pred_labels)} predictions for {len(gold_labels)} gold labels")
    cats = tuple(categories)
    counts = ConfusionCounts(cats)
    allowed = set(cats) | {NONE, SEP}
    for p, g in zip(pred_labels, gold_labels):
        if g not in allowed:
            raise InvalidLabel(f"gold label {g} is not in {sorted(allowed)}")
        if p not in VALID_LABELS:
            raise InvalidLabel(f"invalid predicted label {p!r}")
        if g == SEP:
            continue
        counts.n_evaluated += 1
        counts.n_correct += p == g
        if g == NONE:
            continue
        for c in cats:
            if p == c and g == c:
                counts.tp[c] += 1
            elif p == c:
                counts.fp[c] += 1
            elif g == c:
                counts.fn[c] += 1
            else:
                counts.tn[c] += 1
    return counts


@dataclass(frozen=True)
class CategoryMetrics:
    precision: float
    recall: float
    f1: float
    support: int


def _ratio(a, b):
    return a / b if b else 0.0


def precision_recall_f1(counts: ConfusionCounts) -> dict[int, CategoryMetrics]:
    out = {}
    for c in counts.categories:
        p = _ratio(counts.tp[c], counts.tp[c] + counts.fp[c])
        r = _ratio(counts.tp[c], counts.tp[c] + counts.fn[c])
        out[c] = CategoryMetrics(p, r, _ratio(2 * p * r, p + r), counts.support(c))
    return out


def weighted(metrics: Mapping[int, CategoryMetrics], attr: str) -> float:
    """Support-weighted mean of one metric across categories."""
    total = sum(m.support for m in metrics.values())
    return _ratio(sum(getattr(m, attr) * m.support for m in metrics.values()), total)


@dataclass
class EvaluationReport:
    setting: LabelSetting
    counts: ConfusionCounts
    per_category: dict[int, CategoryMetrics]
    precision: float
    recall: float
    f1: float
    accuracy: float
    n_instances: int = 0
    flags: dict = field(default_factory=dict)
    per_annotator: dict[str, "EvaluationReport"] = field(default_factory=dict)
    omission: "EvaluationReport | None" = None

    @classmethod
    def from_counts(cls, setting, counts: ConfusionCounts, **kw) -> "EvaluationReport":
        per = precision_recall_f1(counts)
        return cls(
            parse_setting(setting), counts, per,
            weighted(per, "precision"), weighted(per, "recall"), weighted(per, "f1"),
            counts.accuracy, **kw,
        )

    def metrics(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1, "accuracy": self.accuracy}

    def to_dict(self) -> dict:
        out = {
            "setting": self.setting.value,
            **self.metrics(),
            "n_instances": self.n_instances,
            "flags": dict(self.flags),
            "per_category": {
                str(c): {"precision": m.precision, "recall": m.recall, "f1": m.f1, "support": m.support}
                for c, m in self.per_category.items()
            },
            "counts": self.counts.to_dict(),
        }
        if self.per_annotator:
            out["per_annotator"] = {k: v.to_dict() for k, v in self.per_annotator.items()}
        if self.omission is not None:
            out["omission"] = self.omission.to_dict()
        return out


def _keep(words, stoplist):
    return [i for i, w in enumerate(words) if not is_stopword(w, stoplist)]


def _lookup(predictions, qid, rid, aid):
    for key in ((qid, rid, aid), (qid, rid)):
        if key in predictions:
            return predictions[key]
    raise MissingPrediction(f"no prediction for question {qid!r}, response {rid!r}, annotator {aid!r}")


def evaluate_dataset(
    dataset,
    setting="generic",
    *,
    predictions: Mapping | None = None,
    premise_predictions: Mapping | None = None,
    model=None,
    rm_stopwords: bool = False,
    stoplist=None,
    include_omissions: bool = False,
) -> EvaluationReport:
    """Score predicted response-word labels against every annotator version.

    Predictions come either from ``model`` or from ``predictions``, a mapping
    keyed by ``(question_id, response_id[, annotator_id])`` to hypothesis word
    labels (over the stopword-filtered words when ``rm_stopwords``).  Labels
    are remapped to ``setting`` before counting.  With ``include_omissions``
    the premise-side neutral predictions are scored against the gold
    omission spans in a separate sub-report (generic setting only).

    Raises:
        MissingPrediction, LengthMismatch
    """
    setting = parse_setting(setting)
    if (predictions is None) == (model is None):
        raise ValueError("pass exactly one of predictions= or model=")
    stoplist = (load_stopwords() if stoplist is None else stoplist) if rm_stopwords else frozenset()
    cats = setting.categories
    include_omissions = include_omissions and setting is LabelSetting.GENERIC
    cache: dict = {}

    total = ConfusionCounts(cats)
    by_annotator: dict[str, ConfusionCounts] = {}
    by_annotator_n: dict[str, int] = {}
    omission_total = ConfusionCounts((int(LabelId.NEUTRAL),))
    n = 0
    for rec in dataset:
        for resp in rec.responses:
            for ann, gold in resp.versions():
                h_keep = _keep(ann.words, stoplist)
                p_keep = _keep(gold.words, stoplist)
                h_gold = remap_labels([response_word_labels(ann)[i] for i in h_keep], setting)
                p_gold = [gold_word_labels(gold)[i] for i in p_keep]
                if model is not None:
                    key = (rec.question_id, resp.response_id)
                    if key not in cache:
                        from .model import predict_word_probs

                        prem_rows, hyp_rows = predict_word_probs(
                            model, [gold.words[i] for i in p_keep], [ann.words[i] for i in h_keep],
                            truncate=True,
                        )
                        cache[key] = (decode_word_labels(hyp_rows, setting), decode_word_labels(prem_rows, setting))
                    h_pred, p_pred = cache[key]
                else:
                    h_pred = _lookup(predictions, rec.question_id, resp.response_id, ann.annotator_id)
                    p_pred = None
                    if include_omissions and premise_predictions is not None:
                        p_pred = _lookup(premise_predictions, rec.question_id, resp.response_id, ann.annotator_id)
                counts = confusion_counts(remap_labels(h_pred, setting), h_gold, cats)
                total = total + counts
                aid = ann.annotator_id
                by_annotator[aid] = by_annotator.get(aid, ConfusionCounts(cats)) + counts
                by_annotator_n[aid] = by_annotator_n.get(aid, 0) + 1
                if include_omissions and p_pred is not None:
                    omission_total = omission_total + confusion_counts(
                        remap_labels(p_pred, setting), p_gold, omission_total.categories
                    )
                n += 1
    flags = {"rm_stopwords": rm_stopwords}
    per_annotator = {
        aid: EvaluationReport.from_counts(setting, c, n_instances=by_annotator_n[aid], flags=flags)
        for aid, c in sorted(by_annotator.items())
    }
    omission = None
    if include_omissions and omission_total.n_evaluated:
        omission = EvaluationReport.from_counts(setting, omission_total, flags=flags)
    return EvaluationReport.from_counts(
        setting, total, n_instances=n, flags=flags, per_annotator=per_annotator, omission=omission
    )


SETTING_COLUMNS = {
    LabelSetting.GENERIC: ("0", "1", "2"),
    LabelSetting.CONTRADICTION_FOCUSED: ("0", "1", "0"),
    LabelSetting.ERROR_FOCUSED: ("0", "1", "1"),
}

TABLE_HEADER = ("Model", "Ent", "Con", "Neu", "Stopwords", "Pairs", "Precision", "Recall", "F1", "Accuracy")


def table_row(model: str, setting, rm_stopwords: bool, dip: bool, metrics: Mapping) -> tuple:
    ent, con, neu = SETTING_COLUMNS[parse_setting(setting)]
    return (
        model, ent, con, neu,
        "Yes" if rm_stopwords else "No",
        "Yes" if dip else "No",
        *(f"{metrics[k]:.3f}" if metrics.get(k) is not None else "-" for k in ("precision", "recall", "f1", "accuracy")),
    )


def format_table(rows: Sequence[Sequence[str]], header: Sequence[str] = TABLE_HEADER) -> str:
    """Fixed-width text table."""
    rows = [tuple(map(str, r)) for r in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h)) for i, h in enumerate(header)]
    line = "  ".join(str(h).ljust(w) for h, w in zip(header, widths))
    out = [line, "  ".join("-" * w for w in widths)]
    out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(out)
