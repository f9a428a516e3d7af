"""Word-level marking of student responses as token-level NLI."""

from .labels import LabelId, LabelSetting, label_of_span_kind, parse_setting, remap_labels
from .markup import (
    DatasetStats,
    GoldAnnotation,
    MarkedSpan,
    QuestionRecord,
    ResponseAnnotation,
    SpanKind,
    dataset_stats,
    load_dataset,
    parse_marked_gold,
    parse_marked_response,
    render_marked,
)

__version__ = "0.1.0"

__all__ = [
    "DatasetStats",
    "GoldAnnotation",
    "LabelId",
    "LabelSetting",
    "MarkedSpan",
    "QuestionRecord",
    "ResponseAnnotation",
    "SpanKind",
    "dataset_stats",
    "label_of_span_kind",
    "load_dataset",
    "parse_marked_gold",
    "parse_marked_response",
    "parse_setting",
    "remap_labels",
    "render_marked",
]
