"""SME markup: parsing, rendering, dataset I/O and summary statistics.

Student responses use ``<correct>``, ``[incorrect]`` and ``{irrelevant}``;
gold answers use ``{omitted}`` only.  Words are whitespace-delimited tokens of
the delimiter-stripped text, with punctuation left attached.
"""

from __future__ import annotations

import csv
import enum
import html
import json
import logging
import re
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    EmptySpan,
    InvalidDelimiter,
    InvalidGrade,
    MarkupError,
    NestedSpan,
    OverlappingSpan,
    SchemaError,
    UnbalancedDelimiter,
)

logger = logging.getLogger(__name__)

DELIMITERS = "<>[]{}"
_PAIRS = {"<": ">", "[": "]", "{": "}"}
_CLOSERS = {v: k for k, v in _PAIRS.items()}
VALID_GRADES = (0.0, 0.5, 1.0)
_WORD_RE = re.compile(r"\S+")


class SpanKind(str, enum.Enum):
    CORRECT = "correct"
    INCORRECT = "incorrect"
    IRRELEVANT = "irrelevant"
    OMISSION = "omission"


RESPONSE_KINDS = {"<": SpanKind.CORRECT, "[": SpanKind.INCORRECT, "{": SpanKind.IRRELEVANT}
GOLD_KINDS = {"{": SpanKind.OMISSION}
_KIND_DELIMS = {
    SpanKind.CORRECT: ("<", ">"),
    SpanKind.INCORRECT: ("[", "]"),
    SpanKind.IRRELEVANT: ("{", "}"),
    SpanKind.OMISSION: ("{", "}"),
}

# colors follow the annotation guidelines: green / red / yellow / blue
KIND_COLORS = {
    SpanKind.CORRECT: ("\x1b[32m", "#2e8b57"),
    SpanKind.INCORRECT: ("\x1b[31m", "#d62728"),
    SpanKind.IRRELEVANT: ("\x1b[33m", "#e6b800"),
    SpanKind.OMISSION: ("\x1b[34m", "#1f77b4"),
}
_ANSI_RESET = "\x1b[0m"


@dataclass(frozen=True)
class MarkedSpan:
    """A labeled region; word indices are ``[start_word, end_word)``."""

    kind: SpanKind
    start_word: int
    end_word: int
    start_char: int
    end_char: int

    @property
    def n_words(self) -> int:
        return self.end_word - self.start_word


@dataclass(frozen=True)
class ResponseAnnotation:
    plain_text: str
    words: tuple[str, ...]
    spans: tuple[MarkedSpan, ...]
    grade: float
    annotator_id: str
    feedback: str | None = None


@dataclass(frozen=True)
class GoldAnnotation:
    plain_text: str
    words: tuple[str, ...]
    spans: tuple[MarkedSpan, ...]


@dataclass(frozen=True)
class ResponseRecord:
    response_id: str
    annotations: tuple[ResponseAnnotation, ...]
    gold_annotations: tuple[GoldAnnotation, ...]

    @property
    def words(self) -> tuple[str, ...]:
        return self.annotations[0].words

    def versions(self):
        """Yield ``(response_annotation, gold_annotation)`` per annotator."""
        return zip(self.annotations, self.gold_annotations)


@dataclass(frozen=True)
class QuestionRecord:
    question_id: str
    question_text: str
    gold_answer: str
    responses: tuple[ResponseRecord, ...] = field(default_factory=tuple)

    @property
    def gold_words(self) -> tuple[str, ...]:
        return tuple(self.gold_answer.split())


def word_offsets(text: str) -> list[tuple[int, int]]:
    return [(m.start(), m.end()) for m in _WORD_RE.finditer(text)]


def _strip(markup: str, kinds: dict, lenient: bool):
    plain: list[str] = []
    raw_spans = []
    stack: list[tuple[str, int, int]] = []  # (opener, plain offset, markup offset)
    for i, ch in enumerate(markup):
        if ch in _PAIRS:
            if ch not in kinds:
                raise InvalidDelimiter(f"delimiter {ch!r} not allowed here", i)
            if stack and not lenient:
                raise NestedSpan(f"{ch!r} opened inside {stack[-1][0]!r}", i)
            if stack:
                logger.warning("flattening nested %r at offset %d", ch, i)
            stack.append((ch, len(plain), i))
        elif ch in _CLOSERS:
            if _CLOSERS[ch] not in kinds:
                raise InvalidDelimiter(f"delimiter {ch!r} not allowed here", i)
            if not stack:
                raise UnbalancedDelimiter(f"unmatched closing {ch!r}", i)
            opener, start, pos = stack.pop()
            if _PAIRS[opener] != ch:
                raise UnbalancedDelimiter(f"{ch!r} closes {opener!r} opened at {pos}", i)
            if not stack:
                raw_spans.append((kinds[opener], start, len(plain), pos))
        else:
            plain.append(ch)
    if stack:
        opener, _, pos = stack[0]
        raise UnbalancedDelimiter(f"unclosed {opener!r}", pos)
    return "".join(plain), raw_spans


def _parse(markup: str, kinds: dict, lenient: bool):
    plain, raw_spans = _strip(markup, kinds, lenient)
    offsets = word_offsets(plain)
    spans = []
    for kind, start, end, pos in raw_spans:
        idx = [w for w, (ws, we) in enumerate(offsets) if ws < end and we > start]
        if not idx:
            raise EmptySpan("span contains no words", pos)
        first, last = idx[0], idx[-1] + 1
        if spans and spans[-1].end_word > first:
            if not lenient:
                raise OverlappingSpan("span shares a word with the previous span", pos)
            logger.warning("span at offset %d shares a word with its neighbour", pos)
            first = spans[-1].end_word
            if first >= last:
                continue
        spans.append(MarkedSpan(kind, first, last, start, end))
    return plain, tuple(w for w in (plain[s:e] for s, e in offsets)), tuple(spans)


def _check_grade(grade) -> float:
    if isinstance(grade, bool):
        raise InvalidGrade(f"grade must be 0, 0.5 or 1, got {grade!r}")
    try:
        value = float(grade)
    except (TypeError, ValueError):
        raise InvalidGrade(f"grade must be 0, 0.5 or 1, got {grade!r}") from None
    if value not in VALID_GRADES:
        raise InvalidGrade(f"grade must be 0, 0.5 or 1, got {grade!r}")
    return value


def parse_marked_response(
    markup_text: str,
    grade=0.0,
    annotator_id: str = "",
    feedback: str | None = None,
    *,
    lenient: bool = False,
) -> ResponseAnnotation:
    """Parse an SME-marked student response.

    Args:
        markup_text: response text with ``<>``, ``[]`` and ``{}`` regions.
        grade: 0, 0.5 or 1.
        annotator_id: identifier of the SME.
        feedback: optional free-text comment; stored, never interpreted.
        lenient: flatten nested regions to the outermost one instead of
            raising :class:`NestedSpan`.

    Raises:
        UnbalancedDelimiter, NestedSpan, OverlappingSpan, EmptySpan, InvalidGrade
    """
    value = _check_grade(grade)
    plain, words, spans = _parse(markup_text, RESPONSE_KINDS, lenient)
    return ResponseAnnotation(plain, words, spans, value, str(annotator_id), feedback)


def parse_marked_gold(markup_text: str, *, lenient: bool = False) -> GoldAnnotation:
    """Parse a gold answer whose ``{}`` regions mark omitted content."""
    plain, words, spans = _parse(markup_text, GOLD_KINDS, lenient)
    return GoldAnnotation(plain, words, spans)


def render_marked(annotation, style: str = "markup") -> str:
    """Render any object with ``plain_text`` and ``spans``.

    ``markup`` inverts parsing exactly; ``ansi`` and ``html`` color the spans.
    """
    text = annotation.plain_text
    if style not in ("markup", "ansi", "html"):
        raise ValueError(f"unknown style {style!r}")
    esc = html.escape if style == "html" else (lambda s: s)
    out = []
    pos = 0
    for span in sorted(annotation.spans, key=lambda s: s.start_char):
        out.append(esc(text[pos : span.start_char]))
        inner = text[span.start_char : span.end_char]
        if style == "markup":
            left, right = _KIND_DELIMS[span.kind]
            out.append(f"{left}{inner}{right}")
        elif style == "ansi":
            out.append(f"{KIND_COLORS[span.kind][0]}{inner}{_ANSI_RESET}")
        else:
            color = KIND_COLORS[span.kind][1]
            out.append(
                f'<span class="mk-{span.kind.value}" '
                f'style="background-color:{color}33;border-bottom:2px solid {color}">'
                f"{esc(inner)}</span>"
            )
        pos = span.end_char
    out.append(esc(text[pos:]))
    return "".join(out)


# ---------------------------------------------------------------------------
# dataset I/O


def _require(obj, key, kind, locator):
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", locator)
    if key not in obj:
        raise SchemaError(f"missing field {key!r}", locator)
    value = obj[key]
    if kind is not None and (not isinstance(value, kind) or isinstance(value, bool)):
        raise SchemaError(f"field {key!r} has wrong type {type(value).__name__}", locator)
    return value


def _same_words(a: Sequence[str], b: Sequence[str]) -> bool:
    return tuple(a) == tuple(b)


def record_from_dict(obj: dict, locator: str = "record", *, lenient: bool = False) -> QuestionRecord:
    qid = str(_require(obj, "question_id", (str, int), locator))
    qtext = _require(obj, "question_text", str, locator)
    gold = _require(obj, "gold_answer", str, locator)
    responses = _require(obj, "responses", list, locator)
    seen = set()
    out = []
    for r_i, resp in enumerate(responses):
        r_loc = f"{locator}.responses[{r_i}]"
        rid = str(_require(resp, "response_id", (str, int), r_loc))
        if rid in seen:
            raise SchemaError(f"duplicate response_id {rid!r}", r_loc)
        seen.add(rid)
        anns = _require(resp, "annotations", list, r_loc)
        if not 1 <= len(anns) <= 2:
            raise SchemaError(f"expected 1 or 2 annotator versions, got {len(anns)}", r_loc)
        parsed, golds, annotators = [], [], set()
        for a_i, ann in enumerate(anns):
            a_loc = f"{r_loc}.annotations[{a_i}]"
            aid = str(_require(ann, "annotator_id", (str, int), a_loc))
            if aid in annotators:
                raise SchemaError(f"duplicate annotator_id {aid!r}", a_loc)
            annotators.add(aid)
            markup = _require(ann, "markup", str, a_loc)
            grade = _require(ann, "grade", (int, float), a_loc)
            feedback = ann.get("feedback")
            if feedback is not None and not isinstance(feedback, str):
                raise SchemaError("field 'feedback' must be a string", a_loc)
            gold_markup = ann.get("gold_markup", gold)
            if not isinstance(gold_markup, str):
                raise SchemaError("field 'gold_markup' must be a string", a_loc)
            try:
                ra = parse_marked_response(markup, grade, aid, feedback, lenient=lenient)
                ga = parse_marked_gold(gold_markup, lenient=lenient)
            except (MarkupError, InvalidGrade) as exc:
                raise SchemaError(str(exc), a_loc) from exc
            if not _same_words(ga.words, gold.split()):
                raise SchemaError("gold_markup text differs from gold_answer", a_loc)
            if parsed and not _same_words(ra.words, parsed[0].words):
                raise SchemaError("annotator versions disagree on the response text", a_loc)
            parsed.append(ra)
            golds.append(ga)
        out.append(ResponseRecord(rid, tuple(parsed), tuple(golds)))
    return QuestionRecord(qid, qtext, gold, tuple(out))


def record_to_dict(record: QuestionRecord) -> dict:
    return {
        "question_id": record.question_id,
        "question_text": record.question_text,
        "gold_answer": record.gold_answer,
        "responses": [
            {
                "response_id": resp.response_id,
                "annotations": [
                    {
                        "annotator_id": ann.annotator_id,
                        "markup": render_marked(ann),
                        "grade": _grade_json(ann.grade),
                        **({"feedback": ann.feedback} if ann.feedback is not None else {}),
                        "gold_markup": render_marked(gold),
                    }
                    for ann, gold in resp.versions()
                ],
            }
            for resp in record.responses
        ],
    }


def _grade_json(grade: float):
    return 0.5 if grade == 0.5 else int(grade)


def _check_unique(records: Sequence[QuestionRecord]):
    seen = set()
    for rec in records:
        if rec.question_id in seen:
            raise SchemaError(f"duplicate question_id {rec.question_id!r}")
        seen.add(rec.question_id)


def load_jsonl(path, *, lenient: bool = False) -> list[QuestionRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            loc = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError(f"invalid JSON: {exc.msg}", loc) from exc
            rec = record_from_dict(obj, loc, lenient=lenient)
            if any(r.question_id == rec.question_id for r in records):
                raise SchemaError(f"duplicate question_id {rec.question_id!r}", loc)
            records.append(rec)
    return records


RAW_COLUMNS = (
    "question_id",
    "question_text",
    "gold_answer",
    "response_id",
    "annotator_id",
    "markup",
    "grade",
    "gold_markup",
)


def load_raw_markup(path, *, lenient: bool = False) -> list[QuestionRecord]:
    """Import every ``*.csv`` under ``path`` (one row per annotator version).

    Columns: ``question_id, question_text, gold_answer, response_id,
    annotator_id, markup, grade, gold_markup`` and optionally ``feedback``.
    """
    path = Path(path)
    files = sorted(path.glob("*.csv")) if path.is_dir() else [path]
    questions: dict[str, dict] = {}
    for file in files:
        with open(file, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            missing = [c for c in RAW_COLUMNS if c not in (reader.fieldnames or [])]
            if missing:
                raise SchemaError(f"missing columns {missing}", str(file))
            for rowno, row in enumerate(reader, 2):
                loc = f"{file}:{rowno}"
                qid = row["question_id"]
                q = questions.setdefault(
                    qid,
                    {
                        "question_id": qid,
                        "question_text": row["question_text"],
                        "gold_answer": row["gold_answer"],
                        "responses": {},
                        "_loc": loc,
                    },
                )
                if q["gold_answer"] != row["gold_answer"]:
                    raise SchemaError("gold_answer differs between rows of one question", loc)
                try:
                    grade = float(row["grade"])
                except ValueError:
                    raise SchemaError(f"bad grade {row['grade']!r}", loc) from None
                ann = {
                    "annotator_id": row["annotator_id"],
                    "markup": row["markup"],
                    "grade": grade,
                    "gold_markup": row["gold_markup"] or row["gold_answer"],
                }
                if row.get("feedback"):
                    ann["feedback"] = row["feedback"]
                q["responses"].setdefault(row["response_id"], []).append(ann)
    records = []
    for q in questions.values():
        obj = dict(q)
        loc = obj.pop("_loc")
        obj["responses"] = [
            {"response_id": rid, "annotations": anns} for rid, anns in q["responses"].items()
        ]
        records.append(record_from_dict(obj, loc, lenient=lenient))
    return records


def load_dataset(path, format: str = "jsonl", *, lenient: bool = False) -> list[QuestionRecord]:
    """Load and validate BioMarking-style data.

    Raises:
        SchemaError: with a ``file:line`` locator and field path.
    """
    if format == "jsonl":
        records = load_jsonl(path, lenient=lenient)
    elif format in ("raw", "raw_markup"):
        records = load_raw_markup(path, lenient=lenient)
    else:
        raise ValueError(f"unknown dataset format {format!r}")
    _check_unique(records)
    return records


def save_dataset(records: Iterable[QuestionRecord], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(record_to_dict(rec), ensure_ascii=False) + "\n")


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class DatasetStats:
    n_questions: int = 0
    n_responses: int = 0
    n_annotations: int = 0
    responses_per_question_mean: float = 0.0
    responses_per_question_sd: float = 0.0
    grade_counts: dict = field(default_factory=lambda: {0.0: 0, 0.5: 0, 1.0: 0})
    grade_fractions: dict = field(default_factory=lambda: {0.0: 0.0, 0.5: 0.0, 1.0: 0.0})
    mean_gold_words: float = 0.0
    mean_response_words: float = 0.0

    def to_dict(self) -> dict:
        out = dict(self.__dict__)
        out["grade_counts"] = {str(_grade_json(k)): v for k, v in self.grade_counts.items()}
        out["grade_fractions"] = {str(_grade_json(k)): v for k, v in self.grade_fractions.items()}
        return out


def dataset_stats(records: Sequence[QuestionRecord]) -> DatasetStats:
    """Summary counts over unique responses.

    Grade fractions count every annotator's grade, so their numerators sum to
    ``n_annotations``.  The spread of responses per question is the sample
    standard deviation.
    """
    if not records:
        return DatasetStats()
    per_question = [len(r.responses) for r in records]
    n_responses = sum(per_question)
    counts = {g: 0 for g in VALID_GRADES}
    resp_words = []
    for rec in records:
        for resp in rec.responses:
            resp_words.append(len(resp.words))
            for ann in resp.annotations:
                counts[ann.grade] += 1
    n_ann = sum(counts.values())
    return DatasetStats(
        n_questions=len(records),
        n_responses=n_responses,
        n_annotations=n_ann,
        responses_per_question_mean=n_responses / len(records),
        responses_per_question_sd=statistics.stdev(per_question) if len(records) > 1 else 0.0,
        grade_counts=counts,
        grade_fractions={g: (c / n_ann if n_ann else 0.0) for g, c in counts.items()},
        mean_gold_words=statistics.fmean(len(r.gold_words) for r in records),
        mean_response_words=statistics.fmean(resp_words) if resp_words else 0.0,
    )
