"""Token-classification marker: encoder + linear head, training and inference.

Every token embedding ``e_i`` from the encoder is scored by a weight matrix
``W`` (``D x 5``) and passed through a softmax, giving one distribution over
the label space per token.  Word-level predictions read the row of each
word's first subword.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import logging
import math
import os
import random
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
import torch
from torch import nn
from transformers import get_linear_schedule_with_warmup

from .alignment import (
    IGNORE_INDEX,
    HFWordTokenizer,
    WordTokenizer,
    backproject_to_words,
    project_to_tokens,
    train_wordpiece,
)
from .errors import (
    CheckpointMismatch,
    EmptyCorpus,
    EmptyInput,
    EncoderUnavailable,
    NonFiniteLoss,
    TooLong,
    UnknownEncoder,
    ValidationError,
)
from .esnli import WordLabeledPair, is_stopword, load_stopwords
from .labels import NUM_LABELS, LabelId, LabelSetting, decode_word_labels, label_fingerprint, parse_setting
from .markup import MarkedSpan, SpanKind, word_offsets

logger = logging.getLogger(__name__)

CHECKPOINT_FORMAT = "marking-checkpoint/1"
CONFIG_VERSION = 1


@dataclass(frozen=True)
class EncoderSpec:
    hf_id: str | None
    model_type: str
    hidden_size: int
    num_hidden_layers: int
    num_attention_heads: int
    intermediate_size: int
    vocab_size: int | None = None
    max_position_embeddings: int = 512
    type_vocab_size: int = 2
    pad_token_id: int = 0

    @property
    def scratch(self) -> bool:
        return self.hf_id is None


ENCODERS = {
    "bert-base": EncoderSpec("bert-base-uncased", "bert", 768, 12, 12, 3072, 30522),
    "bert-large": EncoderSpec("bert-large-uncased", "bert", 1024, 24, 16, 4096, 30522),
    "roberta-base": EncoderSpec("roberta-base", "roberta", 768, 12, 12, 3072, 50265, 514, 1, 1),
    "roberta-large": EncoderSpec("roberta-large", "roberta", 1024, 24, 16, 4096, 50265, 514, 1, 1),
    # randomly initialized, vocabulary trained on the training corpus
    "scratch-tiny": EncoderSpec(None, "bert", 64, 2, 2, 256),
    "scratch-small": EncoderSpec(None, "bert", 128, 4, 4, 512),
}
_ALIASES = {
    "bert-base-uncased": "bert-base",
    "bert-large-uncased": "bert-large",
}


def resolve_encoder(name: str) -> EncoderSpec:
    key = _ALIASES.get(name, name)
    if key not in ENCODERS:
        raise UnknownEncoder(f"unknown encoder {name!r}; known: {sorted(ENCODERS)}")
    return ENCODERS[key]


def _hf_config(spec: EncoderSpec, vocab_size: int, pad_id: int | None = None):
    from transformers import BertConfig, RobertaConfig

    cls = {"bert": BertConfig, "roberta": RobertaConfig}[spec.model_type]
    return cls(
        vocab_size=vocab_size,
        hidden_size=spec.hidden_size,
        num_hidden_layers=spec.num_hidden_layers,
        num_attention_heads=spec.num_attention_heads,
        intermediate_size=spec.intermediate_size,
        max_position_embeddings=spec.max_position_embeddings,
        type_vocab_size=spec.type_vocab_size,
        pad_token_id=spec.pad_token_id if pad_id is None else pad_id,
    )


def _encoder_from_config(config):
    from transformers import BertModel, RobertaModel

    cls = {"bert": BertModel, "roberta": RobertaModel}.get(config.model_type)
    if cls is None:
        from transformers import AutoModel

        return AutoModel.from_config(config)
    return cls(config, add_pooling_layer=False)


class MarkingModel(nn.Module):
    """Encoder ``T`` plus the token classifier ``W``."""

    def __init__(self, encoder: nn.Module, tokenizer: WordTokenizer | None, encoder_name: str,
                 max_length: int = 512, dropout: float = 0.1):
        super().__init__()
        self.encoder = encoder
        self.tokenizer = tokenizer
        self.encoder_name = encoder_name
        self.max_length = max_length
        self.dropout = nn.Dropout(dropout)
        self.classifier = nn.Linear(self.embedding_dim, NUM_LABELS)

    @property
    def embedding_dim(self) -> int:
        return int(self.encoder.config.hidden_size)

    @property
    def W(self) -> torch.Tensor:
        """Classifier weights in ``D x |labels|`` orientation."""
        return self.classifier.weight.T

    @property
    def uses_token_types(self) -> bool:
        return getattr(self.encoder.config, "type_vocab_size", 1) > 1

    def forward(self, input_ids, attention_mask, token_type_ids=None):
        kwargs = {"input_ids": input_ids, "attention_mask": attention_mask}
        if token_type_ids is not None and self.uses_token_types:
            kwargs["token_type_ids"] = token_type_ids
        hidden = self.encoder(**kwargs).last_hidden_state
        return self.classifier(self.dropout(hidden))


# pretokenized input to byte-level BPE needs the word-initial space marker
_BYTE_LEVEL = ("roberta", "longformer", "bart", "gpt2")


def _set_seed(seed: int):
    random.seed(seed)
    np.random.seed(seed % 2**32)
    torch.manual_seed(seed)


def build_classifier(
    encoder_name: str,
    *,
    tokenizer=None,
    pretrained: bool = True,
    seed: int = 0,
    dropout: float = 0.1,
    max_length: int = 512,
) -> MarkingModel:
    """Build a marker on top of a named encoder.

    Args:
        encoder_name: a registry name (``roberta-large``, ``bert-base``,
            ``scratch-small`` ...) or a local directory holding a
            pretrained ``transformers`` model and tokenizer.
        tokenizer: a ``transformers`` fast tokenizer or :class:`WordTokenizer`.
            Required for ``scratch-*`` encoders.
        pretrained: load pretrained weights for registry encoders.  With
            ``False`` the encoder is randomly initialized from its registry
            architecture.
        seed: seeds the random initialization of ``W`` (and of scratch
            encoders).

    Raises:
        UnknownEncoder: the name is neither registered nor a directory.
        EncoderUnavailable: pretrained weights cannot be loaded.
    """
    if tokenizer is not None and not isinstance(tokenizer, WordTokenizer):
        tokenizer = HFWordTokenizer(tokenizer)
    _set_seed(seed)
    if os.path.isdir(str(encoder_name)):
        from transformers import AutoModel, AutoTokenizer

        encoder = AutoModel.from_pretrained(encoder_name)
        if tokenizer is None:
            kwargs = {"add_prefix_space": True} if encoder.config.model_type in _BYTE_LEVEL else {}
            tokenizer = HFWordTokenizer(AutoTokenizer.from_pretrained(encoder_name, **kwargs))
    else:
        spec = resolve_encoder(encoder_name)
        if spec.scratch:
            if tokenizer is None:
                raise ValueError(f"{encoder_name} needs a tokenizer (see train_wordpiece)")
            encoder = _encoder_from_config(_hf_config(spec, tokenizer.vocab_size, tokenizer.pad_id))
        elif pretrained:
            from transformers import AutoModel, AutoTokenizer

            try:
                encoder = AutoModel.from_pretrained(spec.hf_id, add_pooling_layer=False)
                if tokenizer is None:
                    tokenizer = HFWordTokenizer(
                        AutoTokenizer.from_pretrained(spec.hf_id, add_prefix_space=spec.model_type in _BYTE_LEVEL)
                    )
            except OSError as exc:
                raise EncoderUnavailable(
                    f"pretrained weights for {spec.hf_id!r} are not available: {exc}"
                ) from exc
        else:
            vocab = tokenizer.vocab_size if tokenizer is not None else spec.vocab_size
            pad = tokenizer.pad_id if tokenizer is not None else None
            encoder = _encoder_from_config(_hf_config(spec, vocab, pad))
    max_pos = getattr(encoder.config, "max_position_embeddings", max_length)
    if getattr(encoder.config, "model_type", "") == "roberta":
        max_pos -= 2
    model = MarkingModel(encoder, tokenizer, str(encoder_name), min(max_length, max_pos), dropout)
    torch.manual_seed(seed)
    model.classifier.reset_parameters()
    return model


# ---------------------------------------------------------------------------
# training


@dataclass
class TrainConfig:
    """Flat training configuration; defaults are the fine-tuning recipe."""

    learning_rate: float = 2e-5
    weight_decay: float = 0.1
    warmup_ratio: float = 0.05
    optimizer: str = "adam"
    epochs: int = 3
    batch_size: int = 16
    seed: int = 42
    setting: str = "generic"
    dip: bool = False
    rm_stopwords: bool = False
    encoder: str = "roberta-large"
    pretrained: bool = True
    premise_highlights: bool = False
    highlights: str = "first"
    max_steps: int | None = None
    max_length: int = 512
    max_grad_norm: float = 1.0
    dropout: float = 0.1
    vocab_size: int = 8000
    train_limit: int | None = None
    train_data: str | None = None
    eval_data: str | None = None
    output_dir: str = "runs/train"
    config_version: int = CONFIG_VERSION

    def __post_init__(self):
        self.setting = parse_setting(self.setting).value
        if self.optimizer not in ("adam", "adam-l2", "sgd"):
            raise ValidationError(f"unknown optimizer {self.optimizer!r}")

    @classmethod
    def from_dict(cls, obj: dict) -> "TrainConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(obj) - names)
        if unknown:
            raise ValidationError(f"unknown config keys: {unknown}")
        version = obj.get("config_version", CONFIG_VERSION)
        if version != CONFIG_VERSION:
            raise ValidationError(f"unsupported config_version {version}")
        return cls(**obj)

    @classmethod
    def load(cls, path) -> "TrainConfig":
        import yaml

        with open(path, encoding="utf-8") as fh:
            obj = yaml.safe_load(fh) or {}
        if not isinstance(obj, dict):
            raise ValidationError(f"{path}: config must be a flat mapping")
        return cls.from_dict(obj)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass
class TrainLog:
    steps: list[dict] = field(default_factory=list)
    n_examples: int = 0
    n_dropped_too_long: int = 0

    @property
    def final_loss(self) -> float | None:
        return self.steps[-1]["loss"] if self.steps else None

    def digest(self) -> str:
        """Hash of the exact loss sequence (floats hashed bit-for-bit)."""
        h = hashlib.sha256()
        for rec in self.steps:
            h.update(f"{rec['step']}:{float(rec['loss']).hex()}:{float(rec['lr']).hex()};".encode())
        return h.hexdigest()

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for rec in self.steps:
                fh.write(json.dumps(rec) + "\n")


def _collate(batch, pad_id):
    width = max(len(ex) for ex in batch)
    ids = torch.full((len(batch), width), pad_id, dtype=torch.long)
    types = torch.zeros((len(batch), width), dtype=torch.long)
    mask = torch.zeros((len(batch), width), dtype=torch.long)
    labels = torch.full((len(batch), width), IGNORE_INDEX, dtype=torch.long)
    for i, ex in enumerate(batch):
        n = len(ex)
        ids[i, :n] = torch.tensor(ex.input_ids)
        types[i, :n] = torch.tensor(ex.token_type_ids)
        mask[i, :n] = 1
        labels[i, :n] = torch.tensor(ex.labels)
    return ids, mask, types, labels


def _param_groups(model: nn.Module, weight_decay: float):
    decay, no_decay = [], []
    for name, p in model.named_parameters():
        if not p.requires_grad:
            continue
        (no_decay if p.ndim < 2 or "LayerNorm" in name or "layer_norm" in name else decay).append(p)
    return [
        {"params": decay, "weight_decay": weight_decay},
        {"params": no_decay, "weight_decay": 0.0},
    ]


def _optimizer(model, cfg: TrainConfig):
    groups = _param_groups(model, cfg.weight_decay)
    if cfg.optimizer == "adam":
        # Adam with decoupled weight decay
        return torch.optim.AdamW(groups, lr=cfg.learning_rate)
    if cfg.optimizer == "adam-l2":
        return torch.optim.Adam(groups, lr=cfg.learning_rate)
    return torch.optim.SGD(groups, lr=cfg.learning_rate)


def train(model: MarkingModel, corpus: Sequence[WordLabeledPair], cfg: TrainConfig,
          progress=None) -> tuple[MarkingModel, TrainLog]:
    """Fine-tune with token cross-entropy on unmasked positions.

    The corpus must already carry labels of ``cfg.setting``.  Pairs longer
    than the model limit are dropped.  The data order and all randomness
    derive from ``cfg.seed``.

    Raises:
        EmptyCorpus: nothing left to train on.
        NonFiniteLoss: the loss became NaN or infinite.
    """
    if model.tokenizer is None:
        raise ValidationError("model has no tokenizer")
    log = TrainLog()
    examples = []
    for pair in corpus:
        try:
            examples.append(project_to_tokens(pair, model.tokenizer, model.max_length))
        except TooLong:
            log.n_dropped_too_long += 1
    if log.n_dropped_too_long:
        logger.warning("dropped %d overlong training pairs", log.n_dropped_too_long)
    if not examples:
        raise EmptyCorpus("no training examples")
    log.n_examples = len(examples)

    per_epoch = math.ceil(len(examples) / cfg.batch_size)
    total = per_epoch * cfg.epochs
    if cfg.max_steps is not None:
        total = min(total, cfg.max_steps) if cfg.epochs > 0 else 0
    if total == 0:
        model.eval()
        return model, log

    _set_seed(cfg.seed)
    opt = _optimizer(model, cfg)
    warmup = math.ceil(cfg.warmup_ratio * total)
    sched = get_linear_schedule_with_warmup(opt, warmup, total)
    loss_fn = nn.CrossEntropyLoss(ignore_index=IGNORE_INDEX)
    gen = torch.Generator().manual_seed(cfg.seed)
    pad_id = model.tokenizer.pad_id

    model.train()
    step = 0
    epoch = 0
    while step < total:
        order = torch.randperm(len(examples), generator=gen).tolist()
        for start in range(0, len(order), cfg.batch_size):
            if step >= total:
                break
            batch = [examples[i] for i in order[start : start + cfg.batch_size]]
            ids, mask, types, labels = _collate(batch, pad_id)
            logits = model(ids, mask, types)
            loss = loss_fn(logits.reshape(-1, NUM_LABELS), labels.reshape(-1))
            if not torch.isfinite(loss):
                raise NonFiniteLoss(f"loss is {loss.item()} at step {step} (epoch {epoch})")
            opt.zero_grad()
            loss.backward()
            if cfg.max_grad_norm:
                nn.utils.clip_grad_norm_(model.parameters(), cfg.max_grad_norm)
            lr = opt.param_groups[0]["lr"]
            opt.step()
            sched.step()
            log.steps.append({"step": step, "epoch": epoch, "loss": float(loss.item()), "lr": float(lr)})
            if progress is not None:
                progress(log.steps[-1])
            step += 1
        epoch += 1
    model.eval()
    return model, log


def build_for_corpus(cfg: TrainConfig, corpus: Sequence[WordLabeledPair]) -> MarkingModel:
    """Build the encoder named in ``cfg``; scratch encoders get a fresh vocabulary."""
    tokenizer = None
    spec = None if os.path.isdir(cfg.encoder) else resolve_encoder(cfg.encoder)
    if spec is not None and spec.scratch:
        texts = (" ".join(p.premise) + " " + " ".join(p.hypothesis) for p in corpus)
        tokenizer = train_wordpiece(texts, vocab_size=cfg.vocab_size)
    return build_classifier(
        cfg.encoder,
        tokenizer=tokenizer,
        pretrained=cfg.pretrained,
        seed=cfg.seed,
        dropout=cfg.dropout,
        max_length=cfg.max_length,
    )


# ---------------------------------------------------------------------------
# inference


@torch.no_grad()
def _word_rows(model: MarkingModel, pair: WordLabeledPair, truncate: bool) -> np.ndarray:
    aligned = project_to_tokens(pair, model.tokenizer, model.max_length, truncate_premise=truncate)
    ids, mask, types, _ = _collate([aligned], model.tokenizer.pad_id)
    was_training = model.training
    model.eval()
    try:
        logits = model(ids, mask, types)[0].double()
    finally:
        model.train(was_training)
    probs = torch.softmax(logits, dim=-1).numpy()
    return backproject_to_words(probs, aligned)


def predict_word_probs(model: MarkingModel, premise_words: Sequence[str], hypothesis_words: Sequence[str],
                       *, truncate: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Per-word probability rows for the premise and the hypothesis.

    Raises:
        TooLong: the pair does not fit (unless ``truncate`` drops premise words).
    """
    if model.tokenizer is None:
        raise ValidationError("model has no tokenizer")
    pair = WordLabeledPair(
        tuple(premise_words),
        tuple(hypothesis_words),
        (int(LabelId.NONE),) * len(premise_words),
        (int(LabelId.NONE),) * len(hypothesis_words),
    )
    rows = _word_rows(model, pair, truncate)
    n = len(premise_words)
    return rows[:n], rows[n + 1 :]


_LABEL_KIND = {0: SpanKind.CORRECT, 1: SpanKind.INCORRECT, 2: SpanKind.IRRELEVANT}


def label_runs(labels: Sequence[int]) -> list[tuple[int, int, int]]:
    """Maximal runs of identical labels other than 3, as ``(label, start, end)``."""
    runs = []
    start = 0
    for i in range(1, len(labels) + 1):
        if i == len(labels) or labels[i] != labels[start]:
            if labels[start] != LabelId.NONE:
                runs.append((int(labels[start]), start, i))
            start = i
    return runs


def _spans(text: str, runs, kind_of) -> tuple[MarkedSpan, ...]:
    offsets = word_offsets(text)
    return tuple(
        MarkedSpan(kind_of(label), s, e, offsets[s][0], offsets[e - 1][1]) for label, s, e in runs
    )


@dataclass(frozen=True)
class MarkedText:
    plain_text: str
    words: tuple[str, ...]
    spans: tuple[MarkedSpan, ...]


@dataclass(frozen=True)
class MarkingResult:
    setting: LabelSetting
    gold_answer: str
    response: str
    hypothesis_labels: tuple[int, ...]
    premise_labels: tuple[int, ...]
    spans: tuple[MarkedSpan, ...]
    omissions: tuple[MarkedSpan, ...]
    hypothesis_probs: np.ndarray | None = None
    premise_probs: np.ndarray | None = None

    @property
    def response_view(self) -> MarkedText:
        return MarkedText(self.response, tuple(self.response.split()), self.spans)

    @property
    def gold_view(self) -> MarkedText:
        return MarkedText(self.gold_answer, tuple(self.gold_answer.split()), self.omissions)

    def to_dict(self) -> dict:
        def span(s):
            return {"kind": s.kind.value, "start_word": s.start_word, "end_word": s.end_word,
                    "start_char": s.start_char, "end_char": s.end_char}

        return {
            "setting": self.setting.value,
            "hypothesis_labels": list(self.hypothesis_labels),
            "premise_labels": list(self.premise_labels),
            "spans": [span(s) for s in self.spans],
            "omissions": [span(s) for s in self.omissions],
        }


def result_from_labels(gold_answer: str, response: str, hypothesis_labels, premise_labels,
                       setting, hypothesis_probs=None, premise_probs=None) -> MarkingResult:
    """Group decoded word labels into response spans and gold-side omissions."""
    setting = parse_setting(setting)
    hyp = tuple(int(l) for l in hypothesis_labels)
    prem = tuple(int(l) for l in premise_labels)
    if len(hyp) != len(response.split()) or len(prem) != len(gold_answer.split()):
        raise ValidationError("label sequences do not match the texts")
    spans = _spans(response, label_runs(hyp), _LABEL_KIND.__getitem__)
    omissions: tuple[MarkedSpan, ...] = ()
    if setting is LabelSetting.GENERIC:
        runs = [r for r in label_runs(prem) if r[0] == LabelId.NEUTRAL]
        omissions = _spans(gold_answer, runs, lambda _: SpanKind.OMISSION)
    return MarkingResult(setting, gold_answer, response, hyp, prem, spans, omissions,
                         hypothesis_probs, premise_probs)


def mark(model: MarkingModel, gold_answer: str, student_response: str, setting="generic",
         *, rm_stopwords: bool = False, stoplist=None) -> MarkingResult:
    """Mark a student response against a gold answer.

    Stopwords, when removed, are hidden from the model and come back
    labeled 3 so spans index the original words.  Premise words predicted
    neutral become omission spans under the generic setting.

    Raises:
        EmptyInput: either text is empty after preprocessing.
    """
    setting = parse_setting(setting)
    gold_words = gold_answer.split()
    resp_words = student_response.split()
    stoplist = (load_stopwords() if stoplist is None else stoplist) if rm_stopwords else frozenset()
    g_keep = [i for i, w in enumerate(gold_words) if not is_stopword(w, stoplist)]
    r_keep = [i for i, w in enumerate(resp_words) if not is_stopword(w, stoplist)]
    if not g_keep or not r_keep:
        raise EmptyInput("gold answer and response must both contain words")
    prem_rows, hyp_rows = predict_word_probs(
        model, [gold_words[i] for i in g_keep], [resp_words[i] for i in r_keep], truncate=True
    )

    def expand(rows, keep, n):
        full = np.zeros((n, NUM_LABELS))
        full[:, LabelId.NONE] = 1.0
        full[keep] = rows
        labels = [int(LabelId.NONE)] * n
        for i, l in zip(keep, decode_word_labels(rows, setting)):
            labels[i] = l
        return full, labels

    h_full, h_labels = expand(hyp_rows, r_keep, len(resp_words))
    p_full, p_labels = expand(prem_rows, g_keep, len(gold_words))
    return result_from_labels(gold_answer, student_response, h_labels, p_labels, setting, h_full, p_full)


# ---------------------------------------------------------------------------
# checkpoints


def save_checkpoint(model: MarkingModel, path, train_config: TrainConfig | None = None,
                    extra: dict | None = None) -> None:
    """Write encoder weights, ``W``, tokenizer and config into one file."""
    tok_files = {}
    tok = getattr(model.tokenizer, "hf", None)
    if tok is not None:
        with tempfile.TemporaryDirectory() as tmp:
            tok.save_pretrained(tmp)
            for f in Path(tmp).iterdir():
                tok_files[f.name] = f.read_bytes()
    payload = {
        "format": CHECKPOINT_FORMAT,
        "label_fingerprint": label_fingerprint(),
        "encoder_name": model.encoder_name,
        "encoder_config": json.dumps(model.encoder.config.to_dict()),
        "max_length": model.max_length,
        "dropout": model.dropout.p,
        "state_dict": model.state_dict(),
        "tokenizer_files": tok_files,
        "train_config": json.dumps(train_config.to_dict() if train_config else None),
        "extra": json.dumps(extra or {}),
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    torch.save(payload, path)


def load_checkpoint(path) -> tuple[MarkingModel, dict]:
    """Rebuild a model saved by :func:`save_checkpoint`.

    Raises:
        CheckpointMismatch: wrong format or a different label space.
    """
    try:
        payload = torch.load(path, map_location="cpu", weights_only=True)
    except Exception as exc:
        raise CheckpointMismatch(f"{path}: not a marking checkpoint ({exc})") from exc
    if not isinstance(payload, dict) or payload.get("format") != CHECKPOINT_FORMAT:
        raise CheckpointMismatch(f"{path}: not a marking checkpoint")
    if payload["label_fingerprint"] != label_fingerprint():
        raise CheckpointMismatch(f"{path}: label space fingerprint mismatch")
    from transformers import AutoConfig, AutoTokenizer

    cfg_dict = json.loads(payload["encoder_config"])
    config = AutoConfig.for_model(cfg_dict.pop("model_type"), **cfg_dict)
    encoder = _encoder_from_config(config)
    tokenizer = None
    if payload["tokenizer_files"]:
        with tempfile.TemporaryDirectory() as tmp:
            for name, data in payload["tokenizer_files"].items():
                Path(tmp, name).write_bytes(data)
            tokenizer = HFWordTokenizer(AutoTokenizer.from_pretrained(tmp))
    model = MarkingModel(encoder, tokenizer, payload["encoder_name"], payload["max_length"], payload["dropout"])
    model.load_state_dict(payload["state_dict"])
    model.eval()
    meta = {
        "train_config": json.loads(payload["train_config"]),
        "extra": json.loads(payload["extra"]),
    }
    return model, meta
