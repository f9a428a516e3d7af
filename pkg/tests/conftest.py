import os
import sys
from pathlib import Path
from types import SimpleNamespace

os.environ.setdefault("HF_HUB_OFFLINE", "1")
os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")
os.environ.setdefault("MPLBACKEND", "Agg")

import pytest
import torch
from torch import nn

sys.path.insert(0, str(Path(__file__).parent))

from marking.alignment import WordTokenizer, train_wordpiece  # noqa: E402
from marking.model import MarkingModel  # noqa: E402

FIXTURE = Path(__file__).parents[1] / "src" / "marking" / "data" / "sample_fixture.jsonl"


class _Vocab(WordTokenizer):
    """Shared bookkeeping: piece strings get ids on first sight."""

    def __init__(self, prefix=("<s>",), middle=("<sep>",), suffix=("</s>",)):
        self.vocab = {"<pad>": 0, "<unk>": 1}
        self.pad_id, self.unk_id = 0, 1
        self.prefix_ids = [self._id(t) for t in prefix]
        self.middle_ids = [self._id(t) for t in middle]
        self.suffix_ids = [self._id(t) for t in suffix]

    def _id(self, piece):
        return self.vocab.setdefault(piece, len(self.vocab))

    @property
    def vocab_size(self):
        return len(self.vocab)

    def pieces(self, word):
        raise NotImplementedError

    def encode_words(self, words):
        return [[self._id(p) for p in self.pieces(w)] for w in words]


class IdentityTokenizer(_Vocab):
    """One token per word."""

    def pieces(self, word):
        return [word]


class CharTokenizer(_Vocab):
    """One token per character; a RoBERTa-like two-token separator."""

    def __init__(self):
        super().__init__(prefix=("<s>",), middle=("</s>", "</s>"), suffix=("</s>",))

    def pieces(self, word):
        return list(word)


class ChunkTokenizer(_Vocab):
    """Fixed-width chunks, continuation pieces prefixed with ``##``."""

    def __init__(self, width=4):
        super().__init__(prefix=(), middle=("<sep>",), suffix=())
        self.width = width

    def pieces(self, word):
        chunks = [word[i : i + self.width] for i in range(0, len(word), self.width)]
        return [chunks[0]] + ["##" + c for c in chunks[1:]]


@pytest.fixture
def identity_tokenizer():
    return IdentityTokenizer()


@pytest.fixture(scope="session")
def wordpiece():
    from synthetic_esnli import ACTIONS, PLACES, SUBJECTS

    texts = [f"a {s} is {v} {o} in the {p}" for s in SUBJECTS for v, o in ACTIONS for p in PLACES[:2]]
    return train_wordpiece(texts, vocab_size=120)


class StubEncoder(nn.Module):
    """Returns a fixed embedding per input id; no contextualization."""

    def __init__(self, table: torch.Tensor):
        super().__init__()
        self.table = nn.Embedding.from_pretrained(table.float(), freeze=True)
        self.config = SimpleNamespace(hidden_size=table.shape[1], type_vocab_size=1)

    def forward(self, input_ids, attention_mask, token_type_ids=None):
        return SimpleNamespace(last_hidden_state=self.table(input_ids))


def stub_model(tokenizer, table, weight, bias=None, name="stub"):
    """A :class:`MarkingModel` whose logits are ``table[id] @ weight.T + bias``."""
    model = MarkingModel(StubEncoder(table), tokenizer, name, max_length=512, dropout=0.0)
    with torch.no_grad():
        model.classifier.weight.copy_(torch.as_tensor(weight, dtype=torch.float32))
        model.classifier.bias.copy_(torch.zeros(5) if bias is None else torch.as_tensor(bias, dtype=torch.float32))
    return model.eval()


@pytest.fixture
def fixture_path():
    return FIXTURE


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion test, printed after the run

_ACCEPTANCE: list[tuple[str, str, str, str]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or (rep.when == "setup" and not rep.passed)):
        return
    cid, title = marker.args
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    if rep.passed:
        status = "PASS"
    elif rep.skipped:
        status = "SKIP"
    else:
        status = "FAIL"
        crash = getattr(rep.longrepr, "reprcrash", None)
        msg = crash.message.splitlines()[0] if crash is not None and crash.message else ""
        detail = "; ".join(x for x in (detail, msg) if x)
    _ACCEPTANCE.append((cid, title, status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title, status, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        line = f"[{status}] criterion {cid}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
