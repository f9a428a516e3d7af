"""Experiment specs, the train+evaluate runner and grid execution."""

from __future__ import annotations

import dataclasses
import datetime as _dt
import json
import logging
import platform
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .labels import LabelSetting, parse_setting

logger = logging.getLogger(__name__)

# (precision, recall, f1, accuracy) on BioMarking after full e-SNLI training
REFERENCE_TARGETS = {
    ("roberta-large", "generic", True, True): (0.425, 0.421, 0.423, 0.625),
    ("roberta-large", "generic", True, False): (0.407, 0.382, 0.394, 0.638),
    ("roberta-large", "generic", False, True): (0.303, 0.368, 0.332, 0.609),
    ("roberta-large", "generic", False, False): (0.332, 0.327, 0.330, 0.613),
    ("roberta-large", "con-focus", True, True): (0.819, 0.429, 0.563, 0.904),
    ("roberta-large", "con-focus", True, False): (0.918, 0.399, 0.556, 0.908),
    ("roberta-large", "con-focus", False, True): (0.557, 0.419, 0.478, 0.885),
    ("roberta-large", "con-focus", False, False): (0.701, 0.303, 0.423, 0.896),
    ("roberta-large", "err-focus", True, True): (0.747, 0.778, 0.762, 0.704),
    ("roberta-large", "err-focus", True, False): (0.718, 0.805, 0.756, 0.708),
    ("roberta-large", "err-focus", False, True): (0.702, 0.796, 0.746, 0.690),
    ("roberta-large", "err-focus", False, False): (0.709, 0.760, 0.734, 0.685),
    ("roberta-base", "generic", True, True): (0.380, 0.372, 0.376, 0.611),
    ("roberta-base", "con-focus", True, True): (0.684, 0.430, 0.528, 0.889),
    ("roberta-base", "err-focus", True, True): (0.721, 0.774, 0.746, 0.699),
    ("bert-large", "generic", True, True): (0.405, 0.402, 0.379, 0.593),
    ("bert-large", "con-focus", True, True): (0.577, 0.462, 0.513, 0.873),
    ("bert-large", "err-focus", True, True): (0.718, 0.741, 0.729, 0.685),
    ("bert-base", "generic", True, True): (0.292, 0.384, 0.331, 0.564),
    ("bert-base", "con-focus", True, True): (0.531, 0.423, 0.471, 0.863),
    ("bert-base", "err-focus", True, True): (0.728, 0.695, 0.711, 0.679),
}
TARGET_TOLERANCE = 0.05


@dataclass
class ExperimentSpec:
    encoder: str
    setting: str = "generic"
    dip: bool = False
    rm_stopwords: bool = False
    seed: int = 42
    esnli: list[str] = field(default_factory=list)
    biomarking: str | None = None
    output_dir: str = "runs"
    pretrained: bool = True
    train: dict = field(default_factory=dict)

    def __post_init__(self):
        self.setting = parse_setting(self.setting).value
        if isinstance(self.esnli, str):
            self.esnli = [self.esnli]

    @property
    def key(self) -> tuple:
        return (self.encoder, self.setting, self.rm_stopwords, self.dip)

    @property
    def run_id(self) -> str:
        sw = "sw" if self.rm_stopwords else "nosw"
        dip = "dip" if self.dip else "nodip"
        return f"{Path(self.encoder).name}_{self.setting}_{sw}_{dip}_s{self.seed}"

    @property
    def run_dir(self) -> Path:
        return Path(self.output_dir) / self.run_id

    def train_config(self):
        from .model import TrainConfig

        return TrainConfig.from_dict({
            **self.train,
            "encoder": self.encoder,
            "setting": self.setting,
            "dip": self.dip,
            "rm_stopwords": self.rm_stopwords,
            "seed": self.seed,
            "pretrained": self.pretrained,
            "output_dir": str(self.run_dir),
        })

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def environment_fingerprint() -> dict:
    import numpy
    import torch
    import transformers

    return {
        "python": sys.version.split()[0],
        "platform": platform.platform(),
        "numpy": numpy.__version__,
        "torch": torch.__version__,
        "transformers": transformers.__version__,
        "torch_threads": torch.get_num_threads(),
    }


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def run_experiment(spec: ExperimentSpec) -> dict:
    """Prepare e-SNLI, train one model, evaluate it on BioMarking, write the report."""
    from .esnli import build_training_pairs, ingest_esnli
    from .evaluation import evaluate_dataset
    from .markup import load_dataset
    from .model import build_for_corpus, save_checkpoint, train

    started = _now()
    cfg = spec.train_config()
    run_dir = spec.run_dir
    run_dir.mkdir(parents=True, exist_ok=True)
    instances, dropped = ingest_esnli(spec.esnli, highlights=cfg.highlights, limit=cfg.train_limit)
    pairs = build_training_pairs(
        instances, setting=cfg.setting, rm_stopwords=cfg.rm_stopwords, dip=cfg.dip,
        seed=cfg.seed, premise_highlights=cfg.premise_highlights,
    )
    model = build_for_corpus(cfg, pairs)
    model, log = train(model, pairs, cfg)
    log.save(run_dir / "train_log.jsonl")
    save_checkpoint(model, run_dir / "model.ckpt", cfg, {"seed": cfg.seed})
    metrics = None
    if spec.biomarking:
        records = load_dataset(spec.biomarking)
        metrics = evaluate_dataset(records, cfg.setting, model=model, rm_stopwords=cfg.rm_stopwords).to_dict()
    report = {
        "status": "ok",
        "spec": spec.to_dict(),
        "seed": spec.seed,
        "metrics": metrics,
        "train": {
            "n_instances": len(instances),
            "n_dropped_rows": dropped,
            "n_pairs": len(pairs),
            "n_steps": len(log.steps),
            "final_loss": log.final_loss,
            "log_sha256": log.digest(),
        },
        "environment": environment_fingerprint(),
        "timestamps": {"started": started, "finished": _now()},
    }
    write_report(report, run_dir / "report.json")
    return report


def write_report(report: dict, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def dedupe_specs(specs: Sequence[ExperimentSpec]) -> list[ExperimentSpec]:
    seen, out = set(), []
    for spec in specs:
        ident = (spec.key, spec.seed)
        if ident in seen:
            logger.warning("duplicate experiment %s dropped", spec.run_id)
            continue
        seen.add(ident)
        out.append(spec)
    return out


def _guarded(runner, spec: ExperimentSpec) -> dict:
    try:
        return runner(spec)
    except Exception as exc:  # one failing run must not sink the grid
        logger.error("experiment %s failed: %s", spec.run_id, exc)
        report = {"status": "error", "error": f"{type(exc).__name__}: {exc}", "spec": spec.to_dict(),
                  "seed": spec.seed, "metrics": None, "timestamps": {"finished": _now()}}
        write_report(report, spec.run_dir / "report.json")
        return report


def run_experiment_grid(
    specs: Sequence[ExperimentSpec],
    out_dir=None,
    *,
    runner: Callable[[ExperimentSpec], dict] = run_experiment,
    parallel: int = 1,
    figure: bool = True,
) -> dict:
    """Run every spec, record failures without stopping, collate the results.

    Returns a dict with the per-run ``reports`` and, when ``out_dir`` is
    given, the collated ``results.tsv`` / figure paths.
    """
    specs = dedupe_specs(specs)

    if parallel > 1:
        # processes, not threads: each run owns torch's global RNG
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            reports = list(pool.map(_guarded, [runner] * len(specs), specs))
    else:
        reports = [_guarded(runner, s) for s in specs]
    out = {"reports": reports}
    if out_dir is not None:
        from .report import collate

        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        files = []
        for rep in reports:
            files.append(out_dir / "reports" / f"{ExperimentSpec(**rep['spec']).run_id}.json")
            write_report(rep, files[-1])
        out.update(collate(files, out_dir, figure=figure))
    return out


def full_scale_grid(esnli: Sequence[str], biomarking: str, output_dir="runs/full", seed: int = 42,
                    train: dict | None = None) -> list[ExperimentSpec]:
    """Every condition reported for full-scale training.

    RoBERTa-large under all settings and all four stopword/DIP combinations,
    plus the other three encoders under each setting with both steps on.
    """
    common = dict(esnli=list(esnli), biomarking=biomarking, output_dir=str(output_dir), seed=seed,
                  train=dict(train or {}))
    specs = []
    for setting in LabelSetting:
        for sw in (True, False):
            for dip in (True, False):
                specs.append(ExperimentSpec("roberta-large", setting.value, dip, sw, **common))
    for encoder in ("roberta-base", "bert-large", "bert-base"):
        for setting in LabelSetting:
            specs.append(ExperimentSpec(encoder, setting.value, True, True, **common))
    return specs


def compare_to_targets(rows: Sequence[dict], tolerance: float = TARGET_TOLERANCE) -> list[dict]:
    """F1 of each collated row against its published value."""
    out = []
    for r in rows:
        key = (r["model"], r["setting"], r["stopwords"], r["pairs"])
        if key not in REFERENCE_TARGETS or r.get("f1") is None:
            continue
        target = REFERENCE_TARGETS[key][2]
        out.append({"key": key, "f1": r["f1"], "target": target, "ok": abs(r["f1"] - target) <= tolerance})
    return out


def load_grid(path) -> list[ExperimentSpec]:
    """YAML grid file: ``defaults:`` merged into each entry of ``runs:``.

    Instead of ``runs`` a ``matrix`` of lists (encoder, setting, dip,
    rm_stopwords, seed) expands to its cartesian product.
    """
    import itertools

    import yaml

    with open(path, encoding="utf-8") as fh:
        obj = yaml.safe_load(fh) or {}
    defaults = obj.get("defaults", {})
    runs = list(obj.get("runs", []))
    matrix = obj.get("matrix")
    if matrix:
        keys = list(matrix)
        for combo in itertools.product(*(matrix[k] if isinstance(matrix[k], list) else [matrix[k]] for k in keys)):
            runs.append(dict(zip(keys, combo)))
    return [ExperimentSpec(**{**defaults, **run}) for run in runs]
