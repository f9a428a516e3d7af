"""``mark`` command line.

Exit codes: 0 success, 2 validation error, 3 training failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .errors import MarkingError, TrainingError, ValidationError

logger = logging.getLogger("marking")

EXIT_OK, EXIT_ERROR, EXIT_VALIDATION, EXIT_TRAINING = 0, 1, 2, 3


def _text_arg(value: str) -> str:
    """A path to a text file, or the text itself when no such file exists."""
    if os.path.isfile(value):
        return Path(value).read_text(encoding="utf-8").strip()
    return value


# ---------------------------------------------------------------------------
# data


def cmd_data_validate(args):
    from .markup import dataset_stats, load_dataset

    records = load_dataset(args.path, args.format, lenient=args.lenient)
    stats = dataset_stats(records)
    print(f"ok: {stats.n_questions} questions, {stats.n_responses} responses, "
          f"{stats.n_annotations} annotator versions")


def cmd_data_stats(args):
    from .markup import dataset_stats, load_dataset

    stats = dataset_stats(load_dataset(args.path, args.format, lenient=args.lenient))
    print(json.dumps(stats.to_dict(), indent=2))


def cmd_data_import(args):
    from .markup import load_dataset, save_dataset

    records = load_dataset(args.raw, "raw_markup", lenient=args.lenient)
    save_dataset(records, args.out)
    print(f"wrote {len(records)} questions to {args.out}")


# ---------------------------------------------------------------------------
# prep / train / eval / infer


def cmd_prep_esnli(args):
    from .esnli import build_training_pairs, ingest_esnli, save_pairs

    instances, dropped = ingest_esnli(args.inputs, highlights=args.highlights, limit=args.limit)
    pairs = build_training_pairs(
        instances, rm_stopwords=args.rm_stopwords, dip=args.dip, seed=args.seed,
        premise_highlights=args.premise_highlights,
    )
    n = save_pairs(pairs, args.out)
    print(f"read {len(instances)} instances (dropped {dropped} without gold label); wrote {n} pairs to {args.out}")


def load_training_corpus(cfg):
    """Pairs for ``cfg``: e-SNLI CSVs are prepared with the cfg flags; JSONL is used as prepared."""
    from .esnli import build_training_pairs, ingest_esnli, load_pairs, remap_pair

    if not cfg.train_data:
        raise ValidationError("config needs train_data (e-SNLI CSV or prepared pairs JSONL)")
    paths = [p.strip() for p in str(cfg.train_data).split(",") if p.strip()]
    if all(p.endswith(".csv") for p in paths):
        instances, _ = ingest_esnli(paths, highlights=cfg.highlights, limit=cfg.train_limit)
        return build_training_pairs(
            instances, setting=cfg.setting, rm_stopwords=cfg.rm_stopwords, dip=cfg.dip,
            seed=cfg.seed, premise_highlights=cfg.premise_highlights,
        )
    pairs = [p for path in paths for p in load_pairs(path)]
    if cfg.train_limit is not None:
        pairs = pairs[: cfg.train_limit]
    return [remap_pair(p, cfg.setting) for p in pairs]


def cmd_train(args):
    from .experiments import _now, environment_fingerprint, write_report
    from .model import TrainConfig, build_for_corpus, save_checkpoint, train

    started = _now()

    if not args.config:
        raise ValidationError("mark train needs --config")
    cfg = TrainConfig.load(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.output_dir:
        cfg.output_dir = args.output_dir
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    corpus = load_training_corpus(cfg)
    model = build_for_corpus(cfg, corpus)

    def progress(rec):
        if rec["step"] % 50 == 0:
            logger.info("step %d epoch %d loss %.4f", rec["step"], rec["epoch"], rec["loss"])

    try:
        model, log = train(model, corpus, cfg, progress=progress)
    except TrainingError:
        raise
    except (RuntimeError, MemoryError) as exc:
        raise TrainingError(str(exc)) from exc
    log.save(out / "train_log.jsonl")
    digest = log.digest()
    (out / "train_log.sha256").write_text(digest + "\n")
    save_checkpoint(model, out / "model.ckpt", cfg, {"seed": cfg.seed, "train_log_sha256": digest})
    report = {
        "status": "ok",
        "spec": {
            "encoder": cfg.encoder, "setting": cfg.setting, "dip": cfg.dip, "rm_stopwords": cfg.rm_stopwords,
            "seed": cfg.seed, "esnli": cfg.train_data, "biomarking": cfg.eval_data,
            "output_dir": cfg.output_dir, "pretrained": cfg.pretrained,
        },
        "seed": cfg.seed,
        "config": cfg.to_dict(),
        "metrics": None,
        "train": {
            "n_examples": log.n_examples,
            "n_dropped_too_long": log.n_dropped_too_long,
            "n_steps": len(log.steps),
            "final_loss": log.final_loss,
            "log_sha256": digest,
        },
        "environment": environment_fingerprint(),
        "timestamps": {"started": started, "finished": _now()},
    }
    if cfg.eval_data:
        from .evaluation import evaluate_dataset
        from .markup import load_dataset

        ev = evaluate_dataset(load_dataset(cfg.eval_data), cfg.setting, model=model,
                              rm_stopwords=cfg.rm_stopwords)
        report["metrics"] = ev.to_dict()
        # no timestamps here, so reruns can be compared byte for byte
        write_report({"seed": cfg.seed, "metrics": ev.to_dict()}, out / "eval_report.json")
    write_report(report, out / "report.json")
    print(f"trained {len(log.steps)} steps; final loss {log.final_loss}; log sha256 {digest}")
    print(f"checkpoint: {out / 'model.ckpt'}")


def cmd_eval(args):
    from .evaluation import evaluate_dataset, format_table, table_row
    from .experiments import write_report
    from .markup import load_dataset
    from .model import load_checkpoint

    model, meta = load_checkpoint(args.model)
    tc = meta.get("train_config") or {}
    # unset options follow what the checkpoint was trained with
    setting = args.setting or tc.get("setting", "generic")
    rm_stopwords = args.rm_stopwords if args.rm_stopwords is not None else tc.get("rm_stopwords", False)
    records = load_dataset(args.data)
    report = evaluate_dataset(records, setting, model=model, rm_stopwords=rm_stopwords,
                              include_omissions=args.omissions)
    print(format_table([table_row(model.encoder_name, setting, rm_stopwords, tc.get("dip", False),
                                  report.metrics())]))
    if report.omission is not None:
        print(f"omissions: P={report.omission.precision:.3f} R={report.omission.recall:.3f} "
              f"F1={report.omission.f1:.3f}")
    out = args.out or str(Path(args.model).with_name(f"eval_{report.setting.value}.json"))
    seed = args.seed if args.seed is not None else tc.get("seed")
    write_report({"seed": seed, "model": str(args.model), "data": str(args.data),
                  "metrics": report.to_dict()}, out)
    print(f"report: {out}")


def cmd_infer(args):
    from .model import load_checkpoint, mark
    from .report import render_marking_report

    model, meta = load_checkpoint(args.model)
    tc = meta.get("train_config") or {}
    setting = args.setting or tc.get("setting", "generic")
    rm_stopwords = args.rm_stopwords if args.rm_stopwords is not None else tc.get("rm_stopwords", False)
    gold, response = _text_arg(args.gold), _text_arg(args.response)
    result = mark(model, gold, response, setting, rm_stopwords=rm_stopwords)
    if args.format == "json":
        text = json.dumps(result.to_dict(), indent=2)
    else:
        text = render_marking_report(result, format=args.format)
    if args.out:
        Path(args.out).write_text(text + ("" if text.endswith("\n") else "\n"), encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text)


# ---------------------------------------------------------------------------
# report


def cmd_report_collate(args):
    from .report import collate

    res = collate(args.runs, args.out, figure=not args.no_figure)
    print(res["text"])
    print(f"table: {res['table']}" + (f"; figure: {res['figure']}" if res["figure"] else ""))


def cmd_report_grid(args):
    from .experiments import compare_to_targets, full_scale_grid, load_grid, run_experiment_grid

    specs = []
    if args.grid:
        specs += load_grid(args.grid)
    if args.full_scale:
        if not args.esnli or not args.data:
            raise ValidationError("--full-scale needs --esnli and --data")
        specs += full_scale_grid(args.esnli, args.data, Path(args.out) / "runs",
                                 seed=args.seed if args.seed is not None else 42)
    if args.seed is not None:
        for s in specs:
            s.seed = args.seed
    res = run_experiment_grid(specs, args.out, parallel=args.parallel)
    if "text" in res:
        print(res["text"])
    if args.full_scale:
        for cmp in compare_to_targets(res.get("rows", [])):
            print(f"{cmp['key']}: F1 {cmp['f1']:.3f} vs {cmp['target']:.3f} {'ok' if cmp['ok'] else 'OFF'}")
    failed = [r for r in res["reports"] if r.get("status") != "ok"]
    if failed:
        print(f"{len(failed)} of {len(res['reports'])} runs failed", file=sys.stderr)
        return EXIT_TRAINING


def cmd_report_render(args):
    from .markup import load_dataset
    from .model import result_from_labels
    from .labels import gold_word_labels, response_word_labels
    from .report import render_marking_report

    # render SME annotations themselves, e.g. to eyeball a dataset
    records = load_dataset(args.data)
    pieces = []
    for rec in records:
        for resp in rec.responses:
            for ann, gold in resp.versions():
                res = result_from_labels(gold.plain_text, ann.plain_text, response_word_labels(ann),
                                         gold_word_labels(gold), "generic")
                pieces.append(render_marking_report(
                    res, format=args.format, title=f"{rec.question_id} / {resp.response_id} / {ann.annotator_id}"))
    text = "\n\n".join(pieces)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed for this run")
    common.add_argument("--config", default=None, help="YAML file of option defaults")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="mark", description="Mark student responses against gold answers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subparsers, name, func, help):
        p = subparsers.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func, _parser=p)
        return p

    data = sub.add_parser("data", help="validate, summarize and import annotated data")
    dsub = data.add_subparsers(dest="data_command", required=True)
    for name, func, help in (("validate", cmd_data_validate, "validate a dataset"),
                             ("stats", cmd_data_stats, "dataset statistics")):
        p = leaf(dsub, name, func, help)
        p.add_argument("path")
        p.add_argument("--format", choices=("jsonl", "raw_markup"), default="jsonl")
        p.add_argument("--lenient", action="store_true", help="flatten nested markup")
    p = leaf(dsub, "import", cmd_data_import, "convert raw markup CSVs to JSONL")
    p.add_argument("--raw", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lenient", action="store_true")

    prep = sub.add_parser("prep", help="prepare training corpora")
    psub = prep.add_subparsers(dest="prep_command", required=True)
    p = leaf(psub, "esnli", cmd_prep_esnli, "e-SNLI CSV to word-labeled pairs")
    p.add_argument("--in", dest="inputs", nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--dip", action="store_true", help="dual instance pairing")
    p.add_argument("--rm-stopwords", action="store_true")
    p.add_argument("--premise-highlights", action="store_true")
    p.add_argument("--highlights", choices=("first", "union"), default="first")
    p.add_argument("--limit", type=int, default=None)

    p = leaf(sub, "train", cmd_train, "train a marker from a config file")
    p.add_argument("--output-dir", default=None)

    p = leaf(sub, "eval", cmd_eval, "evaluate a checkpoint on annotated data")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--setting", default=None, help="default: the checkpoint's training setting")
    p.add_argument("--rm-stopwords", action=argparse.BooleanOptionalAction, default=None,
                   help="default: as in training")
    p.add_argument("--omissions", action="store_true", help="also score gold-side omissions")
    p.add_argument("--out", default=None)

    p = leaf(sub, "infer", cmd_infer, "mark one response")
    p.add_argument("--model", required=True)
    p.add_argument("--gold", required=True, help="gold answer file (or literal text)")
    p.add_argument("--response", required=True, help="student response file (or literal text)")
    p.add_argument("--setting", default=None, help="default: the checkpoint's training setting")
    p.add_argument("--rm-stopwords", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--format", choices=("ansi", "html", "json"), default="ansi")
    p.add_argument("--out", default=None)

    rep = sub.add_parser("report", help="experiment grids and result reports")
    rsub = rep.add_subparsers(dest="report_command", required=True)
    p = leaf(rsub, "collate", cmd_report_collate, "collate run reports into a table and figure")
    p.add_argument("runs", nargs="+")
    p.add_argument("--out", required=True)
    p.add_argument("--no-figure", action="store_true")
    p = leaf(rsub, "grid", cmd_report_grid, "run an experiment grid")
    p.add_argument("--grid", default=None, help="YAML grid file")
    p.add_argument("--full-scale", action="store_true", help="every published condition")
    p.add_argument("--esnli", nargs="+", default=None)
    p.add_argument("--data", default=None, help="BioMarking JSONL")
    p.add_argument("--out", required=True)
    p.add_argument("--parallel", type=int, default=1)
    p = leaf(rsub, "render", cmd_report_render, "render SME annotations in color")
    p.add_argument("data")
    p.add_argument("--format", choices=("ansi", "html"), default="html")
    p.add_argument("--out", default=None)
    return parser


def _apply_config_defaults(args):
    if args.command == "train" or not args.config:
        return
    import yaml

    with open(args.config, encoding="utf-8") as fh:
        values = yaml.safe_load(fh) or {}
    if not isinstance(values, dict):
        raise ValidationError(f"{args.config}: expected a mapping")
    parser = args._parser
    for key, value in values.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise ValidationError(f"{args.config}: unknown option {key!r}")
        if getattr(args, dest) == parser.get_default(dest):
            setattr(args, dest, value)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        _apply_config_defaults(args)
        rc = args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except TrainingError as exc:
        print(f"training failed: {exc}", file=sys.stderr)
        return EXIT_TRAINING
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except MarkingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return rc or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
