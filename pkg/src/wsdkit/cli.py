"""Command-line entry point: build, predict, predict-all, eval, serve, inspect.

Exit codes: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import evaluation, wsd
from .config import PipelineConfig
from .errors import WsdkitError
from .pipeline import build_from_path
from .senses import SenseEntry
from .store import load_model, save_model


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="wsdkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="induce a model from a text corpus")
    p.add_argument("--corpus", required=True, help="text file or directory of text files")
    p.add_argument("--out", required=True, help="output model directory (must not exist)")
    p.add_argument("--config", help="pipeline config file (key<TAB>value lines)")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--doc-mode", choices=["file", "line"], help="override document unit")
    p.add_argument("--stopwords", help="stopword file override (one token per line)")

    p = sub.add_parser("predict", help="disambiguate one word in a context")
    p.add_argument("--model", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--context", required=True)
    p.add_argument("--inventory", choices=["words", "super"], default="words")
    p.add_argument("--features", choices=["cluster", "context"], default="context")

    p = sub.add_parser("predict-all", help="annotate every known target in a text")
    p.add_argument("--model", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--text")
    group.add_argument("--file")
    p.add_argument("--inventory", choices=["words", "super"], default="words")
    p.add_argument("--features", choices=["cluster", "context"], default="context")

    p = sub.add_parser("eval", help="hypernymy-labeling-in-context evaluation")
    p.add_argument("--model", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--inventory", choices=["words", "super"], required=True)
    p.add_argument(
        "--features", choices=["cluster", "context", "mfs", "random"], required=True
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", default="eval-report.txt", help="machine-readable output file")

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--config", required=True, help="service config file")

    p = sub.add_parser("inspect", help="pretty-print a word's senses")
    p.add_argument("--model", required=True)
    p.add_argument("--word", required=True)

    return parser


def _cmd_build(args) -> int:
    config = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    if args.seed is not None:
        config.seed = args.seed
    if args.doc_mode:
        config.doc_mode = args.doc_mode
    config.validate()
    model = build_from_path(
        args.corpus,
        config,
        jobs=args.jobs,
        stopword_path=args.stopwords,
        on_stage=lambda report: print(report.format()),
    )
    save_model(model, args.out)
    counts = model.counts()
    print(
        f"saved model to {args.out}: {counts['words']} words, "
        f"{counts['senses']} senses, {counts['classes']} classes"
    )
    return 0


def _format_sense(entry: SenseEntry, score: float | None = None) -> str:
    hyper = entry.hypernyms.top() or "unlabeled"
    members = ", ".join(m for m, _ in entry.members[:8])
    header = f"{entry.word}#{entry.sense_id} ({hyper})"
    if score is not None:
        header += f" score={score:.4f}"
    return f"{header}\n    members: {members}"


def _cmd_predict(args) -> int:
    model = load_model(args.model)
    model_id = f"{args.inventory}-{args.features}"
    pred = wsd.disambiguate(args.word, args.context, model_id, model)
    flag = " (MFS fallback)" if pred.fallback_used else ""
    print(f"word: {pred.word}  model: {model_id}  confidence: {pred.confidence:.4f}{flag}")
    for ranked in pred.ranked:
        cand = ranked.candidate
        if isinstance(cand, SenseEntry):
            print(_format_sense(cand, ranked.score))
        else:
            hyper = cand.hypernyms.top() or "unlabeled"
            words = ", ".join(cand.member_words[:8])
            print(f"class#{cand.class_id} ({hyper}) score={ranked.score:.4f}\n    words: {words}")
        if ranked.common_features:
            common = ", ".join(cf.feature for cf in ranked.common_features[:6])
            print(f"    common features: {common}")
    return 0


def _cmd_predict_all(args) -> int:
    model = load_model(args.model)
    text = Path(args.file).read_text("utf-8") if args.file else args.text
    model_id = f"{args.inventory}-{args.features}"
    annotations = wsd.disambiguate_all(text, model_id, model)
    if not annotations:
        print("no annotations")
        return 0
    for a in annotations:
        top = a.prediction.ranked[0].candidate
        hyper = top.hypernyms.top() or "unlabeled"
        sid = top.sense_id if isinstance(top, SenseEntry) else top.class_id
        print(f"[{a.begin}:{a.end}] {a.word} -> {a.word}#{sid} ({hyper})")
    return 0


def _cmd_eval(args) -> int:
    model = load_model(args.model)
    rows = evaluation.load_dataset(args.dataset)
    kept = evaluation.filter_evaluable(rows, model, args.inventory)
    report = evaluation.evaluate(
        kept,
        model,
        inventory=args.inventory,
        features=args.features,
        seed=args.seed,
        n_total=len(rows),
    )
    print(report.format_text())
    Path(args.report).write_text("\n".join(report.to_kv_lines()) + "\n", "utf-8")
    print(f"report written to {args.report}")
    return 0


def _cmd_serve(args) -> int:
    from .service import load_service_config, serve

    serve(load_service_config(args.config))
    return 0


def _cmd_inspect(args) -> int:
    model = load_model(args.model)
    entries = model.lookup_word(args.word)
    print(f"{args.word.lower()}: {len(entries)} sense(s)")
    for entry in entries:
        print(_format_sense(entry))
        if entry.hypernyms.labels:
            hypers = ", ".join(f"{h}:{s:g}" for h, s in entry.hypernyms)
            print(f"    hypernyms: {hypers}")
        for text, conf in entry.examples:
            print(f"    example ({conf:.3f}): {text}")
    classes = model.classes_with_word(args.word.lower())
    for cls in classes:
        hyper = cls.hypernyms.top() or "unlabeled"
        print(f"class#{cls.class_id} ({hyper}): {len(cls.member_words)} words")
    return 0


_COMMANDS = {
    "build": _cmd_build,
    "predict": _cmd_predict,
    "predict-all": _cmd_predict_all,
    "eval": _cmd_eval,
    "serve": _cmd_serve,
    "inspect": _cmd_inspect,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return _COMMANDS[args.command](args)
    except WsdkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
