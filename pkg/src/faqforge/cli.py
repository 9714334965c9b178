"""Command-line front door mirroring the service operations for scripted and
offline use.

Data goes to stdout (JSON when stdout is not a terminal, human-readable
otherwise); diagnostics go to stderr. Exit codes: 0 success, 1 validation or
pipeline failure, 2 usage error.
"""

import argparse
import json
import os
import sys

from faqforge import classifier, evalmod, responder
from faqforge import kb as kbmod
from faqforge import templates as tplmod
from faqforge.workspace import (
    DATASET_FILE, InvalidDocumentError, NoDatasetError, NoModelError,
    StaleDatasetError, Workspace,
)


def _fail(message):
    print(f"error: {message}", file=sys.stderr)
    return 1


def _emit(payload: dict, human=None):
    """JSON for pipes, a rendered table for a terminal."""
    if sys.stdout.isatty() and human is not None:
        print(human(payload))
    else:
        json.dump(payload, sys.stdout, indent=2, sort_keys=True, ensure_ascii=False)
        print()


def _report_violations(name, report):
    for violation in report.violations:
        print(f"{name}: [{violation.code}] {violation.locator}: {violation.message}",
              file=sys.stderr)


def cmd_init(args):
    ws = Workspace(args.dir)
    ws.init(with_sample=not args.empty)
    print(f"initialized workspace at {ws.root}", file=sys.stderr)
    return 0


def cmd_validate(args):
    ws = Workspace(args.workspace)
    try:
        kb_report, tpl_report = ws.validate()
    except FileNotFoundError as exc:
        return _fail(str(exc))
    except (kbmod.KbError, tplmod.TemplateError) as exc:
        return _fail(str(exc))
    _report_violations("kb", kb_report)
    _report_violations("templates", tpl_report)
    payload = {"kb": kb_report.to_dict(), "templates": tpl_report.to_dict()}
    _emit(payload, human=lambda p: "kb: {}\ntemplates: {}".format(
        "valid" if p["kb"]["valid"] else "invalid",
        "valid" if p["templates"]["valid"] else "invalid"))
    return 0 if (kb_report.valid and tpl_report.valid) else 1


def _render_generation(payload):
    lines = [
        f"raw questions:    {payload['raw_count']}",
        f"unique questions: {payload['unique_count']}",
        "per intent:",
    ]
    for intent, count in sorted(payload["per_intent_counts"].items()):
        lines.append(f"  {intent}: {count}")
    if payload["conflicts"]:
        lines.append("conflicts:")
        for conflict in payload["conflicts"]:
            lines.append(f"  {conflict['question']!r}: {', '.join(conflict['intents'])}")
    return "\n".join(lines)


def cmd_generate(args):
    ws = Workspace(args.workspace)
    try:
        report = ws.generate()
    except FileNotFoundError as exc:
        return _fail(str(exc))
    except (kbmod.KbError, tplmod.TemplateError) as exc:
        return _fail(str(exc))
    except InvalidDocumentError as exc:
        _report_violations("document", exc.report)
        return 1
    if args.out:
        with open(ws.path(DATASET_FILE), "rb") as src, open(args.out, "wb") as dst:
            dst.write(src.read())
    _emit(report.to_dict(), human=_render_generation)
    return 0


def cmd_train(args):
    ws = Workspace(args.workspace)
    try:
        result = ws.train(alpha=args.alpha, holdout=args.holdout, seed=args.seed,
                          threshold=args.threshold)
    except (NoDatasetError, StaleDatasetError, FileNotFoundError) as exc:
        return _fail(str(exc))
    except (kbmod.KbError, tplmod.TemplateError, classifier.ClassifierError) as exc:
        return _fail(str(exc))
    payload = {"version": result.version, "eval": result.eval_report}
    _emit(payload, human=lambda p: (
        f"trained model version {p['version']}\n" + evalmod.render_table(p["eval"])))
    return 0


def cmd_eval(args):
    ws = Workspace(args.workspace)
    try:
        model = ws.load_model()
        kb = ws.load_kb()
    except (NoModelError, FileNotFoundError) as exc:
        return _fail(str(exc))
    test_path = args.test or ws.path(DATASET_FILE)
    try:
        testset = _load_testset(test_path)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))
    if not testset:
        return _fail(f"test set {test_path} is empty")
    report = evalmod.evaluate(kb, model, testset, threshold=args.threshold)
    _emit(report.to_dict(), human=evalmod.render_table)
    return 0


def _load_testset(path):
    testset = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc.msg}") from exc
            if not isinstance(raw, dict) or "question" not in raw or "intent" not in raw:
                raise ValueError(f"{path}: line {lineno}: expected {{question, intent}}")
            testset.append((raw["question"], raw["intent"]))
    return testset


def _render_answer(payload):
    lines = [
        f"intent:     {payload['intent']} ({payload['confidence']:.3f})",
        f"status:     {payload['status']}",
    ]
    if payload.get("response_text"):
        lines.append(f"response:   {payload['response_text']}")
    if payload.get("response_source"):
        lines.append(f"source:     {payload['response_source']}")
    if payload.get("abstain_reason"):
        lines.append(f"reason:     {payload['abstain_reason']}")
    return "\n".join(lines)


def cmd_ask(args):
    ws = Workspace(args.workspace)
    try:
        model = ws.load_model()
        kb = ws.load_kb()
    except (NoModelError, FileNotFoundError) as exc:
        return _fail(str(exc))
    result = responder.answer(kb, model, args.question, threshold=args.threshold)
    _emit(result.to_dict(), human=_render_answer)
    return 0


def _load_corpus(path):
    """Corpus file: JSONL of {question, intent?} or plain text, one question
    per line."""
    corpus = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("{"):
                raw = json.loads(line)
                corpus.append((raw["question"], raw.get("intent")))
            else:
                corpus.append((line, None))
    return corpus


def _render_suggestions(payload):
    if not payload["suggestions"]:
        return "no suggestions (need at least two questions sharing a pattern)"
    lines = ["suggested templates:"]
    for s in payload["suggestions"]:
        lines.append(f"  [{s['support']:>3}] {s['skeleton']}")
        lines.append(f"        fills: {', '.join(s['fills_observed'][:8])}")
    return "\n".join(lines)


def cmd_suggest(args):
    try:
        corpus = _load_corpus(args.corpus)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        return _fail(f"cannot read corpus: {exc}")
    report = tplmod.suggest_templates(
        corpus, min_support=args.min_support, max_slot_tokens=args.max_slot_tokens)
    _emit(report.to_dict(), human=_render_suggestions)
    return 0


def cmd_serve(args):
    import uvicorn

    from faqforge.service import create_app

    app = create_app(args.workspace, default_threshold=args.threshold,
                     cors_origins=args.cors_origin or None)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="faqforge",
        description="Build and serve a question-answering agent from a knowledge base.")
    parser.add_argument("-w", "--workspace",
                        default=os.environ.get("FAQFORGE_WORKSPACE", "."),
                        help="workspace directory (default: $FAQFORGE_WORKSPACE or .)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", help="scaffold a workspace with the sample course bundle")
    p.add_argument("dir")
    p.add_argument("--empty", action="store_true", help="scaffold without the sample bundle")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("validate", help="validate kb.json and templates.json")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", help="generate the labeled dataset")
    p.add_argument("--out", help="also copy dataset.jsonl to this path")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("train", help="train the intent model and evaluate the holdout")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--holdout", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--threshold", type=float, default=0.5)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="evaluate the trained model on a test set")
    p.add_argument("--test", help="JSONL test set (default: dataset.jsonl)")
    p.add_argument("--threshold", type=float, default=0.5)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("ask", help="answer one question")
    p.add_argument("question")
    p.add_argument("--threshold", type=float, default=0.5)
    p.set_defaults(func=cmd_ask)

    p = sub.add_parser("suggest", help="mine template suggestions from a question corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--min-support", type=int, default=2)
    p.add_argument("--max-slot-tokens", type=int, default=4)
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("serve", help="run the HTTP teaching service")
    p.add_argument("--port", type=int, default=int(os.environ.get("FAQFORGE_PORT", "8080")))
    p.add_argument("--host", default=os.environ.get("FAQFORGE_HOST", "127.0.0.1"))
    p.add_argument("--threshold", type=float,
                   default=float(os.environ.get("FAQFORGE_THRESHOLD", "0.5")))
    p.add_argument("--cors-origin", action="append",
                   default=([os.environ.get("FAQFORGE_CORS_ORIGIN")]
                            if os.environ.get("FAQFORGE_CORS_ORIGIN") else None),
                   help="allowed console origin (repeatable; default: any)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
