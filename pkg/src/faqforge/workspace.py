"""Versioned on-disk workspace: kb.json, templates.json, dataset.jsonl,
model.json, corrections.jsonl, and a small meta file carrying the version
counter.

Every write goes through write-temp-then-rename with an fsync, so a killed
process never leaves a truncated document visible. The workspace itself is
single-writer; the service serializes mutations with a lock on top of this.
"""

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from faqforge import classifier, evalmod
from faqforge import kb as kbmod
from faqforge import templates as tplmod
from faqforge.dataset import Dataset, GeneratedExample, SplitSpec, dumps_jsonl, read_jsonl, split

KB_FILE = "kb.json"
TEMPLATES_FILE = "templates.json"
DATASET_FILE = "dataset.jsonl"
MODEL_FILE = "model.json"
CORRECTIONS_FILE = "corrections.jsonl"
REPORT_FILE = "report.json"
META_FILE = "workspace.json"


class WorkspaceError(Exception):
    pass


class NoDatasetError(WorkspaceError):
    pass


class StaleDatasetError(WorkspaceError):
    pass


class NoModelError(WorkspaceError):
    pass


class UnknownIntentError(WorkspaceError):
    pass


class InvalidDocumentError(WorkspaceError):
    """A KB or templates document failed validation; carries the report."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class TrainResult:
    version: int
    model: classifier.IntentModel
    eval_report: dict


def atomic_write(path, data):
    """Write bytes (or text as UTF-8) via temp file + fsync + rename."""
    path = Path(path)
    if isinstance(data, str):
        data = data.encode("utf-8")
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, str(path))
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


class Workspace:
    def __init__(self, root):
        self.root = Path(root)

    def path(self, name) -> Path:
        return self.root / name

    # -- meta ---------------------------------------------------------------

    def _load_meta(self) -> dict:
        meta_path = self.path(META_FILE)
        if not meta_path.exists():
            return {"version": 0, "generated_fingerprint": None,
                    "trained_corrections": 0, "model_version": None}
        with open(meta_path, "r", encoding="utf-8") as fh:
            return json.load(fh)

    def _save_meta(self, meta):
        atomic_write(self.path(META_FILE), json.dumps(meta, indent=2) + "\n")

    @property
    def version(self) -> int:
        return self._load_meta()["version"]

    @property
    def model_version(self):
        return self._load_meta()["model_version"]

    def _bump(self, meta) -> dict:
        meta["version"] = meta["version"] + 1
        return meta

    # -- scaffolding ----------------------------------------------------------

    def init(self, with_sample=True):
        """Scaffold a workspace; with_sample seeds the bundled course KB."""
        from faqforge import sample

        self.root.mkdir(parents=True, exist_ok=True)
        if with_sample:
            kb_doc = json.dumps(sample.sample_kb_dict(), indent=2, ensure_ascii=False) + "\n"
            tpl_doc = json.dumps(sample.sample_templates_list(), indent=2, ensure_ascii=False) + "\n"
        else:
            kb_doc = kbmod.serialize_kb(kbmod.KnowledgeBase(
                domain="empty", categories=(), unstructured=(), structured=()))
            tpl_doc = "[]\n"
        atomic_write(self.path(KB_FILE), kb_doc)
        atomic_write(self.path(TEMPLATES_FILE), tpl_doc)
        atomic_write(self.path(CORRECTIONS_FILE), "")
        self._save_meta({"version": 1, "generated_fingerprint": None,
                         "trained_corrections": 0, "model_version": None})

    # -- documents ------------------------------------------------------------

    def read_bytes(self, name) -> bytes:
        with open(self.path(name), "rb") as fh:
            return fh.read()

    def load_kb(self) -> kbmod.KnowledgeBase:
        return kbmod.parse_kb(self.read_bytes(KB_FILE).decode("utf-8"))

    def load_templates(self):
        return tplmod.parse_templates(self.read_bytes(TEMPLATES_FILE).decode("utf-8"))

    def store_kb(self, document: str) -> kbmod.ValidationReport:
        """Validate and store a KB document verbatim; bumps the version.

        Raises KbSyntaxError/KbSchemaError on unparseable input and
        InvalidDocumentError when validation reports violations.
        """
        kb = kbmod.parse_kb(document)
        report = kbmod.validate_kb(kb)
        if not report.valid:
            raise InvalidDocumentError("knowledge base failed validation", report)
        atomic_write(self.path(KB_FILE), document)
        meta = self._bump(self._load_meta())
        self._save_meta(meta)
        return report

    def store_templates(self, document: str) -> kbmod.ValidationReport:
        """Validate (against the stored KB) and store a templates document."""
        templates = tplmod.parse_templates(document)
        kb = self.load_kb()
        report = tplmod.validate_templates(kb, templates)
        if not report.valid:
            raise InvalidDocumentError("templates failed validation", report)
        atomic_write(self.path(TEMPLATES_FILE), document)
        meta = self._bump(self._load_meta())
        self._save_meta(meta)
        return report

    # -- corrections ------------------------------------------------------------

    def corrections(self):
        path = self.path(CORRECTIONS_FILE)
        if not path.exists():
            return []
        out = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    out.append(json.loads(line))
        return out

    def pending_corrections(self) -> int:
        return len(self.corrections()) - self._load_meta()["trained_corrections"]

    def add_correction(self, question: str, intent: str) -> int:
        """Append a teaching correction; returns the pending count."""
        kb = self.load_kb()
        if kb.category(intent) is None:
            raise UnknownIntentError(f"intent {intent!r} is not in the current taxonomy")
        record = {"question": question, "intent": intent,
                  "added_at": datetime.now(timezone.utc).isoformat()}
        with open(self.path(CORRECTIONS_FILE), "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        meta = self._bump(self._load_meta())
        self._save_meta(meta)
        return len(self.corrections()) - meta["trained_corrections"]

    def _correction_examples(self):
        seen = set()
        out = []
        for rec in self.corrections():
            key = (rec["question"], rec["intent"])
            if key in seen:
                continue
            seen.add(key)
            out.append(GeneratedExample(question=rec["question"], intent=rec["intent"],
                                        slot_value=None, template_id=0, source_ref=None))
        return out

    # -- pipeline ------------------------------------------------------------

    def fingerprint(self) -> str:
        digest = hashlib.sha256()
        digest.update(self.read_bytes(KB_FILE))
        digest.update(b"\x00")
        digest.update(self.read_bytes(TEMPLATES_FILE))
        return digest.hexdigest()

    def validate(self):
        """Validate kb and templates; returns (kb_report, template_report)."""
        kb = self.load_kb()
        kb_report = kbmod.validate_kb(kb)
        templates = self.load_templates()
        tpl_report = tplmod.validate_templates(kb, templates)
        return kb_report, tpl_report

    def generate(self) -> tplmod.GenerationReport:
        """Generate dataset.jsonl from the current kb+templates; bumps version."""
        kb = self.load_kb()
        kb_report = kbmod.validate_kb(kb)
        if not kb_report.valid:
            raise InvalidDocumentError("knowledge base failed validation", kb_report)
        templates = self.load_templates()
        ds, report = tplmod.generate_dataset(kb, templates)
        atomic_write(self.path(DATASET_FILE), dumps_jsonl(ds))
        meta = self._bump(self._load_meta())
        meta["generated_fingerprint"] = self.fingerprint()
        self._save_meta(meta)
        return report

    def train(self, alpha=1.0, holdout=0.1, seed=42,
              threshold=0.5) -> TrainResult:
        """Train on dataset.jsonl plus corrections, evaluate on the holdout,
        persist model.json and report.json, and bump the version.

        Corrections always land on the training side of the split, so a
        taught question takes effect immediately at the next train.
        """
        if not self.path(DATASET_FILE).exists():
            raise NoDatasetError("no dataset.jsonl; run generate first")
        meta = self._load_meta()
        if meta.get("generated_fingerprint") != self.fingerprint():
            raise StaleDatasetError(
                "kb or templates changed since the last generate; run generate again")

        ds = read_jsonl(self.path(DATASET_FILE))
        train_ds, test_ds = split(ds, SplitSpec(holdout_fraction=holdout, seed=seed))
        corrections = self._correction_examples()
        train_examples = tuple(train_ds.examples) + tuple(corrections)
        model = classifier.train(Dataset(examples=train_examples), alpha=alpha)

        if len(test_ds) == 0:
            eval_report = evalmod.empty_report(threshold)
        else:
            kb = self.load_kb()
            testset = [(ex.question, ex.intent) for ex in test_ds]
            eval_report = evalmod.evaluate(kb, model, testset, threshold=threshold).to_dict()

        atomic_write(self.path(MODEL_FILE), classifier.serialize_model(model))
        atomic_write(self.path(REPORT_FILE),
                     json.dumps(eval_report, indent=2, sort_keys=True) + "\n")
        meta = self._bump(meta)
        meta["trained_corrections"] = len(self.corrections())
        meta["model_version"] = meta["version"]
        self._save_meta(meta)
        return TrainResult(version=meta["version"], model=model, eval_report=eval_report)

    def load_model(self) -> classifier.IntentModel:
        if not self.path(MODEL_FILE).exists():
            raise NoModelError("no model.json; run train first")
        return classifier.load_model(self.path(MODEL_FILE))
