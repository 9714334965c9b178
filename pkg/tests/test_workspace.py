import json
import os
import signal
import subprocess
import sys
import time

import pytest

from faqforge.kb import KbSyntaxError
from faqforge.workspace import (
    CORRECTIONS_FILE, DATASET_FILE, KB_FILE, MODEL_FILE, TEMPLATES_FILE,
    InvalidDocumentError, NoDatasetError, StaleDatasetError, UnknownIntentError,
    Workspace, atomic_write,
)

from conftest import TINY_KB_DOC


@pytest.fixture
def ws(tmp_path):
    w = Workspace(tmp_path / "ws")
    w.init()
    return w


def test_init_scaffolds_files(ws):
    for name in (KB_FILE, TEMPLATES_FILE, CORRECTIONS_FILE):
        assert ws.path(name).exists()
    assert ws.version == 1
    kb_report, tpl_report = ws.validate()
    assert kb_report.valid and tpl_report.valid


def test_store_kb_bumps_version_and_preserves_bytes(ws):
    document = json.dumps(TINY_KB_DOC, indent=4)
    before = ws.version
    report = ws.store_kb(document)
    assert report.valid
    assert ws.version == before + 1
    assert ws.read_bytes(KB_FILE).decode("utf-8") == document


def test_store_kb_rejects_invalid(ws):
    bad = json.loads(json.dumps(TINY_KB_DOC))
    bad["categories"].append({"label": "teachingstaff", "kind": "structured"})
    with pytest.raises(InvalidDocumentError) as exc:
        ws.store_kb(json.dumps(bad))
    assert "DUPLICATE_LABEL" in exc.value.report.codes()
    with pytest.raises(KbSyntaxError):
        ws.store_kb("{broken")


def test_store_templates_validates_against_kb(ws):
    with pytest.raises(InvalidDocumentError) as exc:
        ws.store_templates(json.dumps([
            {"id": 1, "intent": "nosuch", "keyword_source": None,
             "template": "Hi?", "example": False}]))
    assert "UNKNOWN_INTENT" in exc.value.report.codes()


def test_generate_then_train_pipeline(ws):
    report = ws.generate()
    assert report.raw_count >= 1000
    assert ws.path(DATASET_FILE).exists()
    result = ws.train(alpha=1.0, holdout=0.1, seed=42)
    assert ws.path(MODEL_FILE).exists()
    assert result.eval_report["total"] > 0
    assert ws.model_version == result.version


def test_train_requires_generate(ws):
    with pytest.raises(NoDatasetError):
        ws.train()


def test_train_detects_stale_dataset(ws):
    ws.generate()
    document = ws.read_bytes(KB_FILE).decode("utf-8")
    ws.store_kb(document.replace("knowledge-based agents online course",
                                 "another course domain"))
    with pytest.raises(StaleDatasetError):
        ws.train()
    ws.generate()
    ws.train()  # fresh generate clears the staleness


def test_train_holdout_zero_gives_null_eval(ws):
    ws.generate()
    result = ws.train(holdout=0)
    assert result.eval_report["coverage"] is None
    assert result.eval_report["precision"] is None
    assert ws.path(MODEL_FILE).exists()


def test_corrections_flow(ws):
    question = "are we allowed to collaborate with classmates"
    with pytest.raises(UnknownIntentError):
        ws.add_correction("anything", "nosuch")
    pending = ws.add_correction(question, "intellectualpropertypolicy")
    assert pending == 1
    pending = ws.add_correction(question, "intellectualpropertypolicy")
    assert pending == 2  # duplicates count as pending...
    assert len(ws._correction_examples()) == 1  # ...but dedupe at train time
    ws.generate()
    result = ws.train()
    assert ws.pending_corrections() == 0
    # the corrected question now trains into its intent
    from faqforge.classifier import predict
    assert predict(result.model, question).top == "intellectualpropertypolicy"


def test_corrections_survive_as_template_id_zero(ws):
    ws.add_correction("some odd question", "grade")
    examples = ws._correction_examples()
    assert examples[0].template_id == 0
    assert examples[0].intent == "grade"


def test_version_monotonic_across_mutations(ws):
    versions = [ws.version]
    ws.store_kb(ws.read_bytes(KB_FILE).decode("utf-8"))
    versions.append(ws.version)
    ws.generate()
    versions.append(ws.version)
    ws.add_correction("hm", "grade")
    versions.append(ws.version)
    ws.train()
    versions.append(ws.version)
    assert versions == sorted(versions) and len(set(versions)) == len(versions)


def test_atomic_write_replaces_content(tmp_path):
    target = tmp_path / "file.json"
    atomic_write(target, '{"a": 1}')
    atomic_write(target, '{"a": 2}')
    assert json.loads(target.read_text()) == {"a": 2}
    leftovers = [p for p in tmp_path.iterdir() if p.name != "file.json"]
    assert leftovers == []


KILLER_SCRIPT = """
import sys
from faqforge.workspace import atomic_write
payload_a = '{"payload": "%s"}' % ("A" * 400000)
payload_b = '{"payload": "%s"}' % ("B" * 400000)
target = sys.argv[1]
toggle = True
while True:
    atomic_write(target, payload_a if toggle else payload_b)
    toggle = not toggle
"""


def test_kill_during_write_leaves_complete_file(tmp_path):
    """SIGKILL a process that rewrites a file in a loop; the visible file must
    always be one of the two complete payloads."""
    target = tmp_path / "kb.json"
    for delay in (0.01, 0.05, 0.11):
        proc = subprocess.Popen([sys.executable, "-c", KILLER_SCRIPT, str(target)])
        deadline = time.time() + 10
        while not target.exists() and time.time() < deadline:
            time.sleep(0.005)
        assert target.exists(), "writer subprocess never produced the file"
        time.sleep(delay)
        os.kill(proc.pid, signal.SIGKILL)
        proc.wait()
        content = target.read_text()
        parsed = json.loads(content)  # would fail on a truncated write
        assert set(parsed["payload"]) in ({"A"}, {"B"})
        assert len(parsed["payload"]) == 400000
