import json
import subprocess
import sys

import pytest

from faqforge.cli import main

from conftest import TINY_KB_DOC


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def ws_dir(tmp_path, capsys):
    d = tmp_path / "ws"
    code, _, _ = run_cli(capsys, "init", str(d))
    assert code == 0
    return str(d)


def test_init_validate_generate_train_eval_pipeline(ws_dir, capsys):
    code, out, _ = run_cli(capsys, "-w", ws_dir, "validate")
    assert code == 0
    assert json.loads(out)["kb"]["valid"] is True

    code, out, _ = run_cli(capsys, "-w", ws_dir, "generate")
    assert code == 0
    report = json.loads(out)
    assert report["unique_count"] >= 1000

    code, out, _ = run_cli(capsys, "-w", ws_dir, "train")
    assert code == 0
    trained = json.loads(out)
    assert trained["eval"]["total"] > 0

    code, out, _ = run_cli(capsys, "-w", ws_dir, "eval", "--threshold", "0")
    assert code == 0
    evaluated = json.loads(out)
    assert evaluated["total"] >= 1000


def test_ask_outputs_answer_json(ws_dir, capsys):
    run_cli(capsys, "-w", ws_dir, "generate")
    run_cli(capsys, "-w", ws_dir, "train")
    code, out, _ = run_cli(capsys, "-w", ws_dir, "ask", "Who teaches this class?")
    assert code == 0
    body = json.loads(out)
    assert body["intent"] == "teachingstaff"
    assert body["status"] == "answered"


def test_ask_before_train_fails(ws_dir, capsys):
    code, out, err = run_cli(capsys, "-w", ws_dir, "ask", "Who teaches this class?")
    assert code == 1
    assert out == ""
    assert "train" in err


def test_validate_reports_duplicate_label(tmp_path, capsys):
    d = tmp_path / "ws"
    run_cli(capsys, "init", str(d))
    bad = json.loads(json.dumps(TINY_KB_DOC))
    bad["categories"].append({"label": "grade", "kind": "unstructured"})
    bad["categories"].append({"label": "grade", "kind": "unstructured"})
    (d / "kb.json").write_text(json.dumps(bad))
    code, out, err = run_cli(capsys, "-w", str(d), "validate")
    assert code == 1
    assert "DUPLICATE_LABEL" in err


def test_train_before_generate_fails(ws_dir, capsys):
    code, _, err = run_cli(capsys, "-w", ws_dir, "train")
    assert code == 1
    assert "generate" in err


def test_generate_out_copies_dataset(ws_dir, tmp_path, capsys):
    out_path = tmp_path / "copy.jsonl"
    code, _, _ = run_cli(capsys, "-w", ws_dir, "generate", "--out", str(out_path))
    assert code == 0
    assert out_path.read_bytes() == (tmp_path / "ws" / "dataset.jsonl").read_bytes()


def test_suggest_command(tmp_path, capsys):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("when is assignment 1 due\nwhen is assignment 2 due\n")
    code, out, _ = run_cli(capsys, "suggest", "--corpus", str(corpus))
    assert code == 0
    body = json.loads(out)
    skeletons = [s["skeleton"] for s in body["suggestions"]]
    assert "when is {object} due" in skeletons


def test_suggest_jsonl_corpus(tmp_path, capsys):
    corpus = tmp_path / "corpus.jsonl"
    corpus.write_text('{"question": "when is a1 due", "intent": "duedate"}\n'
                      '{"question": "when is a2 due", "intent": "duedate"}\n')
    code, out, _ = run_cli(capsys, "suggest", "--corpus", str(corpus))
    assert code == 0
    body = json.loads(out)
    assert "duedate" in body["ngram_tables"]


def test_eval_with_external_testset(ws_dir, tmp_path, capsys):
    run_cli(capsys, "-w", ws_dir, "generate")
    run_cli(capsys, "-w", ws_dir, "train")
    testset = tmp_path / "test.jsonl"
    testset.write_text('{"question": "Who teaches this class?", "intent": "teachingstaff"}\n')
    code, out, _ = run_cli(capsys, "-w", ws_dir, "eval", "--test", str(testset))
    assert code == 0
    assert json.loads(out)["total"] == 1


def test_usage_error_exit_code_2():
    proc = subprocess.run([sys.executable, "-m", "faqforge.cli", "bogus-command"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_seeded_pipeline_byte_identical(tmp_path, capsys):
    outputs = []
    for sub in ("one", "two"):
        d = tmp_path / sub
        assert run_cli(capsys, "init", str(d))[0] == 0
        assert run_cli(capsys, "-w", str(d), "generate")[0] == 0
        assert run_cli(capsys, "-w", str(d), "train", "--seed", "42")[0] == 0
        outputs.append(tuple((d / name).read_bytes()
                             for name in ("dataset.jsonl", "model.json", "report.json")))
    assert outputs[0] == outputs[1]
