"""Command-line interface: subcommands, exit codes, report output."""

import json

import pytest

from mmsynth.cli import EXIT_ERROR, EXIT_NO_PROGRAM, EXIT_OK, main
from mmsynth.regex.matcher import match_full
from mmsynth.regex.parser import parse_regex


@pytest.fixture()
def digits_task(tmp_path):
    task = tmp_path / "task.json"
    task.write_text(
        json.dumps(
            {
                "nl": "digits then an optional colon part",
                "examples": [
                    {"input": "1", "output": True},
                    {"input": "1:2", "output": True},
                    {"input": ":", "output": False},
                ],
            }
        ),
        encoding="utf-8",
    )
    return task


def test_synth_regex(digits_task, data_dir, capsys):
    code = main(
        [
            "synth",
            "--task",
            str(digits_task),
            "--fixture",
            str(data_dir / "regex" / "digits_colon.txt"),
            "--beam-size",
            "200",
        ]
    )
    captured = capsys.readouterr()
    assert code == EXIT_OK
    program = parse_regex(captured.out.strip())
    assert match_full(program, "1") and match_full(program, "1:2")
    assert not match_full(program, ":")
    assert "seed: 0" in captured.err


def test_synth_contradictory_examples_exit_code(tmp_path, data_dir, capsys):
    task = tmp_path / "task.json"
    task.write_text(
        json.dumps(
            {
                "nl": "impossible",
                "examples": [
                    {"input": "1", "output": True},
                    {"input": "1", "output": False},
                ],
            }
        ),
        encoding="utf-8",
    )
    code = main(
        [
            "synth",
            "--task",
            str(task),
            "--fixture",
            str(data_dir / "regex" / "digits_colon.txt"),
        ]
    )
    assert code == EXIT_NO_PROGRAM
    assert "no consistent program" in capsys.readouterr().err


def test_synth_css_requires_document(digits_task, data_dir, capsys):
    code = main(
        [
            "synth",
            "--domain",
            "css",
            "--task",
            str(digits_task),
            "--fixture",
            str(data_dir / "css" / "checkbox_candidates.txt"),
        ]
    )
    assert code == EXIT_ERROR
    assert "--document" in capsys.readouterr().err


def test_synth_css(tmp_path, data_dir, capsys):
    task = tmp_path / "task.json"
    task.write_text(
        json.dumps(
            {
                "nl": "checkboxes with values",
                "examples": [
                    {"input": 3, "output": True},
                    {"input": 4, "output": False},
                    {"input": 5, "output": False},
                ],
            }
        ),
        encoding="utf-8",
    )
    code = main(
        [
            "synth",
            "--domain",
            "css",
            "--task",
            str(task),
            "--fixture",
            str(data_dir / "css" / "checkbox_candidates.txt"),
            "--document",
            str(data_dir / "css" / "session_document.json"),
            "--beam-size",
            "300",
        ]
    )
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert captured.out.strip()


def test_missing_file_is_an_error(capsys, tmp_path):
    code = main(
        ["synth", "--task", str(tmp_path / "nope.json"), "--fixture", "also-missing.txt"]
    )
    assert code == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_prompt_command(data_dir, capsys):
    code = main(
        [
            "prompt",
            "--corpus",
            str(data_dir / "corpus" / "regex_corpus.jsonl"),
            "--question",
            "exactly four digits",
            "--k",
            "3",
        ]
    )
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert captured.out.rstrip().endswith("Regex:")
    assert "NL: exactly four digits" in captured.out
    # the 3 selected QA pairs plus the open question
    assert captured.out.count("NL:") == 4


def test_candidates_replay(data_dir, capsys):
    code = main(
        ["candidates", "--fixture", str(data_dir / "regex" / "digits_colon.txt")]
    )
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert len(captured.out.strip().splitlines()) >= 1
    # discarded candidates are reported on stderr, never fatal
    assert code == EXIT_OK


def test_candidates_needs_a_source(capsys):
    assert main(["candidates"]) == EXIT_ERROR


def test_bench_writes_report(data_dir, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(
        [
            "bench",
            "--suite",
            str(data_dir / "suites" / "css_suite.json"),
            "--report",
            str(out),
        ]
    )
    captured = capsys.readouterr()
    assert code == EXIT_OK
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["accuracy"] == 1.0
    assert "accuracy:" in captured.err
    assert captured.out == ""
