"""Benchmark harness: bounded equivalence, witnesses, refinement loop."""

import json

import pytest

from mmsynth.css.dom import load_document
from mmsynth.css.evaluator import CssSession
from mmsynth.css.parser import parse_selector
from mmsynth.engine import MultiModalTask, SynthesisConfig
from mmsynth.harness import (
    MAX_REFINEMENTS,
    BenchmarkTask,
    EquivalenceConfig,
    RunReport,
    TaskReport,
    bounded_equivalent,
    css_distinguishing,
    css_equivalent,
    distinguishing_examples,
    load_suite,
    run_suite,
    run_task,
)
from mmsynth.regex.parser import parse_regex

from oracles import oracle_match

EQ = EquivalenceConfig()


# ---------------------------------------------------------------------------
# Bounded equivalence (regex)

def test_equivalent_programs():
    assert bounded_equivalent(parse_regex("a|b"), parse_regex("b|a"), EQ) is True
    assert bounded_equivalent(parse_regex("(ab)c"), parse_regex("a(bc)"), EQ) is True
    assert bounded_equivalent(parse_regex("[0-9]+:?[0-9]*"), parse_regex("[0-9]+(:[0-9]*)?"), EQ) is True
    assert bounded_equivalent(parse_regex("\\d"), parse_regex("[0-9]"), EQ) is True


def test_inequivalent_programs():
    assert bounded_equivalent(parse_regex("a+"), parse_regex("a*"), EQ) is False
    assert bounded_equivalent(parse_regex("[0-9]"), parse_regex("[0-8]"), EQ) is False


def test_budget_exhaustion_returns_none():
    tight = EquivalenceConfig(max_strings=10)
    # many distinct character classes force a large representative set
    p = parse_regex("[a-c][d-f][g-i][j-l]")
    g = parse_regex("[a-c][d-f][g-i][j-l][m-o]")
    assert bounded_equivalent(p, g, tight) is None


def test_witnesses_are_labeled_with_ground_truth_verdict():
    p = parse_regex("a*")
    g = parse_regex("a+")
    examples = distinguishing_examples(p, g, EQ)
    # p accepts "" which g rejects: negative witness labeled False
    assert ("", False) in examples
    examples = distinguishing_examples(g, p, EQ)
    assert ("", True) in examples


def test_witnesses_are_shortest():
    p = parse_regex("a{3,}")
    g = parse_regex("a{4,}")
    examples = distinguishing_examples(p, g, EQ)
    assert examples == [("aaa", False)]


# ---------------------------------------------------------------------------
# CSS equivalence

def test_css_equivalence_is_document_relative(session_document):
    session = CssSession(session_document)
    p = parse_selector("td:first-child")
    g = parse_selector("tr > td:nth-child(1)")
    assert css_equivalent(p, g, session)
    q = parse_selector("td")
    assert not css_equivalent(p, q, session)
    witnesses = css_distinguishing(p, q, session)
    # q selects more nodes than p: those extras are positive for q
    assert witnesses and all(label is True for _, label in witnesses)
    assert all(node.tag == "td" for node, _ in witnesses)


# ---------------------------------------------------------------------------
# Suites and reports

def test_load_suite_resolves_paths(data_dir):
    tasks = load_suite(data_dir / "suites" / "regex_suite.json")
    assert [t.name for t in tasks] == [
        "letters-line",
        "vowels-line",
        "digits-colon",
        "decimal-number",
    ]
    assert all(t.config.beam_size == 300 for t in tasks)
    css_tasks = load_suite(data_dir / "suites" / "css_suite.json")
    assert css_tasks[0].document is not None
    # css example inputs are resolved to document nodes
    node, label = css_tasks[0].task.examples[0]
    assert node.node_id == 3 and label is True


def test_load_suite_rejects_unknown_domain(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"domain": "sql", "tasks": []}), encoding="utf-8")
    with pytest.raises(ValueError):
        load_suite(bad)


def test_report_serialization_excludes_wall_time():
    report = RunReport(tasks=[TaskReport("t", True, 2, "a", wall_time=1.23)])
    data = json.loads(report.to_json())
    assert "wall_time" not in json.dumps(data)
    assert data["accuracy"] == 1.0
    assert data["iteration_histogram"] == {"2": 1}


def test_run_task_reports_unparseable_ground_truth(data_dir):
    bench = BenchmarkTask(
        name="bad-gt",
        task=MultiModalTask("x", (("a", True),), "regex"),
        ground_truth="(?:broken",
        fixture=str(data_dir / "regex" / "digits_colon.txt"),
    )
    report = run_task(bench)
    assert not report.solved
    assert "unparseable ground truth" in report.reason


def test_run_task_requires_candidates():
    bench = BenchmarkTask(
        name="none",
        task=MultiModalTask("x", (("a", True),), "regex"),
        ground_truth="a",
    )
    assert run_task(bench).reason == "no candidates"


def test_refinement_stops_at_bound(data_dir, monkeypatch):
    """An unreachable ground truth exhausts refinements without looping."""
    calls = {"n": 0}
    import mmsynth.harness as harness
    from mmsynth.engine import SynthesisResult

    def fake_synthesize(task, candidates, cfg, domain, rng=None):
        calls["n"] += 1
        # a new wrong answer every time: fresh witnesses, no convergence
        return SynthesisResult(parse_regex(chr(ord("a") + calls["n"])), {})

    monkeypatch.setattr(harness, "synthesize", fake_synthesize)
    bench = BenchmarkTask(
        name="stuck",
        task=MultiModalTask("x", (("q", True),), "regex"),
        ground_truth="q",
        fixture=str(data_dir / "regex" / "digits_colon.txt"),
        config=SynthesisConfig(synth_depth=1, time_budget=5),
    )
    report = run_task(bench)
    assert not report.solved
    assert report.iterations == MAX_REFINEMENTS
    assert calls["n"] == MAX_REFINEMENTS + 1  # initial attempt + 10 refinements
    assert report.reason in ("refinement bound reached", "no new distinguishing examples")


def test_run_suite_rejects_unknown_ablation(data_dir):
    tasks = load_suite(data_dir / "suites" / "regex_suite.json")
    with pytest.raises(ValueError):
        run_suite(tasks, ablation="v9")
    with pytest.raises(ValueError):
        run_suite([])


# ---------------------------------------------------------------------------
# Representatives: the string sample covers all charset distinctions

def test_representative_strings_expose_differences():
    # agree on representatives => agree on arbitrary short strings
    p = parse_regex("[ab]+")
    g = parse_regex("[abc]+")
    assert bounded_equivalent(p, g, EQ) is False
    examples = distinguishing_examples(p, g, EQ)
    (s, label), = examples
    assert label is True and oracle_match(g, s) and not oracle_match(p, s)
