"""Benchmark harness: bounded equivalence, distinguishing examples, and
the iterative example-refinement (CEGIS) loop.

A task is solved when the synthesized program is bounded-equivalent to
the ground truth: for regexes, agreement on every string up to a length
bound over the *relevant* alphabet (one representative per class of
characters that every character-set in either program treats alike, plus
a fresh character); for CSS selectors, equal node sets on the session
document.  When the check fails, the shortest disagreeing inputs are
added as new examples and synthesis reruns, up to ten refinement rounds.
"""

from __future__ import annotations

import itertools
import json
import logging
import random
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

from .candidates import CandidateSet, load_fixture
from .css.dom import DomDocument, load_document
from .css.evaluator import CssSession
from .domains import make_css_domain, make_regex_domain
from .dsl import Term
from .engine import MultiModalTask, SynthesisConfig, SynthesisResult, synthesize
from .regex.lang import DEFAULT_ALPHABET
from .regex.matcher import compile_term

logger = logging.getLogger(__name__)

__all__ = [
    "BenchmarkTask",
    "EquivalenceConfig",
    "TaskReport",
    "RunReport",
    "MAX_REFINEMENTS",
    "bounded_equivalent",
    "distinguishing_examples",
    "run_task",
    "run_suite",
    "load_suite",
]

MAX_REFINEMENTS = 10

ABLATION_FLAGS = {
    None: {},
    "v1": {"init_all_atoms": True},
    "v2": {"full_expansion": True},
    "v3": {"random_rank": True},
    "v4": {},  # fixed-prompt ablation changes candidate *fetching*, not search
}


@dataclass(frozen=True)
class EquivalenceConfig:
    alphabet: tuple = DEFAULT_ALPHABET
    max_len: int = 8
    max_strings: int = 200000


@dataclass(frozen=True)
class BenchmarkTask:
    name: str
    task: MultiModalTask
    ground_truth: str
    fixture: Optional[str] = None
    candidates: Optional[CandidateSet] = None
    config: SynthesisConfig = SynthesisConfig()
    document: Optional[DomDocument] = None


@dataclass
class TaskReport:
    name: str
    solved: bool
    iterations: int
    program: Optional[str]
    reason: str = ""
    wall_time: float = 0.0  # in-memory only; excluded from serialized reports

    def serializable(self) -> dict:
        return {
            "name": self.name,
            "solved": self.solved,
            "iterations": self.iterations,
            "program": self.program,
            "reason": self.reason,
        }


@dataclass
class RunReport:
    tasks: list = field(default_factory=list)

    @property
    def accuracy(self) -> float:
        if not self.tasks:
            return 0.0
        return sum(1 for t in self.tasks if t.solved) / len(self.tasks)

    def iteration_histogram(self) -> dict:
        hist: dict[int, int] = {}
        for t in self.tasks:
            if t.solved:
                hist[t.iterations] = hist.get(t.iterations, 0) + 1
        return dict(sorted(hist.items()))

    def serializable(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "iteration_histogram": {str(k): v for k, v in self.iteration_histogram().items()},
            "tasks": [t.serializable() for t in self.tasks],
        }

    def to_json(self) -> str:
        return json.dumps(self.serializable(), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Bounded equivalence (regex)


def _representatives(p: Term, g: Term, cfg: EquivalenceConfig) -> list:
    """One character per equivalence class of the matching alphabet.

    Characters that every character-set node in either program treats
    identically are interchangeable for matching, so one representative
    per membership signature suffices; a signature-empty region supplies
    the 'fresh' character.
    """
    programs = [compile_term(t, cfg.alphabet) for t in (p, g)]
    charsets = []
    for prog in programs:
        if prog is None:
            continue
        for node in range(len(prog.kind)):
            if prog.kind[node] == 0:
                off = int(prog.iv_off[node])
                length = int(prog.iv_len[node])
                charsets.append(
                    tuple(
                        (int(prog.iv_lo[k]), int(prog.iv_hi[k]))
                        for k in range(off, off + length)
                    )
                )
    lo, hi = cfg.alphabet
    signatures: dict[tuple, str] = {}
    for code in range(lo, hi + 1):
        sig = tuple(
            any(a <= code <= b for a, b in intervals) for intervals in charsets
        )
        signatures.setdefault(sig, chr(code))
    return sorted(signatures.values())


def _strings(reps: Sequence[str], max_len: int):
    for length in range(max_len + 1):
        for tup in itertools.product(reps, repeat=length):
            yield "".join(tup)


def bounded_equivalent(p: Term, g: Term, cfg: EquivalenceConfig) -> Optional[bool]:
    """Tri-state: True/False within the bound, None if the budget ran out."""
    from .regex.matcher import match_full

    if p == g:
        return True
    reps = _representatives(p, g, cfg)
    checked = 0
    for s in _strings(reps, cfg.max_len):
        if checked >= cfg.max_strings:
            return None
        checked += 1
        if match_full(p, s, cfg.alphabet) != match_full(g, s, cfg.alphabet):
            return False
    return True


def distinguishing_examples(p: Term, g: Term, cfg: EquivalenceConfig) -> list:
    """Shortest length-lex witnesses, labeled with the ground truth's verdict:
    up to one input accepted by p but not g (negative) and one accepted by
    g but not p (positive)."""
    from .regex.matcher import match_full

    reps = _representatives(p, g, cfg)
    negative = positive = None
    checked = 0
    for s in _strings(reps, cfg.max_len):
        if checked >= cfg.max_strings:
            break
        checked += 1
        accepts_p = match_full(p, s, cfg.alphabet)
        accepts_g = match_full(g, s, cfg.alphabet)
        if negative is None and accepts_p and not accepts_g:
            negative = (s, False)
        elif positive is None and accepts_g and not accepts_p:
            positive = (s, True)
        if negative is not None and positive is not None:
            break
    return [e for e in (negative, positive) if e is not None]


# ---------------------------------------------------------------------------
# CSS equivalence (relative to the session document)


def css_equivalent(p: Term, g: Term, session: CssSession) -> bool:
    return session.evaluate(p) == session.evaluate(g)


def css_distinguishing(p: Term, g: Term, session: CssSession) -> list:
    selected_p = session.evaluate(p)
    selected_g = session.evaluate(g)
    out = []
    false_positives = sorted(n.node_id for n in selected_p - selected_g)
    false_negatives = sorted(n.node_id for n in selected_g - selected_p)
    if false_positives:
        out.append((session.doc.node(false_positives[0]), False))
    if false_negatives:
        out.append((session.doc.node(false_negatives[0]), True))
    return out


# ---------------------------------------------------------------------------
# The refinement loop


def run_task(
    bench: BenchmarkTask,
    eq_cfg: EquivalenceConfig = EquivalenceConfig(),
    seed: int = 0,
) -> TaskReport:
    started = time.monotonic()
    is_css = bench.task.domain == "css"
    if is_css:
        if bench.document is None:
            return TaskReport(bench.name, False, 0, None, reason="no document")
        session = CssSession(bench.document)
        domain = make_css_domain(session)
    else:
        session = None
        domain = make_regex_domain()

    try:
        truth = domain.parse(bench.ground_truth)
    except ValueError as exc:
        return TaskReport(bench.name, False, 0, None, reason=f"unparseable ground truth: {exc}")

    candidates = bench.candidates
    if candidates is None:
        if not bench.fixture:
            return TaskReport(bench.name, False, 0, None, reason="no candidates")
        try:
            candidates = load_fixture(bench.fixture, domain.parse)
        except (OSError, ValueError) as exc:
            return TaskReport(bench.name, False, 0, None, reason=f"fixture error: {exc}")
    if not candidates.programs:
        return TaskReport(bench.name, False, 0, None, reason="no candidates")

    examples = list(bench.task.examples)
    rng = random.Random(seed)
    iterations = 0
    last_program: Optional[Term] = None
    while True:
        assert iterations <= MAX_REFINEMENTS, "refinement bound exceeded"
        task = MultiModalTask(bench.task.nl, tuple(examples), bench.task.domain)
        result = synthesize(task, candidates, bench.config, domain, rng)
        if result.program is None:
            return TaskReport(
                bench.name,
                False,
                iterations,
                None,
                reason="no consistent program",
                wall_time=time.monotonic() - started,
            )
        last_program = result.program
        if is_css:
            equivalent = css_equivalent(result.program, truth, session)
            witnesses = [] if equivalent else css_distinguishing(result.program, truth, session)
        else:
            verdict = bounded_equivalent(result.program, truth, eq_cfg)
            equivalent = bool(verdict)
            witnesses = (
                []
                if verdict is not False
                else distinguishing_examples(result.program, truth, eq_cfg)
            )
        if equivalent or not witnesses:
            # Equivalent within the bound; no witness found also counts as
            # converged-at-bound.
            return TaskReport(
                bench.name,
                True,
                iterations,
                domain.to_string(result.program),
                wall_time=time.monotonic() - started,
            )
        if iterations == MAX_REFINEMENTS:
            return TaskReport(
                bench.name,
                False,
                iterations,
                domain.to_string(last_program),
                reason="refinement bound reached",
                wall_time=time.monotonic() - started,
            )
        before = len(examples)
        known = {i for i, _ in examples}
        examples.extend(w for w in witnesses if w[0] not in known)
        if len(examples) == before:
            return TaskReport(
                bench.name,
                False,
                iterations,
                domain.to_string(last_program),
                reason="no new distinguishing examples",
                wall_time=time.monotonic() - started,
            )
        iterations += 1


def run_suite(
    tasks: Sequence[BenchmarkTask],
    eq_cfg: EquivalenceConfig = EquivalenceConfig(),
    ablation: Optional[str] = None,
    seed: int = 0,
) -> RunReport:
    if not tasks:
        raise ValueError("no tasks")
    if ablation not in ABLATION_FLAGS:
        raise ValueError(f"unknown ablation variant {ablation!r}")
    flags = ABLATION_FLAGS[ablation]
    report = RunReport()
    for bench in tasks:
        if flags:
            bench = replace(bench, config=replace(bench.config, **flags))
        try:
            entry = run_task(bench, eq_cfg, seed=seed)
        except Exception as exc:  # noqa: BLE001 - per-task failures never abort
            logger.exception("task %s failed", bench.name)
            entry = TaskReport(bench.name, False, 0, None, reason=f"error: {exc}")
        report.tasks.append(entry)
    return report


# ---------------------------------------------------------------------------
# Suite files


def load_suite(path) -> list:
    """Load a benchmark suite file.

    JSON: ``{"domain": "regex"|"css", "document": path?, "tasks": [{name?,
    nl, examples: [{input, output}], ground_truth, fixture?, config?:
    {...engine overrides}}]}``.  Fixture and document paths are relative
    to the suite file; CSS example inputs are document-order node ids.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    domain_name = data.get("domain", "regex")
    if domain_name not in ("regex", "css"):
        raise ValueError(f"unknown domain {domain_name!r}")
    document = None
    if domain_name == "css":
        doc_path = data.get("document")
        if not doc_path:
            raise ValueError("css suites require a 'document' path")
        document = load_document(path.parent / doc_path)
    tasks = []
    for i, record in enumerate(data.get("tasks", [])):
        name = record.get("name", f"task-{i}")
        examples = []
        for ex in record.get("examples", []):
            value = ex["input"]
            if domain_name == "css":
                value = document.node(int(value))
            examples.append((value, bool(ex["output"])))
        cfg = SynthesisConfig(**record.get("config", {}))
        fixture = record.get("fixture")
        tasks.append(
            BenchmarkTask(
                name=name,
                task=MultiModalTask(record["nl"], tuple(examples), domain_name),
                ground_truth=record["ground_truth"],
                fixture=str(path.parent / fixture) if fixture else None,
                config=cfg,
                document=document,
            )
        )
    return tasks
