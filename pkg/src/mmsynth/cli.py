"""Command-line interface.

Subcommands:

* ``synth``       -- synthesize a program for one task file
* ``prompt``      -- build and print the few-shot prompt for a question
* ``candidates``  -- fetch or replay a candidate set and show the pipeline
* ``bench``       -- run a benchmark suite and emit a report

Exit codes: 0 success, 2 no consistent program found, 1 any error.
Diagnostics go to stderr; results to stdout (or ``--report``).
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import replace

from .candidates import CompletionConfig, get_candidates, load_fixture
from .css.dom import load_document
from .css.evaluator import CssSession
from .domains import make_css_domain, make_regex_domain
from .engine import MultiModalTask, SynthesisConfig, synthesize
from .harness import ABLATION_FLAGS, EquivalenceConfig, load_suite, run_suite
from .prompting import (
    PromptConfig,
    build_prompt,
    load_corpus,
    relevance_tfidf,
    relevance_tm,
    select_qa_pairs,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_PROGRAM = 2

DEFAULT_SEED = 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _add_engine_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--beam-size", type=_positive_int, default=None)
    parser.add_argument("--depth", type=_positive_int, default=None)
    parser.add_argument("--pr-occ", type=float, default=None)
    parser.add_argument("--pr-red", type=float, default=None)
    parser.add_argument("--op-th", type=float, default=None)
    parser.add_argument("--time-budget", type=float, default=None)


def _engine_config(args, base: SynthesisConfig = SynthesisConfig()) -> SynthesisConfig:
    overrides = {
        "beam_size": args.beam_size,
        "synth_depth": args.depth,
        "pr_occ": args.pr_occ,
        "pr_red": args.pr_red,
        "op_th": args.op_th,
        "time_budget": args.time_budget,
    }
    return replace(base, **{k: v for k, v in overrides.items() if v is not None})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmsynth",
        description="Multi-modal program synthesis for regexes and CSS selectors.",
    )
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="RNG seed (printed)")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="synthesize a program for one task")
    p_synth.add_argument("--domain", choices=("regex", "css"), default="regex")
    p_synth.add_argument("--task", required=True, help="task file: {nl, examples[{input,output}]}")
    p_synth.add_argument("--fixture", required=True, help="candidate fixture, one per line")
    p_synth.add_argument("--document", help="session document (required for css)")
    p_synth.add_argument(
        "--variant", choices=sorted(k for k in ABLATION_FLAGS if k), default=None
    )
    _add_engine_flags(p_synth)

    p_prompt = sub.add_parser("prompt", help="build the few-shot prompt")
    p_prompt.add_argument("--corpus", required=True, help="QA corpus, JSON records per line")
    p_prompt.add_argument("--question", required=True)
    p_prompt.add_argument("--k", type=_positive_int, default=10)
    p_prompt.add_argument("--sim-threshold", type=int, default=5)
    p_prompt.add_argument("--metric", choices=("tm", "tfidf"), default="tfidf")
    p_prompt.add_argument("--header", default="")
    p_prompt.add_argument("--answer-marker", default="Regex:")
    p_prompt.add_argument("--explain", action="store_true", help="show per-pair scores")

    p_cand = sub.add_parser("candidates", help="fetch or replay candidates")
    p_cand.add_argument("--domain", choices=("regex", "css"), default="regex")
    p_cand.add_argument("--fixture", help="replay from a fixture file")
    p_cand.add_argument("--endpoint", help="live completion endpoint URL")
    p_cand.add_argument("--prompt-file", help="prompt to send in live mode")
    p_cand.add_argument("--temperature", type=float, default=0.6)
    p_cand.add_argument("--n", type=_positive_int, default=20)

    p_bench = sub.add_parser("bench", help="run a benchmark suite")
    p_bench.add_argument("--suite", required=True)
    p_bench.add_argument("--report", help="write the JSON report here (default stdout)")
    p_bench.add_argument(
        "--variant", choices=sorted(k for k in ABLATION_FLAGS if k), default=None
    )
    p_bench.add_argument("--max-len", type=_positive_int, default=8)
    return parser


def cmd_synth(args) -> int:
    with open(args.task, encoding="utf-8") as fh:
        record = json.load(fh)
    if args.domain == "css":
        if not args.document:
            print("error: css domain requires --document", file=sys.stderr)
            return EXIT_ERROR
        document = load_document(args.document)
        session = CssSession(document)
        domain = make_css_domain(session)
        examples = tuple(
            (document.node(int(ex["input"])), bool(ex["output"]))
            for ex in record.get("examples", [])
        )
    else:
        domain = make_regex_domain()
        examples = tuple(
            (ex["input"], bool(ex["output"])) for ex in record.get("examples", [])
        )
    candidates = load_fixture(args.fixture, domain.parse)
    cfg = _engine_config(args)
    if args.variant:
        cfg = replace(cfg, **ABLATION_FLAGS[args.variant])
    task = MultiModalTask(record.get("nl", ""), examples, args.domain)
    result = synthesize(task, candidates, cfg, domain, random.Random(args.seed))
    print(
        f"candidates={len(candidates.programs)} discarded={len(candidates.discarded)} "
        f"initial_components={result.stats.get('initial_components')} "
        f"cache_sizes={result.stats.get('cache_sizes')}",
        file=sys.stderr,
    )
    if result.program is None:
        print("no consistent program", file=sys.stderr)
        return EXIT_NO_PROGRAM
    print(domain.to_string(result.program))
    return EXIT_OK


def cmd_prompt(args) -> int:
    corpus = load_corpus(args.corpus)
    if not len(corpus):
        print("error: empty corpus", file=sys.stderr)
        return EXIT_ERROR
    cfg = PromptConfig(
        k=args.k,
        similarity_threshold=args.sim_threshold,
        metric=args.metric,
        header=args.header,
        answer_marker=args.answer_marker,
    )
    pairs = select_qa_pairs(corpus, args.question, cfg)
    if args.explain:
        for pair in pairs:
            if cfg.metric == "tm":
                score = relevance_tm(pair.question, args.question)
            else:
                score = relevance_tfidf(pair.question, args.question, corpus)
            print(f"# {score:.4f} {pair.question!r}", file=sys.stderr)
    print(build_prompt(pairs, args.question, cfg))
    return EXIT_OK


def cmd_candidates(args) -> int:
    if args.domain == "css":
        from .css.parser import parse_selector as parse
        from .css.printer import print_selector as to_string
    else:
        from .regex.parser import parse_regex as parse
        from .regex.printer import print_regex as to_string
    if args.fixture:
        result = load_fixture(args.fixture, parse)
    elif args.endpoint and args.prompt_file:
        with open(args.prompt_file, encoding="utf-8") as fh:
            prompt = fh.read()
        marker = "Selector:" if args.domain == "css" else "Regex:"
        cfg = CompletionConfig(
            temperature=args.temperature,
            n_completions=args.n,
            endpoint=args.endpoint,
            answer_marker=marker,
        )
        result = get_candidates(prompt, cfg, parse)
    else:
        print("error: need --fixture, or --endpoint with --prompt-file", file=sys.stderr)
        return EXIT_ERROR
    for program in result.programs:
        print(to_string(program))
    for source, reason in result.discarded:
        print(f"# discarded {source!r}: {reason}", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    tasks = load_suite(args.suite)
    eq_cfg = EquivalenceConfig(max_len=args.max_len)
    report = run_suite(tasks, eq_cfg, ablation=args.variant, seed=args.seed)
    text = report.to_json()
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for entry in report.tasks:
        status = "solved" if entry.solved else f"unsolved ({entry.reason})"
        print(
            f"{entry.name}: {status} iterations={entry.iterations} "
            f"time={entry.wall_time:.2f}s",
            file=sys.stderr,
        )
    print(f"accuracy: {report.accuracy:.3f}", file=sys.stderr)
    return EXIT_OK if report.tasks else EXIT_ERROR


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    print(f"seed: {args.seed}", file=sys.stderr)
    handlers = {
        "synth": cmd_synth,
        "prompt": cmd_prompt,
        "candidates": cmd_candidates,
        "bench": cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
