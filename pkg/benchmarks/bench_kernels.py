"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot kernels — Levenshtein distance and the flat-program
span matcher — on representative workloads and prints the speedup.

Run from the repository root after an editable install:

    python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import random
import time

import numpy as np

from mmsynth import kernels
from mmsynth.kernels import _pykernels
from mmsynth.regex.matcher import compile_term
from mmsynth.regex.parser import parse_regex

PATTERNS = [
    "[0-9]+:?[0-9]*",
    "[a-z].*.|([A-Z]|!)",
    "(\\+|-)?[0-9]+(\\.[0-9]+)?",
    "((((!.?)?)*)|[aAeEiIoOuU])+",
]


def _random_texts(rng: random.Random, n: int, max_len: int) -> list[str]:
    alphabet = [chr(c) for c in range(0x20, 0x7F)]
    digits = list("0123456789:+-.!aeiouAEIOU")
    texts = []
    for _ in range(n):
        pool = digits if rng.random() < 0.5 else alphabet
        texts.append("".join(rng.choice(pool) for _ in range(rng.randrange(0, max_len + 1))))
    return texts


def bench_levenshtein(rng: random.Random) -> None:
    words = ["".join(rng.choice("abcdefgh") for _ in range(rng.randrange(3, 30))) for _ in range(300)]
    pairs = [(rng.choice(words), rng.choice(words)) for _ in range(5000)]

    def run(fn):
        start = time.perf_counter()
        checksum = sum(fn(a, b) for a, b in pairs)
        return time.perf_counter() - start, checksum

    py_time, py_sum = run(_pykernels.levenshtein)
    active_time, active_sum = run(kernels.levenshtein)
    assert py_sum == active_sum
    _report("levenshtein (5000 word pairs)", py_time, active_time)


def bench_matcher(rng: random.Random) -> None:
    programs = [compile_term(parse_regex(p)) for p in PATTERNS]
    texts = _random_texts(rng, 2000, 40)
    codes = [np.fromiter((ord(ch) for ch in s), dtype=np.int32, count=len(s)) for s in texts]

    def run(match):
        start = time.perf_counter()
        hits = 0
        for prog in programs:
            for c in codes:
                hits += match(
                    prog.kind, prog.a1, prog.a2, prog.a3, prog.iv_off, prog.iv_len,
                    prog.iv_lo, prog.iv_hi, prog.nullable, prog.root, c,
                )
        return time.perf_counter() - start, hits

    py_time, py_hits = run(_pykernels.match_program)
    active_time, active_hits = run(kernels.match_program)
    assert py_hits == active_hits
    _report(f"span matcher ({len(PATTERNS)} patterns x {len(texts)} texts)", py_time, active_time)


def _report(label: str, py_time: float, active_time: float) -> None:
    speedup = py_time / active_time if active_time > 0 else float("inf")
    print(f"{label}")
    print(f"  python backend:  {py_time * 1000:8.1f} ms")
    print(f"  active backend:  {active_time * 1000:8.1f} ms  ({kernels.BACKEND}, {speedup:.1f}x)")


def main() -> None:
    print(f"active kernel backend: {kernels.BACKEND}")
    rng = random.Random(0)
    bench_levenshtein(rng)
    bench_matcher(rng)


if __name__ == "__main__":
    main()
