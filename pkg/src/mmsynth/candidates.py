"""Candidate programs from a language model or a recorded fixture.

The engine never talks to a completion endpoint directly: it consumes a
``CandidateSet`` built here, either by replaying a fixture file (one
candidate string per line — fully deterministic) or by querying a live
completion API through a thin, swappable HTTP adapter.  Completions are
reduced to program strings by ``extract_program`` (answer marker up to
the stop sequence) and run through the domain parser; anything that does
not parse is recorded as discarded, never fatal.
"""

from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .dsl import Term

logger = logging.getLogger(__name__)

__all__ = [
    "CandidateSet",
    "CompletionConfig",
    "TransportError",
    "ExtractionError",
    "extract_program",
    "build_candidate_set",
    "load_fixture",
    "get_candidates",
    "HttpCompletionClient",
]


class TransportError(RuntimeError):
    """Network/auth/timeout failure while fetching completions."""


class ExtractionError(ValueError):
    """A completion did not contain the answer marker."""


@dataclass(frozen=True)
class CompletionConfig:
    temperature: float = 0.6
    n_completions: int = 20
    max_tokens: int = 256
    stop_sequence: str = "NL:"
    answer_marker: str = "Regex:"
    endpoint: str = ""
    api_key_env: str = "COMPLETION_API_KEY"
    timeout: float = 30.0


@dataclass(frozen=True)
class CandidateSet:
    """Parsed, deduplicated candidate programs plus provenance."""

    programs: tuple[Term, ...]
    sources: tuple[str, ...]  # source string per program, aligned
    raw: tuple[str, ...]  # every candidate string as received
    discarded: tuple[tuple[str, str], ...] = ()  # (string, reason)


def extract_program(completion: str, cfg: CompletionConfig) -> str:
    """The program string inside one completion.

    Text after the answer marker (or from the start, for completions that
    continue an open prompt ending in the marker) up to the first stop
    sequence; idempotent on already-extracted strings that carry the
    marker.
    """
    text = completion
    marker_pos = text.find(cfg.answer_marker)
    if marker_pos < 0:
        raise ExtractionError(f"no {cfg.answer_marker!r} marker in completion")
    text = text[marker_pos + len(cfg.answer_marker) :]
    stop_pos = text.find(cfg.stop_sequence)
    if stop_pos >= 0:
        text = text[:stop_pos]
    return text.strip()


def build_candidate_set(
    strings: Sequence[str], parser: Callable[[str], Term]
) -> CandidateSet:
    """Parse and structurally deduplicate candidate strings, in order."""
    programs: dict[Term, str] = {}
    discarded = []
    for s in strings:
        try:
            term = parser(s)
        except ValueError as exc:
            discarded.append((s, str(exc)))
            continue
        programs.setdefault(term, s)
    return CandidateSet(
        programs=tuple(programs),
        sources=tuple(programs.values()),
        raw=tuple(strings),
        discarded=tuple(discarded),
    )


def load_fixture(path, parser: Callable[[str], Term]) -> CandidateSet:
    """Candidate set from a fixture file, one candidate per line."""
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh]
    lines = [line for line in lines if line.strip()]
    if not lines:
        raise ValueError(f"no candidates in fixture {path}")
    return build_candidate_set(lines, parser)


class HttpCompletionClient:
    """Minimal completion-API adapter: prompt in, list of texts out.

    POSTs ``{prompt, temperature, n, max_tokens, stop}`` and reads
    ``{choices: [{text}]}``.  One retry with jittered backoff; anything
    else surfaces as TransportError.
    """

    def __init__(self, cfg: CompletionConfig, api_key: Optional[str] = None):
        if not cfg.endpoint:
            raise ValueError("no completion endpoint configured")
        self.cfg = cfg
        if api_key is None:
            import os

            api_key = os.environ.get(cfg.api_key_env, "")
        self.api_key = api_key

    def complete(self, prompt: str) -> list:
        import requests

        cfg = self.cfg
        payload = {
            "prompt": prompt,
            "temperature": cfg.temperature,
            "n": cfg.n_completions,
            "max_tokens": cfg.max_tokens,
            "stop": cfg.stop_sequence,
        }
        headers = {"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}
        last_error: Optional[Exception] = None
        for attempt in range(2):
            try:
                response = requests.post(
                    cfg.endpoint, json=payload, headers=headers, timeout=cfg.timeout
                )
                response.raise_for_status()
                body = response.json()
                return [choice["text"] for choice in body["choices"]]
            except Exception as exc:  # noqa: BLE001 - mapped to a typed error
                last_error = exc
                if attempt == 0:
                    time.sleep(0.5 + random.random())
        raise TransportError(f"completion request failed: {last_error}")


def get_candidates(
    prompt: str,
    cfg: CompletionConfig,
    parser: Callable[[str], Term],
    client: Optional[object] = None,
) -> CandidateSet:
    """Fetch completions for a prompt and reduce them to a CandidateSet.

    ``client`` may be any object with ``complete(prompt) -> list[str]``;
    by default an ``HttpCompletionClient`` over ``cfg`` is used.
    """
    if not prompt:
        raise ValueError("empty prompt")
    if cfg.n_completions < 1:
        raise ValueError("no candidates requested")
    if client is None:
        client = HttpCompletionClient(cfg)
    completions = client.complete(prompt)
    extracted = []
    failures = []
    for completion in completions:
        try:
            extracted.append(extract_program(cfg.answer_marker + completion, cfg))
        except ExtractionError as exc:
            failures.append((completion, str(exc)))
    result = build_candidate_set(extracted, parser)
    if failures:
        result = CandidateSet(
            programs=result.programs,
            sources=result.sources,
            raw=result.raw,
            discarded=result.discarded + tuple(failures),
        )
    return result
