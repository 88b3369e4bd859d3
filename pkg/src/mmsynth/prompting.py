"""Few-shot prompt construction: relevance scoring, diverse example
selection, and prompt assembly.

A question-answer corpus is scored against the target question with one
of two relevance metrics (token match or TF-IDF), then pairs are admitted
greedily in relevance order, skipping any pair whose answer is within a
Levenshtein threshold of an already-admitted answer — near-duplicate
answers teach the model nothing new.  The selected pairs are laid out as

    <header>

    NL: <question>
    <answer marker> <answer>

    ...

    NL: <target question>
    <answer marker>

leaving the final answer open for the model to complete.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import kernels

__all__ = [
    "QAPair",
    "QACorpus",
    "PromptConfig",
    "tokenize",
    "relevance_tm",
    "tfidf_score",
    "relevance_tfidf",
    "select_qa_pairs",
    "build_prompt",
    "levenshtein",
    "load_corpus",
]

levenshtein = kernels.levenshtein

_TOKEN_RE = re.compile(r"[a-z0-9]+")

# Token budgets approximate completion-API tokens as words x 4/3.
_TOKENS_PER_WORD = 1.33


def tokenize(text: str) -> list:
    """Lowercased alphanumeric tokens; defines |q| and token membership."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class QAPair:
    question: str
    answer: str

    def __post_init__(self):
        if not self.question or not self.answer:
            raise ValueError("question and answer must be non-empty")


class QACorpus:
    """QA pairs plus a token -> document-frequency index."""

    def __init__(self, pairs: Iterable[QAPair]):
        self.pairs: tuple[QAPair, ...] = tuple(pairs)
        self.doc_freq: dict[str, int] = {}
        for pair in self.pairs:
            for token in set(tokenize(pair.question)):
                self.doc_freq[token] = self.doc_freq.get(token, 0) + 1

    def __len__(self) -> int:
        return len(self.pairs)

    def idf(self, token: str) -> float:
        """Inverse document frequency with +1 smoothing for unseen tokens."""
        n = len(self.pairs)
        df = self.doc_freq.get(token)
        if df is None:
            return -math.log(1.0 / (n + 1))
        return -math.log(df / n)


@dataclass(frozen=True)
class PromptConfig:
    k: int = 10
    similarity_threshold: int = 5
    metric: str = "tfidf"  # "tm" or "tfidf"
    header: str = ""
    question_marker: str = "NL:"
    answer_marker: str = "Regex:"
    max_prompt_tokens: int = 2048

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.metric not in ("tm", "tfidf"):
            raise ValueError(f"unknown relevance metric {self.metric!r}")


def relevance_tm(q: str, q_star: str) -> float:
    """Fraction of q's distinct tokens that also occur in q_star.

    Distinct tokens in both numerator and denominator, so a question is
    always maximally relevant to itself.
    """
    tokens = set(tokenize(q))
    if not tokens:
        return 0.0
    return len(tokens & set(tokenize(q_star))) / len(tokens)


def tfidf_score(token: str, q: str, corpus: QACorpus) -> float:
    """Term frequency of the token in q times its corpus IDF."""
    tf = tokenize(q).count(token)
    return tf * corpus.idf(token)


def relevance_tfidf(q: str, q_star: str, corpus: QACorpus) -> float:
    """Shared-token TF-IDF mass over q's total TF-IDF mass."""
    q_tokens = set(tokenize(q))
    if not q_tokens:
        return 0.0
    denominator = sum(tfidf_score(t, q, corpus) for t in q_tokens)
    if denominator <= 0:
        return 0.0
    shared = q_tokens & set(tokenize(q_star))
    numerator = sum(tfidf_score(t, q, corpus) for t in shared)
    return numerator / denominator


def _estimated_tokens(text: str) -> float:
    return len(text.split()) * _TOKENS_PER_WORD


def select_qa_pairs(
    corpus: QACorpus, q_star: str, cfg: PromptConfig
) -> list:
    """Greedy selection: repeatedly admit the most relevant remaining pair
    whose answer is at Levenshtein distance ≥ threshold from every
    admitted answer; stop at k pairs or at the prompt token budget."""
    if not len(corpus):
        raise ValueError("empty corpus")

    def relevance(pair: QAPair) -> float:
        if cfg.metric == "tm":
            return relevance_tm(pair.question, q_star)
        return relevance_tfidf(pair.question, q_star, corpus)

    # Ties in the argmax are broken by corpus index order.
    scored = sorted(
        enumerate(corpus.pairs), key=lambda item: (-relevance(item[1]), item[0])
    )
    budget = cfg.max_prompt_tokens - _estimated_tokens(
        f"{cfg.header}\n\n{cfg.question_marker} {q_star}\n{cfg.answer_marker}"
    )
    selected: list[QAPair] = []
    used = 0.0
    for _, pair in scored:
        if len(selected) >= cfg.k:
            break
        if any(
            levenshtein(pair.answer, chosen.answer) < cfg.similarity_threshold
            for chosen in selected
        ):
            continue
        cost = _estimated_tokens(
            f"{cfg.question_marker} {pair.question}\n{cfg.answer_marker} {pair.answer}"
        )
        if used + cost > budget:
            break
        selected.append(pair)
        used += cost
    return selected


def build_prompt(pairs: Sequence[QAPair], q_star: str, cfg: PromptConfig) -> str:
    """Assemble the final prompt string, ending in an open answer marker."""
    parts = []
    if cfg.header:
        parts.append(cfg.header + "\n")
    for pair in pairs:
        parts.append(
            f"{cfg.question_marker} {pair.question}\n{cfg.answer_marker} {pair.answer}\n"
        )
    parts.append(f"{cfg.question_marker} {q_star}\n{cfg.answer_marker}")
    prompt = "\n".join(parts)
    if _estimated_tokens(prompt) > cfg.max_prompt_tokens:
        raise ValueError("prompt exceeds the token budget")
    return prompt


def load_corpus(path) -> QACorpus:
    """Load a QA corpus: one JSON record {question, answer} per line."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                pair = QAPair(record["question"], record["answer"])
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{line_no}: bad corpus record: {exc}") from exc
            if "NL:" in pair.answer:
                raise ValueError(
                    f"{path}:{line_no}: answer contains the stop sequence 'NL:'"
                )
            pairs.append(pair)
    return QACorpus(pairs)
