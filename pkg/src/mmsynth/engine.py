"""The synthesis engine: guided component-based enumerative beam search.

The search combines two signals from the language-model candidate set P:

* structural bias — operator vectors of synthesized terms are kept close
  (Hamming/Euclidean distance) to the average operator vector of P;
* component bias — the cache is seeded with the components of P that occur
  frequently (occurrence filter) and are maximal (redundancy filter).

The engine is domain-agnostic: everything language-specific is supplied
through a ``Domain`` adapter (parser, printer, interpretation, example
evaluation).  The loop is: initialize the cache from P, then repeatedly
prune (semantic condensation + beam) and expand (apply every operator to
the pruned cache, merging new terms into the unpruned cache), checking
after every round for closed terms consistent with the examples.
"""

from __future__ import annotations

import heapq
import logging
import math
import random
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Hashable, Optional, Sequence

import numpy as np

from . import kernels
from .dsl import DslDefinition, Sort, Term, average_op_vector, count_containing, op_vector, subterms

logger = logging.getLogger(__name__)

__all__ = [
    "Domain",
    "Cache",
    "SynthesisConfig",
    "MultiModalTask",
    "SynthesisResult",
    "SynthesisSession",
    "initialize",
    "expand",
    "prune",
    "hamming_distance",
    "euclidean_distance",
    "rank",
    "consistent",
    "synthesize",
]


@dataclass(frozen=True)
class Domain:
    """Everything the engine needs to know about one target language."""

    name: str
    dsl: DslDefinition
    parse: Callable[[str], Term]
    to_string: Callable[[Term], str]
    # interpretation(term, inputs) -> hashable key; for closed terms this is
    # the tuple of outputs on the inputs, which consistency checks compare
    # against the expected outputs directly.
    interpretation: Callable[[Term, tuple], Hashable]
    commutative_ops: frozenset = frozenset()


@dataclass(frozen=True)
class MultiModalTask:
    """A natural-language description plus input-output examples."""

    nl: str
    examples: tuple  # of (input, output) pairs
    domain: str = "regex"


class Cache:
    """Per-sort store of terms; insertion-ordered for determinism."""

    def __init__(self, sorts):
        self._buckets: dict[Sort, dict[Term, None]] = {s: {} for s in sorts}

    def add(self, t: Term) -> bool:
        bucket = self._buckets[t.sort]
        if t in bucket:
            return False
        bucket[t] = None
        return True

    def terms(self, sort: Sort) -> list:
        return list(self._buckets[sort])

    def __contains__(self, t: Term) -> bool:
        return t in self._buckets[t.sort]

    def replace_sort(self, sort: Sort, terms) -> None:
        self._buckets[sort] = {t: None for t in terms}

    def copy(self) -> "Cache":
        clone = Cache(self._buckets)
        for sort, bucket in self._buckets.items():
            clone._buckets[sort] = dict(bucket)
        return clone

    @property
    def sorts(self):
        return self._buckets.keys()

    def size(self) -> int:
        return sum(len(b) for b in self._buckets.values())

    def sizes(self) -> dict:
        return {s.name: len(b) for s, b in self._buckets.items()}


@dataclass(frozen=True)
class SynthesisConfig:
    synth_depth: int = 3
    pr_occ: float = 0.1
    pr_red: float = 0.0
    beam_size: float = 2000
    op_th: float = 1.0
    time_budget: float = 60.0
    max_new_per_op: int = 50000
    merge_into_pruned: bool = False
    # ablation flags
    init_all_atoms: bool = False  # v1: seed with every candidate sub-term, unfiltered
    full_expansion: bool = False  # v2: disable pruning entirely
    random_rank: bool = False  # v3: pick a consistent term uniformly at random

    def __post_init__(self):
        if self.beam_size < 1:
            raise ValueError("beam_size must be at least 1")
        if self.synth_depth < 1:
            raise ValueError("synth_depth must be at least 1")


@dataclass
class SynthesisResult:
    program: Optional[Term]
    stats: dict = field(default_factory=dict)


class SynthesisSession:
    """Per-task state: interpretation memo, candidate statistics, deadline."""

    def __init__(
        self,
        domain: Domain,
        examples: Sequence,
        candidates,
        cfg: SynthesisConfig,
        rng: Optional[random.Random] = None,
    ):
        self.domain = domain
        self.cfg = cfg
        self.examples = tuple(examples)
        self.inputs = tuple(i for i, _ in self.examples)
        self.expected = tuple(o for _, o in self.examples)
        self.candidates = candidates
        self.rng = rng or random.Random(0)
        self._interp_memo: dict[Term, Hashable] = {}
        self._string_memo: dict[Term, str] = {}
        self._lev_memo: dict[Term, float] = {}
        if candidates.programs:
            self.avg_vector = average_op_vector(candidates.programs, domain.dsl)
        else:
            self.avg_vector = np.zeros(domain.dsl.n_operators)
        self.deadline = time.monotonic() + cfg.time_budget

    def out_of_time(self) -> bool:
        return time.monotonic() > self.deadline

    def interp(self, t: Term) -> Hashable:
        key = self._interp_memo.get(t)
        if key is None:
            key = self.domain.interpretation(t, self.inputs)
            self._interp_memo[t] = key
        return key

    def to_string(self, t: Term) -> str:
        s = self._string_memo.get(t)
        if s is None:
            s = self.domain.to_string(t)
            self._string_memo[t] = s
        return s

    def mean_candidate_distance(self, t: Term) -> float:
        """Mean Levenshtein distance of t's printout to the candidates'."""
        d = self._lev_memo.get(t)
        if d is None:
            programs = self.candidates.programs
            if not programs:
                d = 0.0
            else:
                text = self.to_string(t)
                d = sum(
                    kernels.levenshtein(text, self.to_string(p)) for p in programs
                ) / len(programs)
            self._lev_memo[t] = d
        return d


# ---------------------------------------------------------------------------
# Distances


def hamming_distance(programs: Sequence[Term], t: Term, dsl: DslDefinition, op_th: float) -> int:
    """Count of operators used more than op_th times in t but less in P's mean."""
    return _hamming(op_vector(t, dsl), average_op_vector(programs, dsl), op_th)


def _hamming(v: np.ndarray, avg: np.ndarray, op_th: float) -> int:
    if math.isinf(op_th):
        return 0
    return int(np.count_nonzero((v > op_th) & (avg < op_th)))


def euclidean_distance(programs: Sequence[Term], t: Term, dsl: DslDefinition) -> float:
    """Euclidean norm between t's operator vector and P's average."""
    return float(np.linalg.norm(op_vector(t, dsl) - average_op_vector(programs, dsl)))


def _euclidean(v: np.ndarray, avg: np.ndarray) -> float:
    return float(np.linalg.norm(v - avg))


# ---------------------------------------------------------------------------
# Initialize


def initialize(candidates, cfg: SynthesisConfig, dsl: DslDefinition) -> Cache:
    """Seed the cache with maximal frequent components of P plus the
    standard components."""
    programs = list(candidates.programs)
    cache = Cache(dsl.sorts)
    if not programs:
        logger.warning("empty candidate set: initializing from standard components only")
        for t in dsl.standard_components:
            cache.add(t)
        return cache

    all_subterms: dict[Term, None] = {}
    for p in programs:
        for t in sorted(subterms(p), key=lambda x: x.size):
            all_subterms.setdefault(t, None)

    if cfg.init_all_atoms:
        survivors = list(all_subterms)
    else:
        counts = {t: count_containing(t, programs) for t in all_subterms}
        n = len(programs)
        frequent = [t for t in all_subterms if counts[t] / n >= cfg.pr_occ]
        frequent_set = set(frequent)
        # super-term relation within v1, restricted to the frequent terms
        supers: dict[Term, list] = {t: [] for t in frequent}
        for big in all_subterms:
            for small in subterms(big):
                if small in frequent_set:
                    supers[small].append(big)
        survivors = []
        for t in frequent:
            sup = supers[t]  # includes t itself (reflexivity of ⊑)
            redundant = [u for u in sup if u is not t and u != t and counts.get(u, 0) == counts[t]]
            if len(redundant) / len(sup) <= cfg.pr_red:
                survivors.append(t)

    for t in survivors:
        cache.add(t)
    for t in dsl.standard_components:
        cache.add(t)
    return cache


# ---------------------------------------------------------------------------
# Prune


def prune(cache: Cache, session: SynthesisSession) -> Cache:
    """Semantic condensation: drop terms equivalent to a proper same-sort
    sub-term, drop terms structurally far from P (Hamming), then condense
    each semantic class to its beam quota ordered by Euclidean distance."""
    cfg = session.cfg
    result = cache.copy()
    if cfg.full_expansion:
        return result
    dsl = session.domain.dsl
    avg = session.avg_vector
    for sort in cache.sorts:
        terms = result.terms(sort)
        if not terms:
            continue
        # (a) sub-term equivalence: t goes if a PROPER same-sort sub-term
        # has the same interpretation over the examples.
        kept = []
        for t in terms:
            key = session.interp(t)
            if any(
                sub.sort == sort and session.interp(sub) == key
                for sub in subterms(t)
                if sub != t
            ):
                continue
            kept.append(t)
        # (b) Hamming filter against the candidate average.
        v3 = [t for t in kept if _hamming(op_vector(t, dsl), avg, cfg.op_th) == 0]
        # (c) semantic classes + per-class beam quota by Euclidean distance.
        classes: dict[Hashable, list] = {}
        for t in v3:
            classes.setdefault(session.interp(t), []).append(t)
        total = len(v3)
        survivors = []
        for key in classes:
            group = classes[key]
            if math.isinf(cfg.beam_size):
                survivors.extend(group)
                continue
            quota = max(1, math.ceil(len(group) / total * cfg.beam_size))
            if quota >= len(group):
                survivors.extend(group)
            else:
                scored = [
                    (_euclidean(op_vector(t, dsl), avg), t.size, idx, t)
                    for idx, t in enumerate(group)
                ]
                survivors.extend(
                    t for _, _, _, t in heapq.nsmallest(quota, scored)
                )
        result.replace_sort(sort, survivors)
    return result


# ---------------------------------------------------------------------------
# Expand


def expand(cache: Cache, session: SynthesisSession) -> Cache:
    """One search round: prune, apply every operator over the pruned cache,
    merge the new terms into the (unpruned) input cache."""
    cfg = session.cfg
    pruned = prune(cache, session)
    merged = pruned if cfg.merge_into_pruned else cache.copy()
    dsl = session.domain.dsl
    # Enumerate argument pools in candidate-distance order so that the
    # per-operator cap keeps the most promising constructions.
    avg = session.avg_vector

    def pool_key(t: Term):
        return (_euclidean(op_vector(t, dsl), avg), t.size, _structural_key(t))

    sorted_pools = {
        s: sorted(pruned.terms(s), key=pool_key) for s in pruned.sorts
    }
    for op in dsl.operators:
        if op.arity == 0:
            continue  # 0-ary operator terms are atoms, present via components
        pools = [sorted_pools[s] for s in op.arg_sorts]
        if any(not pool for pool in pools):
            continue
        symmetric = (
            op.name in session.domain.commutative_ops
            and op.arity == 2
            and op.arg_sorts[0] == op.arg_sorts[1]
        )
        new_count = 0
        capped = False
        for args in _argument_tuples(pools, symmetric):
            term = Term(op=op, children=args)
            if merged.add(term):
                new_count += 1
                if new_count >= cfg.max_new_per_op:
                    capped = True
                    break
                if new_count % 1024 == 0 and session.out_of_time():
                    capped = True
                    break
        if capped:
            logger.warning(
                "expansion of %s truncated after %d new terms", op.name, new_count
            )
            if session.out_of_time():
                break
    return merged


def _structural_key(t: Term) -> str:
    """Deterministic total order on terms of any sort (printable or not)."""
    if t.op is None:
        return repr(t.const)
    return "%s(%s)" % (t.op.name, ",".join(_structural_key(c) for c in t.children))


def _argument_tuples(pools, symmetric: bool):
    if symmetric:
        # both pools are the same sort's bucket; emit each unordered pair once
        pool = pools[0]
        for i, a in enumerate(pool):
            for b in pool[i:]:
                yield (a, b)
        return
    if len(pools) == 1:
        for a in pools[0]:
            yield (a,)
    elif len(pools) == 2:
        for a in pools[0]:
            for b in pools[1]:
                yield (a, b)
    else:
        def rec(prefix, rest):
            if not rest:
                yield tuple(prefix)
                return
            for x in rest[0]:
                prefix.append(x)
                yield from rec(prefix, rest[1:])
                prefix.pop()

        yield from rec([], pools)


# ---------------------------------------------------------------------------
# Consistency and ranking


def consistent(t: Term, session: SynthesisSession) -> bool:
    """t ⊨ E: t's outputs on the example inputs equal the expected outputs."""
    if not session.examples:
        return True
    return session.interp(t) == session.expected


def rank(terms: Sequence[Term], session: SynthesisSession) -> list:
    """Lexicographic order: Euclidean distance to the candidate average,
    then mean Levenshtein distance of the printout to the candidates',
    with term size and printout as deterministic tie-breakers."""
    dsl = session.domain.dsl
    avg = session.avg_vector

    def key(t: Term):
        return (
            _euclidean(op_vector(t, dsl), avg),
            session.mean_candidate_distance(t),
            t.size,
            session.to_string(t),
        )

    return sorted(terms, key=key)


# ---------------------------------------------------------------------------
# Top-level loop


def synthesize(
    task: MultiModalTask,
    candidates,
    cfg: SynthesisConfig,
    domain: Domain,
    rng: Optional[random.Random] = None,
) -> SynthesisResult:
    """Search for a closed term consistent with the task's examples."""
    if not candidates.programs and not candidates.raw:
        raise ValueError("all candidates unparseable or no candidates supplied")
    seen: dict = {}
    contradictory = False
    for i, o in task.examples:
        if seen.setdefault(i, o) != o:
            contradictory = True
            break
    session = SynthesisSession(domain, task.examples, candidates, cfg, rng)
    stats: dict = {
        "candidates": len(candidates.programs),
        "cache_sizes": [],
        "iterations_run": 0,
    }
    if not task.examples:
        # NL-only mode: the best-ranked candidate program wins.
        ranked = rank(candidates.programs, session)
        return SynthesisResult(ranked[0] if ranked else None, stats)
    if contradictory:
        return SynthesisResult(None, stats)

    cache = initialize(candidates, cfg, domain.dsl)
    stats["initial_components"] = cache.size()
    closed = domain.dsl.closed_sort

    def winners():
        return [t for t in cache.terms(closed) if consistent(t, session)]

    def choose(found):
        if cfg.random_rank:
            return session.rng.choice(sorted(found, key=session.to_string))
        return rank(found, session)[0]

    found = winners()
    for _ in range(cfg.synth_depth):
        if found or session.out_of_time():
            break
        cache = expand(cache, session)
        stats["iterations_run"] += 1
        stats["cache_sizes"].append(cache.sizes())
        found = winners()
    stats["consistent_terms"] = len(found)
    if not found:
        return SynthesisResult(None, stats)
    return SynthesisResult(choose(found), stats)
