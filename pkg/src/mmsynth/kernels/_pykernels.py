"""Pure-Python reference kernels.

Two hot paths live here: Levenshtein edit distance (used by ranking and by
prompt example selection) and the flat-program span matcher used by the
regular-expression evaluator.  The compiled backend in ``_speedups.pyx``
implements the same functions with the same signatures; this module is the
fallback and the semantic reference.

The span matcher works on a flattened program: parallel arrays indexed by
node id, children always at lower ids than their parent.  Node kinds:

* ``0`` CHARSET  -- matches one character from a sorted interval list
  (``iv_off``/``iv_len`` slice into ``iv_lo``/``iv_hi``).
* ``1`` CONCAT   -- ``a1`` then ``a2``.
* ``2`` ALTER    -- ``a1`` or ``a2``.
* ``3`` QUANT    -- between ``a2`` and ``a3`` repetitions of ``a1``
  (``a3 == -1`` means unbounded).

For each node we compute a "span row" per start position: a bitmask whose
bit ``j`` is set iff the node matches ``text[i:j]``.  Bitmasks are Python
ints, so any string length is supported.
"""

from __future__ import annotations

KIND_CHARSET = 0
KIND_CONCAT = 1
KIND_ALTER = 2
KIND_QUANT = 3


def levenshtein(a: str, b: str) -> int:
    """Levenshtein edit distance between two strings (unit costs)."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cost = 0 if ca == cb else 1
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost))
        prev = cur
    return prev[-1]


def _char_in_set(code: int, off: int, length: int, iv_lo, iv_hi) -> bool:
    for k in range(off, off + length):
        if iv_lo[k] <= code <= iv_hi[k]:
            return True
    return False


def _compose(left: list, right: list, n: int) -> list:
    """Relational composition of two span-row tables."""
    out = [0] * (n + 1)
    for i in range(n + 1):
        mask = left[i]
        acc = 0
        while mask:
            low = mask & -mask
            acc |= right[low.bit_length() - 1]
            mask ^= low
        out[i] = acc
    return out


def match_program(
    kind,
    a1,
    a2,
    a3,
    iv_off,
    iv_len,
    iv_lo,
    iv_hi,
    nullable,
    root: int,
    text_codes,
) -> bool:
    """Anchored full-string match of a flat program against ``text_codes``."""
    n = len(text_codes)
    n_nodes = len(kind)
    rows: list = [None] * n_nodes
    identity = [1 << i for i in range(n + 1)]
    for node in range(n_nodes):
        k = kind[node]
        if k == KIND_CHARSET:
            row = [0] * (n + 1)
            off = iv_off[node]
            length = iv_len[node]
            for i in range(n):
                if _char_in_set(text_codes[i], off, length, iv_lo, iv_hi):
                    row[i] = 1 << (i + 1)
            rows[node] = row
        elif k == KIND_CONCAT:
            rows[node] = _compose(rows[a1[node]], rows[a2[node]], n)
        elif k == KIND_ALTER:
            left = rows[a1[node]]
            right = rows[a2[node]]
            rows[node] = [left[i] | right[i] for i in range(n + 1)]
        elif k == KIND_QUANT:
            child = rows[a1[node]]
            lo = a2[node]
            hi = a3[node]
            if hi != -1 and lo > hi:
                rows[node] = [0] * (n + 1)
                continue
            cur = identity
            for _ in range(lo):
                cur = _compose(cur, child, n)
            acc = list(cur)
            if hi == -1:
                while True:
                    cur = _compose(cur, child, n)
                    changed = False
                    for i in range(n + 1):
                        new = acc[i] | cur[i]
                        if new != acc[i]:
                            acc[i] = new
                            changed = True
                    if not changed:
                        break
            else:
                for _ in range(lo, hi):
                    cur = _compose(cur, child, n)
                    changed = False
                    for i in range(n + 1):
                        new = acc[i] | cur[i]
                        if new != acc[i]:
                            acc[i] = new
                            changed = True
                    if not changed or not any(cur):
                        break
            rows[node] = acc
        else:  # pragma: no cover - compile never emits other kinds
            raise ValueError(f"unknown node kind {k}")
    return bool((rows[root][0] >> n) & 1)
