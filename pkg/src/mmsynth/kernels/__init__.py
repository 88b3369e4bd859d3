"""Kernel backend selection.

Prefers the compiled extension (``_speedups``) when it was built; otherwise
falls back to the pure-Python kernels.  Both expose the same two functions:

* ``levenshtein(a, b)``            -- edit distance between two strings.
* ``match_program(... , text)``    -- anchored match of a flat regex program.

The compiled span matcher packs rows into 64-bit masks and therefore only
handles texts up to 63 characters; longer texts transparently use the
Python fallback regardless of backend.
"""

from __future__ import annotations

from . import _pykernels

try:  # pragma: no cover - exercised only when the extension is built
    from . import _speedups  # type: ignore[attr-defined]

    BACKEND = "cython"
    _MAX_FAST_LEN = _speedups.MAX_TEXT_LEN
except ImportError:  # pragma: no cover
    _speedups = None
    BACKEND = "python"
    _MAX_FAST_LEN = -1

__all__ = ["BACKEND", "levenshtein", "match_program"]


if _speedups is not None:
    levenshtein = _speedups.levenshtein

    def match_program(kind, a1, a2, a3, iv_off, iv_len, iv_lo, iv_hi, nullable, root, text_codes):
        if len(text_codes) <= _MAX_FAST_LEN:
            return _speedups.match_program(
                kind, a1, a2, a3, iv_off, iv_len, iv_lo, iv_hi, nullable, root, text_codes
            )
        return _pykernels.match_program(
            kind, a1, a2, a3, iv_off, iv_len, iv_lo, iv_hi, nullable, root, text_codes
        )

else:
    levenshtein = _pykernels.levenshtein
    match_program = _pykernels.match_program
