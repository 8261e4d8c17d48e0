"""Kernel backend selection.

Prefers the compiled extension qmatroid._core; falls back to the pure-Python
twin.  Set QMATROID_PURE_PYTHON=1 to force the fallback (the benchmark and the
backend-equivalence tests import both modules directly).
"""

from __future__ import annotations

import os

if os.environ.get("QMATROID_PURE_PYTHON") == "1":
    from . import _core_py as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _core_py as _impl

BACKEND: str = _impl.BACKEND
Automaton = _impl.Automaton
sort_key = _impl.sort_key
compare_words = _impl.compare_words
reduce_terms = _impl.reduce_terms
overlap_obstructions = _impl.overlap_obstructions
