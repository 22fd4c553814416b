"""Kernel backend selection.

The compiled ``_speedups`` extension is used when it was built; otherwise
the pure-Python ``_pykernels`` module is used. Setting
``SQUATSCOPE_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from squatscope import _pykernels

pure = _pykernels

if os.environ.get("SQUATSCOPE_PURE_PYTHON", "") not in ("", "0"):
    compiled = None
else:
    try:
        from squatscope import _speedups as compiled
    except ImportError:  # extension not built
        compiled = None

active = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "python"

is_typo = active.is_typo
ac_scan = active.ac_scan
