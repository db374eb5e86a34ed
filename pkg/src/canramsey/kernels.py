"""Kernel backend selection.

The compiled extension is used when it imports; setting
``CANRAMSEY_PURE_PYTHON=1`` forces the reference implementation.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("CANRAMSEY_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

BACKEND: str = _impl.BACKEND
path_pair_counts = _impl.path_pair_counts
rainbow_pairs = _impl.rainbow_pairs
cycle_census = _impl.cycle_census
cycle_pattern_search = _impl.cycle_pattern_search
find_cycle = _impl.find_cycle
orientation_count = _impl.orientation_count


def backends() -> dict[str, object]:
    """All importable backends by name (for equivalence tests and benchmarks)."""
    out: dict[str, object] = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
