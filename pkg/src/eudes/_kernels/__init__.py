"""Kernel dispatch: the Cython build when available, numpy/Python otherwise.

Set ``EUDES_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("EUDES_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

# the compiled scan works in 64-bit integers; both cubics stay below 2**62 up to here
SCAN_GUARD = 1_300_000


def count_triples(labels, nrel: int):
    return _impl.count_triples(labels, nrel)


def square_scan(kind: str, lo: int, hi: int) -> list[int]:
    if _impl is _pykernels or hi > SCAN_GUARD:
        return _pykernels.square_scan(kind, lo, hi)
    return _impl.square_scan(kind, lo, hi)


__all__ = ["BACKEND", "count_triples", "square_scan", "python_impl"]

python_impl = _pykernels
