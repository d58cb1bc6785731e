"""Kernel selection: compiled extension if available, pure Python otherwise.

Set OMEGALAB_PURE=1 to force the pure-Python kernel (used by the benchmark
and by tests that compare the two).  The compiled kernel only accepts
program lengths <= 62 and budgets < 2**62; kernel_for() falls back to the
pure twin outside that range.
"""

from __future__ import annotations

import os

from . import _purecore

if os.environ.get("OMEGALAB_PURE"):
    _fast = None
else:
    try:
        from . import _fastcore as _fast  # type: ignore[attr-defined]
    except ImportError:
        _fast = None

kernel = _fast if _fast is not None else _purecore

FAST_MAX_LENGTH = 62
FAST_MAX_BUDGET = (1 << 62) - 1


def kernel_for(length: int, budget: int):
    if _fast is not None and length <= FAST_MAX_LENGTH and budget <= FAST_MAX_BUDGET:
        return _fast
    return _purecore


def kernel_name() -> str:
    return kernel.IMPLEMENTATION
