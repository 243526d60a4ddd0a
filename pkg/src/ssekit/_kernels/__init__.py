"""Kernel dispatch: compiled fast paths with pure-Python fallbacks.

The compiled extension ``ssekit._kernels._core`` is optional.  When it is
missing, or when an intermediate value might not fit in a signed 64-bit
word, the pure implementations take over, so every operation stays exact at
any magnitude.  Both backends produce identical results on inputs they both
accept.  Set ``SSEKIT_PURE=1`` to force the pure path.
"""

import os

from ssekit._kernels import pure

if os.environ.get("SSEKIT_PURE"):
    _core = None
else:
    try:
        from ssekit._kernels import _core  # type: ignore[attr-defined]
    except ImportError:
        _core = None

HAVE_COMPILED = _core is not None

_I64_MAX = 2**63 - 1


def backend_name() -> str:
    return "compiled" if HAVE_COMPILED else "pure"


def _fits_matmul(a, k, b) -> bool:
    amax = max(map(abs, a), default=0)
    bmax = max(map(abs, b), default=0)
    # |sum of k products| <= k * amax * bmax, checked in exact arithmetic
    return k * amax * bmax <= _I64_MAX


def matmul(a, n, k, b, m):
    if _core is not None and _fits_matmul(a, k, b):
        return _core.matmul_i64(a, n, k, b, m)
    return pure.matmul(a, n, k, b, m)


def _fits_search(a, m, max_entry, limit) -> bool:
    if m > 60 or max_entry > 2**20:
        return False
    # partial column sums are bounded by m * max_entry**2
    if m * max_entry * max_entry > _I64_MAX:
        return False
    if max(a, default=0) > _I64_MAX or min(a, default=0) < -_I64_MAX:
        return False
    if limit is not None and limit > 2**62:
        return False
    return True


def factor_search(a, n, m, max_entry, limit=None):
    if _core is not None and _fits_search(a, m, max_entry, limit):
        return _core.factor_search_i64(a, n, m, max_entry, limit)
    return pure.factor_search(a, n, m, max_entry, limit)
