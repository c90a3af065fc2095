"""Search kernels with a numba backend and a pure-numpy fallback.

The numba backend is used when numba imports and ``FREECIRCLE_DISABLE_NUMBA``
is unset (or ``0``).  Both backends expose the same functions:

``plumbing_shell(total, alpha_bound, euler_bound, a1_lo, a1_hi, out) -> int``
``cp2_scan(alpha_bound, euler_bound, lam_lo, lam_hi, out) -> int``
``plumbing_classes(params) -> (n, 4) array`` of ``(i, j, k, det)``
``cp2_classes(params) -> (n, 4) array``
"""

from __future__ import annotations

import os

import numpy as np

from . import _numpy_impl

try:
    from . import _numba_impl
    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    _numba_impl = None
    NUMBA_AVAILABLE = False

_DISABLED = os.environ.get("FREECIRCLE_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

BACKENDS = {"numpy": _numpy_impl}
if NUMBA_AVAILABLE:
    BACKENDS["numba"] = _numba_impl

DEFAULT_BACKEND = "numba" if NUMBA_AVAILABLE and not _DISABLED else "numpy"

INT64_LIMIT = 2 ** 62


def get_backend(name: str | None = None):
    name = name or DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}") from None


def collect(kernel, *args, capacity: int = 4096) -> np.ndarray:
    """Run a buffer-filling kernel, growing the buffer until every row fits."""
    width = 5 if kernel.__name__ == "plumbing_shell" else 3
    while True:
        out = np.empty((capacity, width), dtype=np.int64)
        n = kernel(*args, out)
        if n <= capacity:
            return out[:n]
        capacity = n


def plumbing_fits(alpha_bound: int, euler_bound: int) -> bool:
    """Whether every plumbing kernel intermediate stays inside int64."""
    a, e = alpha_bound, euler_bound
    return 64 * e ** 3 * a < INT64_LIMIT and 64 * (a * a * e) ** 2 < INT64_LIMIT


def cp2_fits(alpha_bound: int, euler_bound: int) -> bool:
    return 64 * euler_bound ** 3 < INT64_LIMIT and 64 * alpha_bound < INT64_LIMIT
