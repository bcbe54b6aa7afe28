"""Hot loops, with a compiled backend chosen at import.

The Cython extension ``lfhh._scan`` is used when it was built; otherwise the
numpy implementation below runs.  Set ``LFHH_PURE_PYTHON=1`` to force the
fallback.
"""

from __future__ import annotations

import os

import numpy as np


def scan_convexity_py(values, wl, wr, n: int, tol: float) -> tuple[int, float]:
    values = np.asarray(values, dtype=float)
    i = np.arange(n)[:, None, None]
    j = np.arange(n)[None, :, None]
    m = np.arange(1, n)[None, None, :]
    lhs = values[m * i + (n - m) * j]
    rhs = np.asarray(wl)[None, None, :] * values[i * n] + np.asarray(wr)[None, None, :] * values[j * n]
    excess = lhs - rhs
    viol = (excess > tol).ravel()
    first = int(np.argmax(viol)) if viol.any() else -1
    return first, float(excess.max())


scan_convexity_c = None
if not os.environ.get("LFHH_PURE_PYTHON"):
    try:
        from ._scan import scan_convexity as scan_convexity_c
    except ImportError:  # extension not built
        scan_convexity_c = None

BACKEND = "cython" if scan_convexity_c is not None else "python"


def scan_convexity(values, wl, wr, n: int, tol: float, backend: str | None = None) -> tuple[int, float]:
    backend = backend or BACKEND
    if backend == "cython":
        if scan_convexity_c is None:
            raise RuntimeError("compiled backend not available")
        return scan_convexity_c(
            np.ascontiguousarray(values, dtype=float),
            np.ascontiguousarray(wl, dtype=float),
            np.ascontiguousarray(wr, dtype=float),
            n,
            tol,
        )
    return scan_convexity_py(values, wl, wr, n, tol)
