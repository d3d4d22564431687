"""Pick the exact-search backend at import time.

Set ``CFCOLOR_PURE_PYTHON=1`` to force the fallback even when the compiled
extension is importable.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("CFCOLOR_PURE_PYTHON", "") not in ("", "0"):
    search = _kernels_py.search
    BACKEND = "python"
else:
    try:
        from ._kernels import search  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        search = _kernels_py.search
        BACKEND = "python"

python_search = _kernels_py.search
