"""Select the compiled kernels when available, else the numpy fallback.

Set ``FARHI_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("FARHI_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
    COMPILED = False
else:
    try:
        from . import _kernels as kernels
        COMPILED = True
    except ImportError:
        kernels = _kernels_py
        COMPILED = False

BACKEND = "cython" if COMPILED else "python"

__all__ = ["kernels", "COMPILED", "BACKEND"]
