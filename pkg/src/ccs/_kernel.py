"""Select the partition-refinement kernel at import time.

The compiled ``_refine`` extension is preferred; set ``CCS_PURE_PYTHON=1``
to force the pure-Python implementation.
"""

import os

from . import _refine_py

refine_py = _refine_py.refine

try:
    if os.environ.get("CCS_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python kernel requested")
    from ._refine import refine as refine_ext
except ImportError:
    refine_ext = None

refine = refine_ext if refine_ext is not None else refine_py
BACKEND = "cython" if refine_ext is not None else "python"
