"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise the pure-Python
twin is loaded.  Setting ``GUARDLAB_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("GUARDLAB_PURE_PYTHON"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
        BACKEND = "python"

COMPLETE = _kernels_py.COMPLETE
LIMIT_REACHED = _kernels_py.LIMIT_REACHED
BUDGET_EXCEEDED = _kernels_py.BUDGET_EXCEEDED

compose = _impl.compose
search = _impl.search
