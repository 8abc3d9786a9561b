"""Kernel dispatch: the compiled extension when available, else the Python twin.

Set SYMPGRAPH_PURE=1 to force the Python implementations.
"""
import os

from . import _kernels_py

if os.environ.get("SYMPGRAPH_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND
refine = _impl.refine
is_automorphism = _impl.is_automorphism
max_independent_set = _impl.max_independent_set

__all__ = ["BACKEND", "refine", "is_automorphism", "max_independent_set"]
