"""Kernel selection.

The compiled extension is used when importable; ``TRISEP_PURE_PYTHON=1``
forces the pure-Python kernels.
"""

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("TRISEP_PURE_PYTHON", "") not in ("", "0"):
    jacobi_eigh = _pykernels.jacobi_eigh
    pivot_rank = _pykernels.pivot_rank
else:
    try:
        from ._kernels import jacobi_eigh, pivot_rank

        BACKEND = "cython"
    except ImportError:
        jacobi_eigh = _pykernels.jacobi_eigh
        pivot_rank = _pykernels.pivot_rank

__all__ = ["BACKEND", "jacobi_eigh", "pivot_rank"]
