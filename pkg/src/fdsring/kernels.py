"""Kernel selection: the compiled extension when built, else pure Python.

Set ``FDSRING_PURE=1`` to force the pure-Python kernels.
"""

from __future__ import annotations

import os

from . import _purekernels

BACKEND = "python"
classify = _purekernels.classify
product_succ = _purekernels.product_succ
height_and_preds = _purekernels.height_and_preds

if os.environ.get("FDSRING_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        classify = _kernels.classify
        product_succ = _kernels.product_succ
        height_and_preds = _kernels.height_and_preds

__all__ = ["BACKEND", "classify", "product_succ", "height_and_preds"]
