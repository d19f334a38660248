"""Search kernels, compiled when available.

The Cython module ``_ckernels`` is used if it imports; otherwise, or when the
environment variable ``PRISMTAB_PURE_PYTHON`` is set to a non-empty value, the
pure-Python twins in ``_pykernels`` are used.  Both expose the same functions.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("PRISMTAB_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykernels

BACKEND: str = _impl.BACKEND
overlay_search = _impl.overlay_search
minimal_hitting_sets = _impl.minimal_hitting_sets
interior_search = _impl.interior_search
demazure_product = _impl.demazure_product

__all__ = [
    "BACKEND",
    "overlay_search",
    "minimal_hitting_sets",
    "interior_search",
    "demazure_product",
]
