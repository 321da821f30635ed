"""Hot-loop kernels: compiled extension when available, pure Python otherwise.

Set ``RLSHEAF_PURE=1`` to force the Python implementation.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("RLSHEAF_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

first_assoc_violation = _impl.first_assoc_violation
first_adjunction_violation = _impl.first_adjunction_violation
derive_residuum = _impl.derive_residuum
search_tensors = _impl.search_tensors
enumerate_sections = _impl.enumerate_sections

__all__ = [
    "BACKEND",
    "first_assoc_violation",
    "first_adjunction_violation",
    "derive_residuum",
    "search_tensors",
    "enumerate_sections",
]
