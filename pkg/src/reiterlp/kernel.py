"""Search kernel selection: the compiled extension if it imports, else pure Python.

Set ``REITERLP_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernel

if os.environ.get("REITERLP_PURE_PYTHON"):
    _impl = _pykernel
else:
    try:
        from . import _ckernel as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = _pykernel

IMPLEMENTATION: str = _impl.IMPLEMENTATION
search = _impl.search
solve = _impl.solve
root_free = _impl.root_free


def available() -> dict[str, object]:
    """Every importable kernel, by name."""
    impls: dict[str, object] = {"python": _pykernel}
    try:
        from . import _ckernel
    except ImportError:
        pass
    else:
        impls["cython"] = _ckernel
    return impls
