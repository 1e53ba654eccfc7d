"""Kernel backend selection: the compiled extension when available, numpy otherwise.

Set CYCLIC_HIGGS_PURE_PYTHON=1 to force the numpy kernels.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels


def _load_compiled() -> ModuleType | None:
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = None if os.environ.get("CYCLIC_HIGGS_PURE_PYTHON") == "1" else _load_compiled()
impl: ModuleType = _compiled or _pykernels
BACKEND = "cython" if _compiled is not None else "python"


def get_backend(name: str) -> ModuleType:
    """'cython' or 'python'; raises if the compiled kernels are not built."""
    if name == "python":
        return _pykernels
    if name == "cython":
        mod = _load_compiled()
        if mod is None:
            raise ImportError("compiled kernels are not built")
        return mod
    raise ValueError(f"unknown backend {name!r}")


def compiled_available() -> bool:
    return _load_compiled() is not None
