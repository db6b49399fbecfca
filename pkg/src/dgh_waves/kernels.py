"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` fallback is used. Set ``DGH_WAVES_PURE_PYTHON=1``
to force the fallback.
"""
import os

from . import _pykernels

if os.environ.get("DGH_WAVES_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

cubic_roots = _impl.cubic_roots
solve_cubic_batch = _impl.solve_cubic_batch
classify_roles = _impl.classify_roles
classify_coeffs = _impl.classify_coeffs
classify_roles_batch = _impl.classify_roles_batch
classify_batch = _impl.classify_batch
fd_first_derivative = _impl.fd_first_derivative

__all__ = [
    "BACKEND",
    "cubic_roots",
    "solve_cubic_batch",
    "classify_roles",
    "classify_coeffs",
    "classify_roles_batch",
    "classify_batch",
    "fd_first_derivative",
]
