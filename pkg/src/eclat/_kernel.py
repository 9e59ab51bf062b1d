"""Kernel selection: compiled extension when available, pure Python else.

Set ECLAT_PURE=1 to force the fallback (used by the benchmark and by CI
to exercise both paths).
"""

from __future__ import annotations

import os

from . import _kernel_py

try:
    from . import _speedups
except ImportError:  # pragma: no cover - depends on the build environment
    _speedups = None

HAVE_SPEEDUPS = _speedups is not None


def get_kernel(pure: bool | None = None):
    """The kernel module to use; pure=None follows env + availability."""
    if pure is None:
        pure = os.environ.get("ECLAT_PURE", "") not in ("", "0")
    if pure:
        return _kernel_py
    if _speedups is None:
        return _kernel_py
    return _speedups


kernel = get_kernel()
