"""Kernel backend selection.

The series/recurrence kernels exist twice: a Cython extension compiled at
install time and a pure-Python twin with the same call surface.  The
extension is preferred when it imported cleanly; everything above this module
goes through `get_backend()` so the choice is a single indirection.
"""

from __future__ import annotations

from . import _kernels_py

try:
    from . import _kernels_cy  # type: ignore[attr-defined]

    _DEFAULT = _kernels_cy
except ImportError:  # pragma: no cover - depends on build environment
    _kernels_cy = None
    _DEFAULT = _kernels_py

_active = _DEFAULT


def get_backend():
    """The currently active kernel module."""
    return _active


def backend_name():
    return "cython" if _active is _kernels_cy and _kernels_cy is not None else "python"


def set_backend(name):
    """Force 'python' or 'cython' kernels (tests compare the twins)."""
    global _active
    if name == "python":
        _active = _kernels_py
    elif name == "cython":
        if _kernels_cy is None:
            raise RuntimeError("compiled kernels are not available")
        _active = _kernels_cy
    else:
        raise ValueError(f"unknown backend {name!r}")
    return _active
