"""Kernel backend selection.

The compiled extension is preferred.  Setting ``FINALBONUS_PURE_PYTHON=1``
forces the numpy kernels, as does a missing or broken build.
"""

import os

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if not os.environ.get("FINALBONUS_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        kernels = _ckernels
        BACKEND = "cython"


def get_kernels(name=None):
    """Return the kernel module for ``name`` ("cython" or "python"), default active."""
    if name is None:
        return kernels
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
