"""Select the elimination kernel: compiled extension if built, else pure Python.

Set ``QUIVERGRAD_PURE=1`` to force the pure-Python kernel.
"""
import os

from . import _kernel_py

BACKEND = "python"
rref_int = _kernel_py.rref_int

if not os.environ.get("QUIVERGRAD_PURE"):
    try:
        from . import _kernel
    except ImportError:
        pass
    else:
        rref_int = _kernel.rref_int
        BACKEND = "compiled"
