"""Import-time selection between the compiled and pure-Python eigen kernels.

Set ``VCLAB_PURE_PYTHON=1`` to force the fallback even when the extension
is built.
"""

import os

from . import _eigen_py

python_eigh = _eigen_py.eigh

try:
    if os.environ.get("VCLAB_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernel requested")
    from . import _eigen as _compiled

    compiled_eigh = _compiled.eigh
    eigh = compiled_eigh
    BACKEND = "compiled"
except ImportError:
    compiled_eigh = None
    eigh = python_eigh
    BACKEND = "python"

__all__ = ["eigh", "python_eigh", "compiled_eigh", "BACKEND"]
