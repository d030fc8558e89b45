"""Select the window scanning kernels at import time.

The compiled core is used when it has been built; set
``REGSEQ_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

from . import _kernels_py

if os.environ.get("REGSEQ_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

first_occurrences = _impl.first_occurrences
unbordered_positions = _impl.unbordered_positions
IMPLEMENTATION = _impl.IMPLEMENTATION

__all__ = ["first_occurrences", "unbordered_positions", "IMPLEMENTATION"]
