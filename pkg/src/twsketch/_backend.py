"""Kernel backend selection.

The compiled extension is used when importable; otherwise the numpy fallback
takes over. Set TWSKETCH_PURE_PYTHON=1 to force the fallback (used by the
backend-comparison benchmark and tests).
"""

import os

if os.environ.get("TWSKETCH_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]

BACKEND = kernels.BACKEND_NAME
