"""Backend selection for the elimination kernel.

The compiled extension is preferred when present; setting the environment
variable ``STRATHODGE_PURE=1`` forces the pure Python implementation (used
by the benchmark and as an escape hatch on exotic platforms).
"""

import os

if os.environ.get("STRATHODGE_PURE"):
    from . import ratref_py as _impl
else:
    try:
        from . import _ratref as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import ratref_py as _impl

BACKEND = _impl.BACKEND
echelon = _impl.echelon
back_substitute = _impl.back_substitute
reduce_row = _impl.reduce_row
row_combine = _impl.row_combine

__all__ = ["BACKEND", "echelon", "back_substitute", "reduce_row", "row_combine"]
