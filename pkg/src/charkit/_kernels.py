"""Kernel backend selection.

Prefers the compiled extension (charkit._speedups) and falls back to the
pure-Python implementation. Set CHARKIT_PURE=1 to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("CHARKIT_PURE"):
    from . import _pure as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _impl

BACKEND: str = _impl.BACKEND
closure = _impl.closure
conjugacy_partition = _impl.conjugacy_partition
