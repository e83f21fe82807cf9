"""Select the compiled kernels when available, else the pure-Python fallback.

Set ``PSLDPC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _fallback

if os.environ.get("PSLDPC_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _fallback

BACKEND = "compiled" if _impl is not _fallback else "python"

bfs_girth = _impl.bfs_girth
spa_flood = _impl.spa_flood
