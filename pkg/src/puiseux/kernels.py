"""Backend selection for the enumeration kernels.

Prefers the compiled extension, falls back to pure Python when it is not
built.  Setting PUISEUX_PURE=1 before import forces the fallback; BACKEND
reports the choice ("compiled" or "pure").
"""

from __future__ import annotations

import os

if os.environ.get("PUISEUX_PURE") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND
factorizations_kernel = _impl.factorizations_kernel
oracle_grid = _impl.oracle_grid
member_table = _impl.member_table
