"""Backend selection for the elimination kernels.

The compiled extension is preferred when importable; setting the
environment variable ``FATPOINTS_PURE`` (to anything non-empty) forces the
pure-Python twin, which is what the benchmark uses to compare the two.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("FATPOINTS_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
rank_mod_p = _impl.rank_mod_p
rref_mod_p = _impl.rref_mod_p
bareiss_echelon = _impl.bareiss_echelon
rank_int = _impl.rank_int
