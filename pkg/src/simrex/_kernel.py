"""Fixpoint kernel selection.

The compiled extension is used when importable; otherwise the pure-Python
twin takes over. Set SIMREX_PURE=1 to force the fallback (used by the
benchmark and the backend-agreement tests).
"""

import os

if os.environ.get("SIMREX_PURE"):
    from . import _simcore_py as _backend
else:
    try:
        from . import _simcore as _backend  # type: ignore[no-redef]
    except ImportError:
        from . import _simcore_py as _backend

IMPLEMENTATION: str = _backend.IMPLEMENTATION
simulation_fixpoint = _backend.simulation_fixpoint
