"""Kernel backend selection.

The compiled module is used when it imports cleanly; setting
``PARENDIST_PURE=1`` forces the pure-Python fallback.
"""

import os

from . import _pykernels as pure

compiled = None
if not os.environ.get("PARENDIST_PURE"):
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

active = compiled if compiled is not None else pure
BACKEND = active.BACKEND


def backends():
    """All importable kernel modules, compiled first."""
    return [m for m in (compiled, pure) if m is not None]
