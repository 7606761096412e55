"""Kernel backend selection.

The compiled extension is used when it imports; ``SYMMJOIN_PURE=1`` forces
the pure-Python fallback.  Both expose the same four functions.
"""

import os

from . import _pykernels as pure

compiled = None
if os.environ.get("SYMMJOIN_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None

active = compiled if compiled is not None else pure
BACKEND = "cython" if compiled is not None else "python"

enumerate_cells = active.enumerate_cells
build_matching = active.build_matching
find_cycle = active.find_cycle
bruteforce_witness = active.bruteforce_witness
