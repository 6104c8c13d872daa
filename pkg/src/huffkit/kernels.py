"""Backend selection for the packing hot loops.

The compiled extension is preferred when it imported cleanly; setting
HUFFKIT_PURE=1 in the environment forces the pure-Python fallback.  Both
backends expose pack_uniform / unpack_uniform / pack_table / unpack_table
with identical behavior; the compiled one caps codeword lengths at
_kernels.MAX_CODE_LEN and huffkit.codec falls back past the cap.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py

PURE_ENV = "HUFFKIT_PURE"

_compiled: ModuleType | None
try:
    from . import _kernels as _compiled_mod
except ImportError:
    _compiled = None
else:
    _compiled = _compiled_mod

if _compiled is not None and not os.environ.get(PURE_ENV):
    active: ModuleType = _compiled
else:
    active = _kernels_py

BACKEND: str = active.BACKEND


def available_backends() -> dict[str, ModuleType]:
    """All importable backends by name; 'python' is always present."""
    out = {"python": _kernels_py}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


pack_uniform = active.pack_uniform
unpack_uniform = active.unpack_uniform
pack_table = active.pack_table
unpack_table = active.unpack_table
