"""Hot-loop kernels with a compiled core and a numpy fallback.

The Cython extension accelerates Monte Carlo containment counting and the
printability ray casts.  Selection happens once at import: the extension if it
built, else numpy.  Set ARCHIMEDES_PURE_PYTHON=1 to force the fallback.
"""

import os

from . import _codes as codes
from . import _pykernels

if os.environ.get("ARCHIMEDES_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
contains_count = _impl.contains_count
ray_nearest_hits = _impl.ray_nearest_hits

__all__ = ["BACKEND", "codes", "contains_count", "ray_nearest_hits"]
