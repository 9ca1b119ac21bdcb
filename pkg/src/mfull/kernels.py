"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module.  ``MFULL_BACKEND=python`` forces the fallback.
"""

import os

from . import _pykernels

if os.environ.get("MFULL_BACKEND", "").lower() == "python":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
Reducer = _impl.Reducer
rref_mod_p = _impl.rref_mod_p
rank_mod_p = _impl.rank_mod_p
mul_terms = _impl.mul_terms


def backends():
    """Available kernel modules keyed by name."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
