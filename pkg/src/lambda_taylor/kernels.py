"""Backend selection for the permutation kernels.

The compiled module is used when it was built; setting LAMBDA_TAYLOR_PURE=1
forces the pure-Python implementation.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels
if os.environ.get("LAMBDA_TAYLOR_PURE", "") in ("", "0"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

compose = _impl.compose
inverse = _impl.inverse
tensor = _impl.tensor
multiplex = _impl.multiplex
gamma = _impl.gamma
decompose = _impl.decompose
stabilizer = _impl.stabilizer
orbit_stabilizer = _impl.orbit_stabilizer
permanent = _impl.permanent

BACKENDS = {"python": _pykernels}
try:
    from . import _ckernels

    BACKENDS["cython"] = _ckernels
except ImportError:
    pass
