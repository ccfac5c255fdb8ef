"""Kernel backend selection.

The compiled extension is used when it was built and imports cleanly;
otherwise the numpy fallback is used. Setting ``MAXALG_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _pykernels

_ckernels = None
if os.environ.get("MAXALG_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        _ckernels = None

_impl = _ckernels if _ckernels is not None else _pykernels
BACKEND = "cython" if _ckernels is not None else "python"

maxplus_matmul = _impl.maxplus_matmul
karp_log_mean = _impl.karp_log_mean
elementary_circuits = _impl.elementary_circuits


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out
