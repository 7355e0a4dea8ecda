"""Backend selection for the exact elimination kernels.

The compiled ``_ckernels`` extension is preferred; the pure-Python
``_pykernels`` module is used when the extension is not built or when the
environment variable ``DUALCANON_PURE_PYTHON`` is set to a truthy value.
"""
import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("DUALCANON_PURE_PYTHON", "").lower() not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

det = _impl.det
rref = _impl.rref
matmul = _impl.matmul


def available_backends():
    """Return ``{name: module}`` for every kernel backend importable here."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
