"""Backend selection for the integer kernels.

The compiled extension is used when it imports; ``BLOCK_ATLAS_PURE=1``
forces the pure-Python fallback.  Inputs whose coordinates could overflow
64-bit arithmetic are always routed to the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

_LIMIT = 1 << 40

if os.environ.get("BLOCK_ATLAS_PURE") == "1":
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def _small(mu) -> bool:
    return all(-_LIMIT < x < _LIMIT for x in mu)


def rho_dominant(v, cartan, backend=None):
    impl = _pick(backend)
    if impl is not _kernels_py and not _small(v):
        impl = _kernels_py
    return impl.rho_dominant(v, cartan)


def adjoint_decomposition(mu, weights, mults, cartan, backend=None):
    impl = _pick(backend)
    if impl is not _kernels_py and not _small(mu):
        impl = _kernels_py
    return impl.adjoint_decomposition(mu, weights, mults, cartan)


def _pick(backend):
    if backend is None:
        return _compiled or _kernels_py
    if backend == "python":
        return _kernels_py
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {backend!r}")
