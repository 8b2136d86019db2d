"""Backend selection for the hot kernels.

The compiled extension is used when it imported cleanly; otherwise the
numpy fallback.  :func:`use_backend` switches explicitly (tests and the
benchmark use it to run both).
"""

from __future__ import annotations

import contextlib
import logging

from . import _pykernels

log = logging.getLogger(__name__)

try:
    from . import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None
    log.debug("compiled kernels unavailable, using numpy fallback")

WALK = _pykernels.WALK
PRODUCT = _pykernels.PRODUCT
ROW_EIGEN = _pykernels.ROW_EIGEN
COLUMN_EIGEN = _pykernels.COLUMN_EIGEN

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

_active = _BACKENDS.get("compiled", _pykernels)


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def backend_name() -> str:
    return "compiled" if _active is _ckernels and _ckernels is not None else "python"


def set_backend(name: str) -> None:
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available (have {available_backends()})") from None


@contextlib.contextmanager
def use_backend(name: str):
    prev = backend_name()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def aberth_batch(coeffs, maxiter: int = 200):
    return _active.aberth_batch(coeffs, maxiter)


def cocycle_walk(z, coef, vec, mode: int):
    return _active.cocycle_walk(z, coef, vec, mode)
