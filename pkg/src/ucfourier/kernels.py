"""Backend selection for the hot loops.

The compiled extension ``_kernels`` is used when it imports; otherwise the
numpy implementation in ``_kernels_py`` is.  Setting the environment
variable ``UCFOURIER_BACKEND=python`` forces the fallback.
"""

from __future__ import annotations

import importlib
import os
from functools import lru_cache

import numpy as np

from . import _kernels_py

MAX_DEPTH = 50
MAX_INTERVALS = 1 << 20


def _load(name: str):
    if name == "python":
        return _kernels_py
    if name == "cython":
        return importlib.import_module("ucfourier._kernels")
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> list[str]:
    names = ["python"]
    try:
        _load("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


def _select():
    wanted = os.environ.get("UCFOURIER_BACKEND", "").strip().lower()
    if wanted == "python":
        return "python", _kernels_py
    try:
        return "cython", _load("cython")
    except ImportError:
        if wanted == "cython":
            raise
        return "python", _kernels_py


BACKEND, _impl = _select()


@lru_cache(maxsize=32)
def unit_roots(M: int) -> np.ndarray:
    """Read-only table ``exp(2*pi*i*j/M)``."""
    E = np.exp(2j * np.pi * np.arange(M) / M)
    E.setflags(write=False)
    return E


def _c(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.complex128)


def scan_partial_sums(coeffs, M: int, backend=None) -> np.ndarray:
    impl = _impl if backend is None else _load(backend)
    return impl.scan_partial_sums(_c(coeffs), unit_roots(M))


def scan_asym(coeffs, M: int, nneg: int, npos: int, backend=None) -> np.ndarray:
    impl = _impl if backend is None else _load(backend)
    return impl.scan_asym(_c(coeffs), unit_roots(M), int(nneg), int(npos))


def scan_commutator(mgrid, cf, cmf, nmax: int, backend=None) -> np.ndarray:
    impl = _impl if backend is None else _load(backend)
    mgrid = _c(mgrid)
    return impl.scan_commutator(mgrid, _c(cf), _c(cmf), unit_roots(mgrid.size), int(nmax))


def shift_sup(samples, smax: int, backend=None) -> np.ndarray:
    impl = _impl if backend is None else _load(backend)
    return impl.shift_sup(_c(samples), int(smax))


def horner(coeffs, theta, backend=None) -> np.ndarray:
    impl = _impl if backend is None else _load(backend)
    return impl.horner(_c(coeffs), np.asarray(theta, dtype=np.float64))


def dini_panels(coeffs, ts, edges, offsets, tol: float, backend=None) -> np.ndarray:
    impl = _impl if backend is None else _load(backend)
    return impl.dini_panels(_c(coeffs), np.ascontiguousarray(ts, dtype=np.float64),
                            np.ascontiguousarray(edges, dtype=np.float64),
                            np.ascontiguousarray(offsets, dtype=np.int64),
                            float(tol), MAX_DEPTH, MAX_INTERVALS)
